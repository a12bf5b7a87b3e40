#include <doctest.h>

#include "convkit/group.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace convkit;

namespace {

GroupSignal random_signal(const FiniteAbelianGroup& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVec v(g.size());
    for (auto& x : v) x = Cx(u(rng), u(rng));
    return GroupSignal(g, std::move(v));
}

// independent oracle: convolution as an explicit double loop over coordinate
// tuples, never touching index arithmetic from the library
GroupSignal convolve_oracle(const GroupSignal& f, const GroupSignal& h) {
    const auto& g = f.group;
    CVec out(g.size(), Cx(0.0, 0.0));
    for (std::size_t ia = 0; ia < g.size(); ++ia) {
        for (std::size_t ib = 0; ib < g.size(); ++ib) {
            const auto a = g.element_at(ia).coords;
            const auto b = g.element_at(ib).coords;
            std::vector<long> diff(a.size());
            for (std::size_t j = 0; j < a.size(); ++j) {
                diff[j] = ((a[j] - b[j]) % g.orders()[j] + g.orders()[j]) % g.orders()[j];
            }
            out[ia] += h.values[g.index_of(GroupElement{diff})] * f.values[ib];
        }
    }
    return GroupSignal(g, std::move(out));
}

const std::vector<std::vector<long>> kGroupPool{
    {5}, {8}, {2, 3}, {4, 5}, {60}, {2, 2, 3}, {3, 3}, {2, 30}};

} // namespace

TEST_CASE("add follows modular componentwise arithmetic") {
    FiniteAbelianGroup z5({5});
    CHECK(add(z5, {{3}}, {{4}}) == GroupElement{{2}});

    FiniteAbelianGroup z23({2, 3});
    CHECK(add(z23, {{1, 2}}, {{1, 2}}) == GroupElement{{0, 1}});

    std::mt19937_64 rng(3);
    for (const auto& orders : kGroupPool) {
        FiniteAbelianGroup g(orders);
        const auto a = g.element_at(rng() % g.size());
        CHECK(add(g, a, g.zero()) == a);
        CHECK(add(g, a, negate(g, a)) == g.zero());
    }

    CHECK_THROWS_AS(add(z5, {{3}}, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(add(z5, {{7}}, {{1}}), std::invalid_argument);
}

TEST_CASE("element enumeration is lexicographic and invertible") {
    FiniteAbelianGroup g({2, 3});
    CHECK(g.size() == 6);
    CHECK(g.element_at(0) == GroupElement{{0, 0}});
    CHECK(g.element_at(1) == GroupElement{{0, 1}});
    CHECK(g.element_at(3) == GroupElement{{1, 0}});
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.index_of(g.element_at(i)) == i);
}

TEST_CASE("trivial group has the single trivial character") {
    FiniteAbelianGroup g({1});
    auto chars = characters(g);
    REQUIRE(chars.size() == 1);
    CHECK(std::abs(chars[0](g.zero()) - Cx(1.0, 0.0)) == 0.0);
}

TEST_CASE("character of Z/4 at frequency 1 evaluates to i") {
    FiniteAbelianGroup g({4});
    Character chi(g, {{1}});
    const Cx v = chi({{1}});
    CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("characters of Z/2+Z/2 are a real orthogonal family") {
    FiniteAbelianGroup g({2, 2});
    auto chars = characters(g);
    REQUIRE(chars.size() == 4);
    // brute-force orthogonality over all four elements
    for (std::size_t p = 0; p < 4; ++p) {
        for (std::size_t q = 0; q < 4; ++q) {
            Cx gram = 0.0;
            for (std::size_t i = 0; i < 4; ++i) {
                const auto a = g.element_at(i);
                CHECK(std::abs(chars[p](a).imag()) <= 1e-15); // values are +-1
                gram += chars[p](a) * std::conj(chars[q](a));
            }
            CHECK(std::abs(gram - (p == q ? Cx(4.0, 0.0) : Cx(0.0, 0.0))) <= 1e-12);
        }
    }
}

TEST_CASE("character homomorphism holds exhaustively on small groups") {
    for (const auto& orders : {std::vector<long>{24}, {2, 3, 4}, {4, 6}}) {
        FiniteAbelianGroup g(orders);
        REQUIRE(g.size() <= 24);
        for (const auto& chi : characters(g)) {
            for (std::size_t ia = 0; ia < g.size(); ++ia) {
                const auto a = g.element_at(ia);
                CHECK(std::abs(std::abs(chi(a)) - 1.0) <= 1e-15);
                for (std::size_t ib = 0; ib < g.size(); ++ib) {
                    const auto b = g.element_at(ib);
                    CHECK(std::abs(chi(add(g, a, b)) - chi(a) * chi(b)) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("character family is complete and orthogonal") {
    for (const auto& orders : kGroupPool) {
        FiniteAbelianGroup g(orders);
        auto chars = characters(g);
        CHECK(chars.size() == g.size());
        if (g.size() > 24) continue; // Gram check on the small ones
        for (std::size_t p = 0; p < chars.size(); ++p) {
            for (std::size_t q = p; q < chars.size(); ++q) {
                Cx gram = 0.0;
                for (std::size_t i = 0; i < g.size(); ++i) {
                    const auto a = g.element_at(i);
                    gram += chars[p](a) * std::conj(chars[q](a));
                }
                const Cx expect = p == q ? Cx(double(g.size()), 0.0) : Cx(0.0, 0.0);
                CHECK(std::abs(gram - expect) <= 1e-9);
            }
        }
    }
}

TEST_CASE("fourier of a delta is the all-ones signal") {
    for (long n : {1L, 4L, 9L}) {
        FiniteAbelianGroup g({n});
        auto fhat = fourier(delta_signal(g, g.zero()));
        for (Cx v : fhat.values) CHECK(std::abs(v - Cx(1.0, 0.0)) <= 1e-14);
    }
    FiniteAbelianGroup g22({2, 2});
    auto fhat = fourier(delta_signal(g22, g22.zero()));
    for (Cx v : fhat.values) CHECK(std::abs(v - Cx(1.0, 0.0)) <= 1e-14);
}

TEST_CASE("fourier of the constant signal concentrates at zero frequency") {
    for (long n : {2L, 5L, 12L}) {
        FiniteAbelianGroup g({n});
        auto fhat = fourier(constant_signal(g, 1.0));
        // geometric-sum oracle: sum_k exp(-2*pi*i*k*w/n) is n at w=0, else
        // (1 - exp(-2*pi*i*w*n/n)) / (1 - exp(-2*pi*i*w/n)) = 0
        for (std::size_t w = 0; w < g.size(); ++w) {
            Cx expect = 0.0;
            if (w == 0) {
                expect = double(n);
            } else {
                const Cx ratio = std::polar(1.0, -2.0 * std::numbers::pi * double(w) / double(n));
                expect = (1.0 - std::pow(ratio, double(n))) / (1.0 - ratio);
            }
            CHECK(std::abs(fhat.values[w] - expect) <= 1e-12 * double(n));
        }
        CHECK(std::abs(fhat.values[0] - Cx(double(n), 0.0)) <= 1e-12 * double(n));
    }
}

TEST_CASE("fourier inversion round trip") {
    std::mt19937_64 rng(17);
    for (const auto& orders : kGroupPool) {
        FiniteAbelianGroup g(orders);
        auto f = random_signal(g, rng);
        auto back = inverse_fourier(fourier(f));
        CHECK(max_abs_diff(back.values, f.values) <= 1e-10);
    }
}

TEST_CASE("convolution with the delta is the identity") {
    FiniteAbelianGroup z3({3});
    GroupSignal f(z3, {1.0, 2.0, 3.0});
    auto out = convolve(f, delta_signal(z3, z3.zero()));
    CHECK(out.values[0] == Cx(1.0, 0.0));
    CHECK(out.values[1] == Cx(2.0, 0.0));
    CHECK(out.values[2] == Cx(3.0, 0.0));

    std::mt19937_64 rng(23);
    for (const auto& orders : kGroupPool) {
        FiniteAbelianGroup g(orders);
        auto s = random_signal(g, rng);
        CHECK(max_abs_diff(convolve(s, delta_signal(g, g.zero())).values, s.values) == 0.0);
    }
}

TEST_CASE("convolution on Z/4 frozen example") {
    FiniteAbelianGroup z4({4});
    GroupSignal f(z4, {1.0, 1.0, 0.0, 0.0});
    auto out = convolve(f, f);
    CHECK(out.values[0] == Cx(1.0, 0.0));
    CHECK(out.values[1] == Cx(2.0, 0.0));
    CHECK(out.values[2] == Cx(1.0, 0.0));
    CHECK(out.values[3] == Cx(0.0, 0.0));
}

TEST_CASE("convolution matches the double-loop oracle") {
    std::mt19937_64 rng(29);
    for (const auto& orders : kGroupPool) {
        FiniteAbelianGroup g(orders);
        auto f = random_signal(g, rng);
        auto h = random_signal(g, rng);
        CHECK(max_abs_diff(convolve(f, h).values, convolve_oracle(f, h).values) <= 1e-12);
    }
    FiniteAbelianGroup a({2}), b({3});
    CHECK_THROWS_AS(convolve(constant_signal(a, 1.0), constant_signal(b, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("l1 norm") {
    FiniteAbelianGroup z2({2});
    CHECK(l1_norm(constant_signal(z2, 0.0)) == 0.0);
    CHECK(l1_norm(delta_signal(z2, z2.zero())) == 1.0);
    CHECK(l1_norm(GroupSignal(z2, {3.0, -4.0})) == 7.0);
}

TEST_CASE("convolution algebra laws on random groups") {
    std::mt19937_64 rng(31);
    for (const auto& orders : kGroupPool) {
        FiniteAbelianGroup g(orders);
        REQUIRE(g.size() <= 60);
        auto f = random_signal(g, rng);
        auto h = random_signal(g, rng);
        auto k = random_signal(g, rng);

        CHECK(max_abs_diff(convolve(f, h).values, convolve(h, f).values) <= 1e-9);
        CHECK(max_abs_diff(convolve(convolve(f, h), k).values,
                           convolve(f, convolve(h, k)).values) <= 1e-9);
        CHECK(l1_norm(convolve(f, h)) <= l1_norm(f) * l1_norm(h) + 1e-9);
    }
}

TEST_CASE("convolution theorem") {
    std::mt19937_64 rng(37);
    for (const auto& orders : kGroupPool) {
        FiniteAbelianGroup g(orders);
        auto f = random_signal(g, rng);
        auto h = random_signal(g, rng);
        auto lhs = fourier(convolve(f, h));
        auto rhs = hadamard(fourier(f).values, fourier(h).values);
        CHECK(max_abs_diff(lhs.values, rhs) <= 1e-9);
    }
}

TEST_CASE("Plancherel identity with dual measure 1/|A|") {
    std::mt19937_64 rng(41);
    for (const auto& orders : kGroupPool) {
        FiniteAbelianGroup g(orders);
        auto f = random_signal(g, rng);
        auto fhat = fourier(f);
        double time_energy = 0.0, freq_energy = 0.0;
        for (Cx v : f.values) time_energy += std::norm(v);
        for (Cx v : fhat.values) freq_energy += std::norm(v);
        freq_energy /= double(g.size());
        CHECK(std::abs(time_energy - freq_energy) <= 1e-9 * std::max(1.0, time_energy));
    }
}
