#include <doctest.h>

#include "convkit/graph.hpp"
#include "convkit/group.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace convkit;

namespace {

CVec random_signal(std::size_t n, std::mt19937_64& rng, bool complex_entries = false) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVec v(n);
    for (auto& x : v) x = complex_entries ? Cx(u(rng), u(rng)) : Cx(u(rng), 0.0);
    return v;
}

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = u(rng);
    return m;
}

GraphShiftSystem random_symmetric_system(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        Matrix s(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double v = u(rng) / std::sqrt(double(n));
                s(i, j) = v;
                s(j, i) = v;
            }
        auto sys = system_from_matrix(s);
        // keep only simple spectra so the fit-based tests are well posed
        double spread = 0.0, gap = 1e300;
        const auto& lam = sys.eigenvalues();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                spread = std::max(spread, std::abs(lam[i] - lam[j]));
                gap = std::min(gap, std::abs(lam[i] - lam[j]));
            }
        if (spread > 0.0 && gap > 1e-6 * spread) return sys;
    }
}

// independent dense oracle: sum of c_k S^k by repeated multiplication
Matrix polynomial_oracle(const Matrix& s, const CVec& coeffs) {
    Matrix power = Matrix::identity(s.rows());
    Matrix acc(s.rows(), s.rows());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        acc = acc + coeffs[k] * power;
        power = power * s;
    }
    return acc;
}

} // namespace

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(Graph(2, {{0, 5, 1.0}}, true), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 1, 1.0}, {1, 0, 2.0}}, false), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 1, std::nan("")}}, false), std::invalid_argument);
    // directed graphs may carry both arcs
    Graph g(2, {{0, 1, 1.0}, {1, 0, 2.0}}, true);
    CHECK(g.adjacency()(0, 1) == Cx(1.0, 0.0));
    CHECK(g.adjacency()(1, 0) == Cx(2.0, 0.0));
}

TEST_CASE("directed cycle adjacency lands on the DFT basis") {
    for (std::size_t n : {2u, 3u, 8u}) {
        auto sys = build_shift(Graph::directed_cycle(n), ShiftKind::adjacency);
        const double tau = 2.0 * std::numbers::pi;
        const double root = 1.0 / std::sqrt(double(n));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Cx expect = std::polar(root, tau * double((j * k) % n) / double(n));
                CHECK(std::abs(sys.basis()(j, k) - expect) <= 1e-12);
            }
        for (std::size_t k = 0; k < n; ++k) {
            const Cx expect = std::polar(1.0, tau * double(k) / double(n));
            CHECK(std::abs(sys.eigenvalues()[k] - expect) <= 1e-12);
        }
    }
}

TEST_CASE("edgeless Laplacian is zero") {
    auto sys = build_shift(Graph(4, {}, false), ShiftKind::laplacian);
    CHECK(sys.shift().max_abs() == 0.0);
    for (const Cx& l : sys.eigenvalues()) CHECK(std::abs(l) == 0.0);
}

TEST_CASE("path graph Laplacian n=3 has eigenvalues 0,1,3") {
    auto sys = build_shift(Graph::path(3), ShiftKind::laplacian);
    CHECK(sys.eigenvalues()[0].real() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(sys.eigenvalues()[1].real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sys.eigenvalues()[2].real() == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("normalized Laplacian with self-loop on the 2-path") {
    auto sys = build_shift(Graph::path(2), ShiftKind::normalized_laplacian_selfloop);
    CHECK(std::abs(sys.shift()(0, 0) - Cx(0.5, 0.0)) <= 1e-15);
    CHECK(std::abs(sys.shift()(0, 1) - Cx(-0.5, 0.0)) <= 1e-15);
    CHECK(std::abs(sys.eigenvalues()[0]) <= 1e-12);
    CHECK(std::abs(sys.eigenvalues()[1] - Cx(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("build_shift error paths") {
    CHECK_THROWS_AS(build_shift(Graph::directed_cycle(3), ShiftKind::laplacian),
                    std::invalid_argument);
    // non-symmetric non-circulant without a decomposition
    Matrix bad{{0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}, {0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(build_shift(Graph(3, {}, true), ShiftKind::custom, bad),
                    std::invalid_argument);
    // decomposition failing reconstruction
    Matrix s{{1.0, 0.0}, {0.0, 2.0}};
    ShiftDecomposition wrong{Matrix{{1.0, 0.0}, {0.0, 1.0}}, CVec{5.0, 5.0}};
    CHECK_THROWS_AS(build_shift(Graph(2, {}, false), ShiftKind::custom, s, wrong),
                    std::invalid_argument);
    // decomposition with singular U
    ShiftDecomposition singular{Matrix(2, 2), CVec{0.0, 0.0}};
    CHECK_THROWS_AS(build_shift(Graph(2, {}, false), ShiftKind::custom, Matrix(2, 2), singular),
                    std::invalid_argument);
}

TEST_CASE("gft and igft definitions and round trips") {
    std::mt19937_64 rng(11);
    auto sys = build_shift(Graph::path(5), ShiftKind::laplacian);

    CVec e0(5, Cx(0.0, 0.0));
    e0[0] = 1.0;
    CHECK(max_abs_diff(gft(sys, igft(sys, e0)), e0) <= 1e-9);
    CHECK(max_abs_diff(igft(sys, e0), sys.basis().column(0)) <= 1e-15);

    CVec zero(5, Cx(0.0, 0.0));
    CHECK(max_abs(gft(sys, zero)) == 0.0);

    for (int t = 0; t < 10; ++t) {
        const CVec x = random_signal(5, rng, true);
        CHECK(max_abs_diff(igft(sys, gft(sys, x)), x) <= 1e-9);
        CHECK(max_abs_diff(gft(sys, igft(sys, x)), x) <= 1e-9);
    }
    CHECK_THROWS_AS(gft(sys, CVec(3)), std::invalid_argument);

    // on the cycle, the igft of a delta is a constant-modulus exponential
    auto cyc = build_shift(Graph::directed_cycle(6), ShiftKind::adjacency);
    CVec d(6, Cx(0.0, 0.0));
    d[2] = 1.0;
    const CVec col = igft(cyc, d);
    for (const Cx& v : col) CHECK(std::abs(std::abs(v) - 1.0 / std::sqrt(6.0)) <= 1e-12);
}

TEST_CASE("spectral convolution identity and commutativity") {
    std::mt19937_64 rng(13);
    auto sys = build_shift(Graph::path(6), ShiftKind::laplacian);
    const CVec ones(6, Cx(1.0, 0.0));
    const CVec y = igft(sys, ones); // y with all-ones spectrum
    for (int t = 0; t < 5; ++t) {
        const CVec x = random_signal(6, rng, true);
        CHECK(max_abs_diff(spectral_convolve(sys, x, y), x) <= 1e-9);
        const CVec z = random_signal(6, rng, true);
        CHECK(max_abs_diff(spectral_convolve(sys, x, z), spectral_convolve(sys, z, x)) <= 1e-9);
    }
}

TEST_CASE("spectral convolution is bilinear and associative") {
    std::mt19937_64 rng(17);
    auto sys = random_symmetric_system(5, rng);
    const CVec x = random_signal(5, rng), y = random_signal(5, rng), z = random_signal(5, rng);

    auto xy_z = spectral_convolve(sys, spectral_convolve(sys, x, y), z);
    auto x_yz = spectral_convolve(sys, x, spectral_convolve(sys, y, z));
    CHECK(max_abs_diff(xy_z, x_yz) <= 1e-9);

    CVec xpy(5);
    for (std::size_t i = 0; i < 5; ++i) xpy[i] = 2.0 * x[i] - 3.0 * y[i];
    auto lhs = spectral_convolve(sys, xpy, z);
    auto a = spectral_convolve(sys, x, z);
    auto b = spectral_convolve(sys, y, z);
    CVec rhs(5);
    for (std::size_t i = 0; i < 5; ++i) rhs[i] = 2.0 * a[i] - 3.0 * b[i];
    CHECK(max_abs_diff(lhs, rhs) <= 1e-9);
}

TEST_CASE("cycle spectral convolution matches the group convolution up to sqrt(n)") {
    std::mt19937_64 rng(19);
    for (std::size_t n : {2u, 5u, 8u}) {
        auto sys = build_shift(Graph::directed_cycle(n), ShiftKind::adjacency);
        FiniteAbelianGroup zn({long(n)});
        const CVec x = random_signal(n, rng, true);
        const CVec y = random_signal(n, rng, true);

        // group Fourier = sqrt(n) * GFT
        const CVec xhat_graph = gft(sys, x);
        const CVec xhat_group = fourier(GroupSignal(zn, x)).values;
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(xhat_group[k] - std::sqrt(double(n)) * xhat_graph[k]) <= 1e-9);
        }

        // group convolution = sqrt(n) * spectral convolution
        const CVec conv_group = convolve(GroupSignal(zn, x), GroupSignal(zn, y)).values;
        const CVec conv_graph = spectral_convolve(sys, x, y);
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(conv_group[k] - std::sqrt(double(n)) * conv_graph[k]) <= 1e-9);
        }
    }
}

TEST_CASE("filter matrix represents convolution by x") {
    std::mt19937_64 rng(23);
    auto sys = build_shift(Graph::path(5), ShiftKind::laplacian);

    const CVec ones(5, Cx(1.0, 0.0));
    CHECK(max_abs_diff(filter_matrix(sys, igft(sys, ones)), Matrix::identity(5)) <= 1e-9);

    for (int t = 0; t < 5; ++t) {
        const CVec x = random_signal(5, rng), y = random_signal(5, rng);
        const Matrix f = filter_matrix(sys, x);
        CHECK(max_abs_diff(f * y, spectral_convolve(sys, x, y)) <= 1e-9);
        // every convolution filter commutes with the shift
        CHECK(max_abs_diff(f * sys.shift(), sys.shift() * f) <= 1e-9);
    }
}

TEST_CASE("filter matrix of the scaled delta on C_4 is the cyclic shift") {
    auto sys = build_shift(Graph::directed_cycle(4), ShiftKind::adjacency);
    CVec x(4, Cx(0.0, 0.0));
    x[1] = 2.0; // sqrt(4) * delta_1
    const Matrix f = filter_matrix(sys, x);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const double expect = (i == (j + 1) % 4) ? 1.0 : 0.0;
            CHECK(std::abs(f(i, j) - expect) <= 1e-12);
        }
}

TEST_CASE("fit_polynomial on trivial spectra") {
    auto sys = build_shift(Graph::path(4), ShiftKind::laplacian);

    // constant spectral response: degree-0 polynomial
    const Cx c(0.75, 0.0);
    auto p = fit_polynomial(sys, igft(sys, CVec(4, c)));
    REQUIRE(p.coeffs.size() == 1);
    CHECK(std::abs(p.coeffs[0] - c) <= 1e-9);

    // response equal to the eigenvalues: the shift itself
    auto q = fit_polynomial(sys, igft(sys, sys.eigenvalues()));
    REQUIRE(q.coeffs.size() == 2);
    CHECK(std::abs(q.coeffs[0]) <= 1e-9);
    CHECK(std::abs(q.coeffs[1] - Cx(1.0, 0.0)) <= 1e-9);
}

TEST_CASE("fit_polynomial reproduces the filter matrix") {
    std::mt19937_64 rng(29);
    auto sys = build_shift(Graph::path(5), ShiftKind::laplacian);
    for (int t = 0; t < 10; ++t) {
        const CVec x = random_signal(5, rng);
        const auto p = fit_polynomial(sys, x);
        CHECK(p.degree() <= 4);
        CHECK(max_abs_diff(polynomial_matrix(sys.shift(), p), filter_matrix(sys, x)) <= 1e-6);
    }
}

TEST_CASE("fit_polynomial rejects repeated eigenvalues") {
    // undirected 4-cycle adjacency has a doubly repeated eigenvalue 0
    Graph c4(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}}, false);
    auto sys = build_shift(c4, ShiftKind::adjacency);
    CHECK_THROWS_AS(fit_polynomial(sys, CVec(4, Cx(1.0, 0.0))), std::invalid_argument);
}

TEST_CASE("polynomial uniqueness: Vandermonde and diagonal read-off agree") {
    std::mt19937_64 rng(31);
    auto sys = build_shift(Graph::path(5), ShiftKind::laplacian);
    for (int t = 0; t < 5; ++t) {
        const CVec x = random_signal(5, rng);
        const auto direct = fit_polynomial(sys, x);
        const auto via_matrix = is_shift_invariant(sys, filter_matrix(sys, x), 1e-9);
        REQUIRE(via_matrix.invariant);
        REQUIRE(via_matrix.certificate.has_value());
        const auto& cert = *via_matrix.certificate;
        REQUIRE(cert.coeffs.size() == direct.coeffs.size());
        for (std::size_t k = 0; k < cert.coeffs.size(); ++k) {
            CHECK(std::abs(cert.coeffs[k] - direct.coeffs[k]) <= 1e-6);
        }
    }
}

TEST_CASE("shift invariance decisions") {
    auto sys = build_shift(Graph::path(4), ShiftKind::laplacian);
    const Matrix& s = sys.shift();

    auto on_shift_square = is_shift_invariant(sys, s * s + 3.0 * s, 1e-9);
    CHECK(on_shift_square.invariant);
    REQUIRE(on_shift_square.certificate.has_value());
    REQUIRE(on_shift_square.certificate->coeffs.size() == 3);
    CHECK(std::abs(on_shift_square.certificate->coeffs[0]) <= 1e-7);
    CHECK(std::abs(on_shift_square.certificate->coeffs[1] - Cx(3.0, 0.0)) <= 1e-7);
    CHECK(std::abs(on_shift_square.certificate->coeffs[2] - Cx(1.0, 0.0)) <= 1e-7);

    auto on_identity = is_shift_invariant(sys, Matrix::identity(4), 1e-9);
    CHECK(on_identity.invariant);
    REQUIRE(on_identity.certificate.has_value());
    REQUIRE(on_identity.certificate->coeffs.size() == 1);
    CHECK(std::abs(on_identity.certificate->coeffs[0] - Cx(1.0, 0.0)) <= 1e-9);

    std::mt19937_64 rng(37);
    const Matrix random = random_matrix(4, 4, rng);
    auto on_random = is_shift_invariant(sys, random, 1e-6);
    CHECK_FALSE(on_random.invariant);
    CHECK(on_random.commutator_norm > 1e-3);
}

TEST_CASE("commutation characterization over 100 seeded trials") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto sys = build_shift(Graph::path(6), ShiftKind::laplacian);
    int rejected = 0;
    for (int trial = 0; trial < 100; ++trial) {
        CVec coeffs(4);
        for (auto& c : coeffs) c = u(rng);
        const Matrix poly = polynomial_matrix(sys.shift(), PolynomialFilter{coeffs});
        CHECK(is_shift_invariant(sys, poly, 1e-9).invariant);

        const Matrix m = random_matrix(6, 6, rng);
        const auto verdict = is_shift_invariant(sys, m, 1e-3);
        if (verdict.commutator_norm > 1e-3) {
            CHECK_FALSE(verdict.invariant);
            ++rejected;
        }
    }
    CHECK(rejected == 100); // random matrices never commute to 1e-3
}

TEST_CASE("gcn layer") {
    std::mt19937_64 rng(43);
    auto sys = random_symmetric_system(6, rng);
    const Matrix x = random_matrix(6, 3, rng);

    // P = (1), W = I: layer is the identity on features
    auto same = gcn_layer(sys, x, PolynomialFilter{{1.0}}, Matrix::identity(3));
    CHECK(max_abs_diff(same, x) <= 1e-12);

    // P = (0,1), W = I on the first basis column: first column of S
    Matrix e0(6, 1);
    e0(0, 0) = 1.0;
    auto shifted = gcn_layer(sys, e0, PolynomialFilter{{0.0, 1.0}}, Matrix::identity(1));
    CHECK(max_abs_diff(shifted, sys.shift() * e0) <= 1e-12);

    // random instance against the dense oracle
    CVec coeffs{0.3, -1.2, 0.8};
    const Matrix w = random_matrix(3, 2, rng);
    auto out = gcn_layer(sys, x, PolynomialFilter{coeffs}, w);
    auto oracle = polynomial_oracle(sys.shift(), coeffs) * x * w;
    CHECK(max_abs_diff(out, oracle) <= 1e-12);

    CHECK_THROWS_AS(gcn_layer(sys, x, PolynomialFilter{{1.0}}, Matrix::identity(4)),
                    std::invalid_argument);
}

TEST_CASE("degrees-of-freedom report") {
    auto sys = build_shift(Graph::path(3), ShiftKind::laplacian);
    auto r1 = dof_report(sys, 1);
    CHECK(r1.polynomial_params == 2);
    CHECK(r1.stencil3x3_params == 9);
    CHECK(dof_report(sys, 0).polynomial_params == 1);
    // middle node of the 3-path has two neighbors
    CHECK(r1.max_node_degree == 2);
    CHECK(r1.free_kernel_params == 3);
}

TEST_CASE("gft round trip across every built system kind") {
    std::mt19937_64 rng(47);
    std::vector<GraphShiftSystem> systems;
    systems.push_back(build_shift(Graph::directed_cycle(7), ShiftKind::adjacency));
    systems.push_back(build_shift(Graph::path(7), ShiftKind::laplacian));
    systems.push_back(build_shift(Graph::path(7), ShiftKind::normalized_laplacian_selfloop));
    systems.push_back(random_symmetric_system(7, rng));
    for (const auto& sys : systems) {
        for (int t = 0; t < 5; ++t) {
            const CVec x = random_signal(7, rng, true);
            CHECK(max_abs_diff(igft(sys, gft(sys, x)), x) <= 1e-9);
        }
    }
}
