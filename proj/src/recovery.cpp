#include "convkit/recovery.hpp"

#include "convkit/group.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>
#include <string>

namespace convkit {

ConvolutionAlgebraOracle hadamard_oracle(std::size_t n) {
    return {n, [](std::span<const Cx> x, std::span<const Cx> y) { return hadamard(x, y); }};
}

ConvolutionAlgebraOracle spectral_oracle(Matrix u) {
    if (!u.square()) throw std::invalid_argument("spectral_oracle: U must be square");
    const std::size_t n = u.rows();
    return {n, [u = std::move(u)](std::span<const Cx> x, std::span<const Cx> y) {
                return u * hadamard(solve(u, x), solve(u, y));
            }};
}

ConvolutionAlgebraOracle cyclic_convolution_oracle(std::size_t n) {
    FiniteAbelianGroup zn({long(n)});
    return {n, [zn](std::span<const Cx> x, std::span<const Cx> y) {
                return convolve(GroupSignal(zn, CVec(x.begin(), x.end())),
                                GroupSignal(zn, CVec(y.begin(), y.end())))
                    .values;
            }};
}

ConvolutionAlgebraOracle corrupt_oracle(ConvolutionAlgebraOracle inner, double amplitude,
                                        std::uint64_t seed) {
    const std::size_t n = inner.n;
    return {n, [inner = std::move(inner), amplitude, seed](std::span<const Cx> x,
                                                           std::span<const Cx> y) {
                CVec out = inner.product(x, y);
                // deterministic perturbation keyed off the inputs, so the
                // corrupted oracle is still a pure function
                std::uint64_t h = seed;
                auto mix = [&h](double v) {
                    std::uint64_t bits;
                    static_assert(sizeof bits == sizeof v);
                    std::memcpy(&bits, &v, sizeof bits);
                    h ^= bits + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
                };
                for (Cx v : x) { mix(v.real()); mix(v.imag()); }
                for (Cx v : y) { mix(v.real()); mix(v.imag()); }
                std::mt19937_64 rng(h);
                std::uniform_real_distribution<double> u(-1.0, 1.0);
                for (Cx& v : out) v += amplitude * Cx(u(rng), 0.0);
                return out;
            }};
}

Matrix multiplication_operator(const ConvolutionAlgebraOracle& oracle, std::span<const Cx> r) {
    if (r.size() != oracle.n) {
        throw std::invalid_argument("multiplication_operator: probe length mismatch");
    }
    Matrix m(oracle.n, oracle.n);
    CVec basis(oracle.n, Cx(0.0, 0.0));
    for (std::size_t j = 0; j < oracle.n; ++j) {
        basis[j] = 1.0;
        const CVec col = oracle.product(r, basis);
        if (col.size() != oracle.n) {
            throw std::runtime_error("multiplication_operator: oracle output of wrong length");
        }
        m.set_column(j, col);
        basis[j] = 0.0;
    }
    return m;
}

namespace {

void spot_check(const ConvolutionAlgebraOracle& oracle, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0xa5a5a5a5a5a5a5a5ull);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto draw = [&] {
        CVec v(oracle.n);
        for (auto& x : v) x = u(rng);
        return v;
    };
    for (int trial = 0; trial < 3; ++trial) {
        const CVec x = draw(), y = draw(), z = draw();
        const CVec xz = oracle.product(x, z);
        const CVec yz = oracle.product(y, z);

        CVec mix(oracle.n);
        const Cx alpha(0.7, 0.0), beta(-1.3, 0.0);
        for (std::size_t i = 0; i < oracle.n; ++i) mix[i] = alpha * x[i] + beta * y[i];
        const CVec lhs = oracle.product(mix, z);
        double scale = 1.0 + max_abs(xz) + max_abs(yz);
        for (std::size_t i = 0; i < oracle.n; ++i) {
            if (std::abs(lhs[i] - alpha * xz[i] - beta * yz[i]) > 1e-8 * scale) {
                throw std::runtime_error("recover_kernel: oracle failed the bilinearity check");
            }
        }
        if (max_abs_diff(oracle.product(x, y), oracle.product(y, x)) > 1e-8 * scale) {
            throw std::runtime_error("recover_kernel: oracle failed the commutativity check");
        }
        const CVec assoc_l = oracle.product(oracle.product(x, y), z);
        const CVec assoc_r = oracle.product(x, oracle.product(y, z));
        scale = 1.0 + max_abs(assoc_l) + max_abs(assoc_r);
        if (max_abs_diff(assoc_l, assoc_r) > 1e-8 * scale) {
            throw std::runtime_error("recover_kernel: oracle failed the associativity check");
        }
    }
}

bool spectrum_simple(const CVec& lam) {
    double spread = 0.0;
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::size_t j = i + 1; j < lam.size(); ++j)
            spread = std::max(spread, std::abs(lam[i] - lam[j]));
    if (lam.size() > 1 && spread == 0.0) return false;
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::size_t j = i + 1; j < lam.size(); ++j)
            if (std::abs(lam[i] - lam[j]) <= 1e-8 * spread) return false;
    return true;
}

void fix_column_phase(CVec& v) {
    const double top = max_abs(v);
    for (const Cx& x : v) {
        if (std::abs(x) > 1e-8 * top) {
            const Cx phase = std::conj(x) / std::abs(x);
            for (Cx& y : v) y *= phase;
            return;
        }
    }
}

} // namespace

Cx RecoveredKernel::character(std::size_t i, std::span<const Cx> x) const {
    return character_scales[i] * dot(columns.column(i), x);
}

CVec RecoveredKernel::idempotent(std::size_t i) const {
    CVec e = columns.column(i);
    for (Cx& v : e) v /= character_scales[i];
    return e;
}

CVec RecoveredKernel::rebuilt_product(std::span<const Cx> x, std::span<const Cx> y) const {
    const std::size_t n = size();
    Matrix e(n, n);
    for (std::size_t i = 0; i < n; ++i) e.set_column(i, idempotent(i));
    return e * hadamard(solve(e, x), solve(e, y));
}

RecoveredKernel recover_kernel(const ConvolutionAlgebraOracle& oracle, std::uint64_t seed) {
    if (oracle.n == 0) throw std::invalid_argument("recover_kernel: empty oracle");
    spot_check(oracle, seed);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int attempt = 0; attempt < 16; ++attempt) {
        CVec r(oracle.n);
        for (auto& x : r) x = u(rng);
        const Matrix m = multiplication_operator(oracle, r);
        const double tol = 1e-8 * (1.0 + m.max_abs());

        Matrix basis;
        CVec lam;
        if (is_real_symmetric(m, tol)) {
            // symmetrize away oracle roundoff before the Jacobi pass
            Matrix sym(oracle.n, oracle.n);
            for (std::size_t i = 0; i < oracle.n; ++i)
                for (std::size_t j = 0; j < oracle.n; ++j)
                    sym(i, j) = 0.5 * (m(i, j).real() + m(j, i).real());
            auto eig = eig_symmetric(sym);
            basis = std::move(eig.u);
            lam.assign(eig.eigenvalues.begin(), eig.eigenvalues.end());
        } else if (is_circulant(m, tol)) {
            auto eig = eig_circulant(m.entries().subspan(0, oracle.n));
            basis = std::move(eig.u);
            lam = std::move(eig.eigenvalues);
        } else {
            throw std::runtime_error(
                "recover_kernel: multiplication operator is neither symmetric nor circulant; "
                "the algebra is outside the supported class");
        }
        if (!spectrum_simple(lam)) continue; // degenerate probe, redraw

        RecoveredKernel kernel;
        kernel.columns = Matrix(oracle.n, oracle.n);
        kernel.character_scales.resize(oracle.n);
        for (std::size_t i = 0; i < oracle.n; ++i) {
            CVec v = basis.column(i);
            const double norm = l2_norm(v);
            for (Cx& x : v) x /= norm;
            fix_column_phase(v);
            kernel.columns.set_column(i, v);
            // the scale making nu_i multiplicative: nu(v*v) = nu(v)^2 with
            // <v,v> = 1 forces scale = <v, v*v>
            const Cx scale = dot(v, oracle.product(v, v));
            if (std::abs(scale) < 1e-8) {
                throw std::runtime_error(
                    "recover_kernel: recovered direction is not an idempotent axis "
                    "(character scale vanished)");
            }
            kernel.character_scales[i] = scale;
        }
        return kernel;
    }
    throw std::runtime_error("recover_kernel: 16 probes in a row had repeated eigenvalues; "
                             "the algebra is not multiplicity-free");
}

IdempotentReport verify_idempotents(const ConvolutionAlgebraOracle& oracle,
                                    const RecoveredKernel& kernel) {
    IdempotentReport report;
    const std::size_t n = kernel.size();
    std::vector<CVec> idem(n);
    for (std::size_t i = 0; i < n; ++i) idem[i] = kernel.idempotent(i);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            CVec prod = oracle.product(idem[i], idem[j]);
            if (i == j) {
                for (std::size_t k = 0; k < n; ++k) prod[k] -= idem[i][k];
            }
            report.max_deviation = std::max(report.max_deviation, max_abs(prod));
        }
    }
    report.within_tolerance = report.max_deviation <= 1e-6;
    return report;
}

KernelMatch match_columns(const Matrix& recovered, const Matrix& reference) {
    if (recovered.rows() != reference.rows() || recovered.cols() != reference.cols()) {
        throw std::invalid_argument("match_columns: shape mismatch");
    }
    const std::size_t n = recovered.cols();
    KernelMatch match;
    match.permutation.assign(n, n);
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const CVec v = recovered.column(i);
        std::size_t best = n;
        double best_overlap = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double overlap = std::abs(dot(reference.column(j), v));
            if (overlap > best_overlap) {
                best_overlap = overlap;
                best = j;
            }
        }
        used[best] = true;
        match.permutation[i] = best;

        CVec w = reference.column(best);
        Cx align = dot(w, v);
        if (std::abs(align) > 0.0) align /= std::abs(align);
        else align = 1.0;
        double dist = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) dist += std::norm(v[k] - align * w[k]);
        match.max_column_distance = std::max(match.max_column_distance, std::sqrt(dist));
    }
    return match;
}

} // namespace convkit
