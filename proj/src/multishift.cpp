#include "convkit/multishift.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace convkit {

MultiShiftSystem::MultiShiftSystem(std::vector<GraphShiftSystem> systems,
                                   std::vector<double> weights)
    : systems_(std::move(systems)), weights_(std::move(weights)) {
    if (systems_.empty()) throw std::invalid_argument("MultiShiftSystem: no systems");
    n_ = systems_[0].size();
    for (const auto& sys : systems_) {
        if (sys.size() != n_) {
            throw std::invalid_argument("MultiShiftSystem: systems disagree on node count");
        }
        const double scale = 1.0 + sys.shift().max_abs();
        if (max_imag(sys.shift()) > 1e-8 * scale || max_asymmetry(sys.shift()) > 1e-8 * scale) {
            throw std::invalid_argument("MultiShiftSystem: shift operators must be symmetric");
        }
        const Matrix gram = sys.basis().conj_transpose() * sys.basis();
        if (max_abs_diff(gram, Matrix::identity(n_)) > 1e-8) {
            throw std::invalid_argument("MultiShiftSystem: eigenbases must be orthogonal");
        }
    }
    if (weights_.size() != systems_.size()) {
        throw std::invalid_argument("MultiShiftSystem: one weight per system required");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) throw std::invalid_argument("MultiShiftSystem: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("MultiShiftSystem: weights must sum to 1, got " +
                                    std::to_string(total));
    }
}

namespace {

void require_signal_shape(const MultiShiftSystem& sys, const MultiSignal& m, const char* what) {
    if (m.rows() != sys.nodes() || m.cols() != sys.parameters()) {
        throw std::invalid_argument(std::string(what) + ": signal must be " +
                                    std::to_string(sys.nodes()) + "x" +
                                    std::to_string(sys.parameters()));
    }
}

} // namespace

MultiSignal multi_convolve(const MultiShiftSystem& sys, const MultiSignal& m,
                           const MultiSignal& n) {
    require_signal_shape(sys, m, "multi_convolve");
    require_signal_shape(sys, n, "multi_convolve");
    MultiSignal out(sys.nodes(), sys.parameters());
    for (std::size_t t = 0; t < sys.parameters(); ++t) {
        out.set_column(t, spectral_convolve(sys.system(t), m.column(t), n.column(t)));
    }
    return out;
}

Cx multi_character(const MultiShiftSystem& sys, std::size_t t, std::size_t j,
                   const MultiSignal& m) {
    require_signal_shape(sys, m, "multi_character");
    if (t >= sys.parameters() || j >= sys.nodes()) {
        throw std::invalid_argument("multi_character: index out of range");
    }
    return dot(sys.system(t).basis().column(j), m.column(t));
}

MultiSignal broadcast_signal(const MultiShiftSystem& sys, std::span<const Cx> x) {
    if (x.size() != sys.nodes()) {
        throw std::invalid_argument("broadcast_signal: signal length mismatch");
    }
    MultiSignal out(sys.nodes(), sys.parameters());
    for (std::size_t t = 0; t < sys.parameters(); ++t) out.set_column(t, x);
    return out;
}

GraphSignal expected_signal(const MultiShiftSystem& sys, const MultiSignal& m) {
    require_signal_shape(sys, m, "expected_signal");
    GraphSignal out(sys.nodes(), Cx(0.0, 0.0));
    for (std::size_t t = 0; t < sys.parameters(); ++t) {
        const double w = sys.weights()[t];
        for (std::size_t i = 0; i < sys.nodes(); ++i) out[i] += w * m(i, t);
    }
    return out;
}

CompositeTransform composite_transform(const MultiShiftSystem& sys, std::span<const Cx> x) {
    if (x.size() != sys.nodes()) {
        throw std::invalid_argument("composite_transform: signal length mismatch");
    }
    CompositeTransform out;
    const MultiSignal lifted = broadcast_signal(sys, x);
    MultiSignal hat(sys.nodes(), sys.parameters());
    for (std::size_t t = 0; t < sys.parameters(); ++t) {
        hat.set_column(t, gft(sys.system(t), lifted.column(t)));
    }
    out.values = expected_signal(sys, hat);

    // materialize the composite map column by column to test orthogonality
    const std::size_t n = sys.nodes();
    Matrix phi(n, n);
    CVec basis(n, Cx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        basis[k] = 1.0;
        CVec col(n, Cx(0.0, 0.0));
        for (std::size_t t = 0; t < sys.parameters(); ++t) {
            const CVec g = gft(sys.system(t), basis);
            for (std::size_t i = 0; i < n; ++i) col[i] += sys.weights()[t] * g[i];
        }
        phi.set_column(k, col);
        basis[k] = 0.0;
    }
    out.gram_deviation = max_abs_diff(phi.conj_transpose() * phi, Matrix::identity(n));
    out.orthogonal = out.gram_deviation <= 1e-6;
    return out;
}

CVec stack_signal(const MultiShiftSystem& sys, const MultiSignal& m) {
    require_signal_shape(sys, m, "stack_signal");
    CVec out(sys.nodes() * sys.parameters());
    for (std::size_t t = 0; t < sys.parameters(); ++t)
        for (std::size_t i = 0; i < sys.nodes(); ++i) out[t * sys.nodes() + i] = m(i, t);
    return out;
}

MultiSignal unstack_signal(const MultiShiftSystem& sys, std::span<const Cx> v) {
    if (v.size() != sys.nodes() * sys.parameters()) {
        throw std::invalid_argument("unstack_signal: length mismatch");
    }
    MultiSignal out(sys.nodes(), sys.parameters());
    for (std::size_t t = 0; t < sys.parameters(); ++t)
        for (std::size_t i = 0; i < sys.nodes(); ++i) out(i, t) = v[t * sys.nodes() + i];
    return out;
}

ConvolutionAlgebraOracle multishift_oracle(const MultiShiftSystem& sys) {
    const std::size_t dim = sys.nodes() * sys.parameters();
    return {dim, [sys](std::span<const Cx> x, std::span<const Cx> y) {
                return stack_signal(sys, multi_convolve(sys, unstack_signal(sys, x),
                                                        unstack_signal(sys, y)));
            }};
}

Matrix multishift_kernel(const MultiShiftSystem& sys) {
    const std::size_t n = sys.nodes();
    const std::size_t dim = n * sys.parameters();
    Matrix kernel(dim, dim);
    for (std::size_t t = 0; t < sys.parameters(); ++t) {
        for (std::size_t j = 0; j < n; ++j) {
            const CVec u = sys.system(t).basis().column(j);
            for (std::size_t i = 0; i < n; ++i) kernel(t * n + i, t * n + j) = u[i];
        }
    }
    return kernel;
}

} // namespace convkit
