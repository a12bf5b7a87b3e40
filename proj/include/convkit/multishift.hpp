#pragma once

#include "convkit/graph.hpp"
#include "convkit/recovery.hpp"

#include <vector>

namespace convkit {

/// A finite family of m shift systems over one node set of size n, each with
/// a symmetric shift and an orthogonal eigenbasis, plus a probability vector
/// weighting the parameters.
class MultiShiftSystem {
public:
    MultiShiftSystem(std::vector<GraphShiftSystem> systems, std::vector<double> weights);

    std::size_t nodes() const { return n_; }
    std::size_t parameters() const { return systems_.size(); }
    const GraphShiftSystem& system(std::size_t t) const { return systems_.at(t); }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::size_t n_ = 0;
    std::vector<GraphShiftSystem> systems_;
    std::vector<double> weights_;
};

/// Signals are n x m matrices, column t belonging to parameter t.
using MultiSignal = Matrix;

/// Columnwise spectral convolution: column t of M*N is the convolution of
/// the t-th columns under system t.
MultiSignal multi_convolve(const MultiShiftSystem& sys, const MultiSignal& m,
                           const MultiSignal& n);

/// Character nu_(t,j)(M) = <U_t column j, M column t>.
Cx multi_character(const MultiShiftSystem& sys, std::size_t t, std::size_t j,
                   const MultiSignal& m);

/// Lift of a node signal: every parameter column is x.
MultiSignal broadcast_signal(const MultiShiftSystem& sys, std::span<const Cx> x);

/// Expectation over the parameter set with the system weights.
GraphSignal expected_signal(const MultiShiftSystem& sys, const MultiSignal& m);

struct CompositeTransform {
    GraphSignal values;           // sum_t w_t U_t^-1 x
    double gram_deviation = 0.0;  // ||Phi^H Phi - I||_max for the composite map
    bool orthogonal = false;      // raised only when the deviation is <= 1e-6
};

/// Expectation of the columnwise GFT of the broadcast lift; reports whether
/// the composite map is an orthogonal base change (it generally is not when
/// the systems differ).
CompositeTransform composite_transform(const MultiShiftSystem& sys, std::span<const Cx> x);

// bridge to character recovery: signals stacked column-major in
// parameter-major blocks of length n
CVec stack_signal(const MultiShiftSystem& sys, const MultiSignal& m);
MultiSignal unstack_signal(const MultiShiftSystem& sys, std::span<const Cx> v);

/// The columnwise convolution as an n*m-dimensional algebra oracle.
ConvolutionAlgebraOracle multishift_oracle(const MultiShiftSystem& sys);

/// Reference kernel of the stacked algebra: U_t column j embedded at block
/// t, zeros elsewhere; n*m columns in (t, j) order.
Matrix multishift_kernel(const MultiShiftSystem& sys);

} // namespace convkit
