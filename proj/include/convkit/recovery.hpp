#pragma once

#include "convkit/numeric.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace convkit {

/// A convolution algebra given only as a black box: an n-dimensional signal
/// space with a bilinear, commutative, associative product. The product must
/// be a pure function.
struct ConvolutionAlgebraOracle {
    std::size_t n = 0;
    std::function<CVec(std::span<const Cx>, std::span<const Cx>)> product;
};

ConvolutionAlgebraOracle hadamard_oracle(std::size_t n);
/// Spectral-convolution algebra x * y = U (U^-1 x . U^-1 y).
ConvolutionAlgebraOracle spectral_oracle(Matrix u);
/// Cyclic group convolution on Z/n.
ConvolutionAlgebraOracle cyclic_convolution_oracle(std::size_t n);
/// Adds seeded noise of the given amplitude to every product (diagnostic).
ConvolutionAlgebraOracle corrupt_oracle(ConvolutionAlgebraOracle inner, double amplitude,
                                        std::uint64_t seed);

/// Matrix of y -> product(r, y), assembled column by column on basis vectors.
Matrix multiplication_operator(const ConvolutionAlgebraOracle& oracle, std::span<const Cx> r);

/// Fourier kernel reconstructed from a convolution algebra. Columns are
/// unit vectors; the character attached to column i is
///   nu_i(x) = scale_i * <column_i, x>,
/// with scale_i chosen from the algebra itself so that nu_i is
/// multiplicative. Rescaling column i by 1/scale_i gives the minimal
/// idempotent e_i with e_i * e_j = [i=j] e_i.
struct RecoveredKernel {
    Matrix columns;
    CVec character_scales;

    std::size_t size() const { return columns.rows(); }
    Cx character(std::size_t i, std::span<const Cx> x) const;
    CVec idempotent(std::size_t i) const;
    /// The spectral-convolution product rebuilt from the idempotent basis;
    /// reproduces the source algebra when recovery succeeded.
    CVec rebuilt_product(std::span<const Cx> x, std::span<const Cx> y) const;
};

/// Recovers the kernel behind an oracle by eigendecomposing the
/// multiplication operator of a random probe (entries uniform on [-1,1],
/// seeded). Probes whose spectrum is not simple are redrawn, at most 16
/// times. The operator must come out real symmetric or circulant; anything
/// else is outside the supported algebra class.
RecoveredKernel recover_kernel(const ConvolutionAlgebraOracle& oracle, std::uint64_t seed);

struct IdempotentReport {
    double max_deviation = 0.0; // max over i,j of ||e_i * e_j - [i=j] e_i||_max
    bool within_tolerance = false;
};

/// Checks the idempotent relations of the rescaled kernel columns against
/// the oracle. Report-only; the tolerance line is 1e-6.
IdempotentReport verify_idempotents(const ConvolutionAlgebraOracle& oracle,
                                    const RecoveredKernel& kernel);

struct KernelMatch {
    std::vector<std::size_t> permutation; // recovered column i matches reference[perm[i]]
    double max_column_distance = 0.0;     // after unit-scalar alignment
};

/// Greedy column matching up to permutation and unit scalar per column.
KernelMatch match_columns(const Matrix& recovered, const Matrix& reference);

} // namespace convkit
