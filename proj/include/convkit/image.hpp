#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace convkit {

/// Finitely supported real function on the integer plane. Values live on a
/// width x height box anchored at (x0, y0); the function is zero outside.
/// Storage is row-major with rows running along y.
class LatticeFunction {
public:
    LatticeFunction() = default; // the zero function on an empty box
    LatticeFunction(long x0, long y0, std::size_t width, std::size_t height,
                    std::vector<double> values);

    static LatticeFunction delta(long x, long y);

    bool empty() const { return width_ == 0 || height_ == 0; }
    long x0() const { return x0_; }
    long y0() const { return y0_; }
    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    const std::vector<double>& values() const { return values_; }

    /// Value at an arbitrary lattice point, zero outside the box.
    double at(long x, long y) const;

    bool operator==(const LatticeFunction&) const = default;

private:
    long x0_ = 0;
    long y0_ = 0;
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> values_;
};

LatticeFunction translate(const LatticeFunction& f, long dx, long dy);

/// Convolution over Z+Z: (f*g)(a) = sum_b g(a-b) f(b). The output box is
/// the Minkowski sum of the input boxes; exact on integer-valued input.
LatticeFunction convolve(const LatticeFunction& f, const LatticeFunction& g);

/// 3x3 kernel supported on {-1,0,1}^2, row-major with rows along y.
struct Kernel3x3 {
    std::array<double, 9> values{};

    double at(long dx, long dy) const { return values[std::size_t((dy + 1) * 3 + (dx + 1))]; }
    LatticeFunction as_function() const;
};

struct CnnEquivalence {
    double max_discrepancy = 0.0;
    LatticeFunction convolution;
    LatticeFunction correlation;
};

/// Runs the group convolution against a conventional stride-1 sliding-window
/// correlation with the flipped kernel and reports the largest difference
/// over the shared output box (exactly zero for integer input).
CnnEquivalence cnn_equivalence(const LatticeFunction& image, const Kernel3x3& kernel);

} // namespace convkit
