#include "convkit/image.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace convkit {

LatticeFunction::LatticeFunction(long x0, long y0, std::size_t width, std::size_t height,
                                 std::vector<double> values)
    : x0_(x0), y0_(y0), width_(width), height_(height), values_(std::move(values)) {
    if (values_.size() != width_ * height_) {
        throw std::invalid_argument("LatticeFunction: " + std::to_string(values_.size()) +
                                    " values for a " + std::to_string(width_) + "x" +
                                    std::to_string(height_) + " box");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("LatticeFunction: non-finite value");
    }
}

LatticeFunction LatticeFunction::delta(long x, long y) {
    return LatticeFunction(x, y, 1, 1, {1.0});
}

double LatticeFunction::at(long x, long y) const {
    const long cx = x - x0_;
    const long cy = y - y0_;
    if (cx < 0 || cy < 0 || cx >= long(width_) || cy >= long(height_)) return 0.0;
    return values_[std::size_t(cy) * width_ + std::size_t(cx)];
}

LatticeFunction translate(const LatticeFunction& f, long dx, long dy) {
    if (f.empty()) return f;
    return LatticeFunction(f.x0() + dx, f.y0() + dy, f.width(), f.height(), f.values());
}

LatticeFunction convolve(const LatticeFunction& f, const LatticeFunction& g) {
    if (f.empty() || g.empty()) return LatticeFunction();
    const std::size_t w = f.width() + g.width() - 1;
    const std::size_t h = f.height() + g.height() - 1;
    std::vector<double> out(w * h, 0.0);
    for (std::size_t fy = 0; fy < f.height(); ++fy)
        for (std::size_t fx = 0; fx < f.width(); ++fx) {
            const double fv = f.values()[fy * f.width() + fx];
            if (fv == 0.0) continue;
            for (std::size_t gy = 0; gy < g.height(); ++gy)
                for (std::size_t gx = 0; gx < g.width(); ++gx) {
                    out[(fy + gy) * w + (fx + gx)] += fv * g.values()[gy * g.width() + gx];
                }
        }
    return LatticeFunction(f.x0() + g.x0(), f.y0() + g.y0(), w, h, std::move(out));
}

LatticeFunction Kernel3x3::as_function() const {
    return LatticeFunction(-1, -1, 3, 3, std::vector<double>(values.begin(), values.end()));
}

CnnEquivalence cnn_equivalence(const LatticeFunction& image, const Kernel3x3& kernel) {
    if (image.x0() != 0 || image.y0() != 0) {
        throw std::invalid_argument("cnn_equivalence: image must be anchored at the origin");
    }
    CnnEquivalence report;
    report.convolution = convolve(image, kernel.as_function());
    if (image.empty()) return report;

    // stride-1 correlation with the flipped kernel over the same output box
    const long w = long(image.width());
    const long h = long(image.height());
    std::vector<double> corr(std::size_t(w + 2) * std::size_t(h + 2), 0.0);
    for (long y = -1; y <= h; ++y) {
        for (long x = -1; x <= w; ++x) {
            double acc = 0.0;
            for (long dy = -1; dy <= 1; ++dy)
                for (long dx = -1; dx <= 1; ++dx) {
                    acc += image.at(x + dx, y + dy) * kernel.at(-dx, -dy);
                }
            corr[std::size_t(y + 1) * std::size_t(w + 2) + std::size_t(x + 1)] = acc;
        }
    }
    report.correlation =
        LatticeFunction(-1, -1, std::size_t(w + 2), std::size_t(h + 2), std::move(corr));

    for (std::size_t i = 0; i < report.correlation.values().size(); ++i) {
        report.max_discrepancy =
            std::max(report.max_discrepancy,
                     std::abs(report.convolution.values()[i] - report.correlation.values()[i]));
    }
    return report;
}

} // namespace convkit
