#include "convkit/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace convkit {

bool is_finite(Cx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

namespace {

void require_finite(std::span<const Cx> values, const char* what) {
    for (Cx v : values) {
        if (!is_finite(v)) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
    }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(what) + ": shape mismatch " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
    }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), e_(rows * cols, Cx(0.0, 0.0)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, CVec entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_) {
        throw std::invalid_argument("Matrix: entry count " + std::to_string(e_.size()) +
                                    " does not match " + std::to_string(rows_) + "x" +
                                    std::to_string(cols_));
    }
    require_finite(e_, "Matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Cx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    e_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("Matrix: ragged initializer rows");
        }
        e_.insert(e_.end(), row.begin(), row.end());
    }
    require_finite(e_, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const Cx> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::column_vector(std::span<const Cx> v) {
    return Matrix(v.size(), 1, CVec(v.begin(), v.end()));
}

CVec Matrix::column(std::size_t c) const {
    CVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

void Matrix::set_column(std::size_t c, std::span<const Cx> v) {
    if (v.size() != rows_) throw std::invalid_argument("set_column: length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::conj_transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
    return t;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (Cx v : e_) m = std::max(m, std::abs(v));
    return m;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (Cx v : e_) s += std::norm(v);
    return std::sqrt(s);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: inner dimensions " + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()));
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Cx aik = a(i, k);
            if (aik == Cx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Matrix operator*(Cx s, const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "matrix add");
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "matrix subtract");
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

CVec operator*(const Matrix& a, std::span<const Cx> x) {
    if (a.cols() != x.size()) {
        throw std::invalid_argument("matvec: dimension mismatch");
    }
    CVec out(a.rows(), Cx(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Cx acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        out[i] = acc;
    }
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

Matrix solve(const Matrix& a, const Matrix& b) {
    if (!a.square()) throw std::invalid_argument("solve: coefficient matrix must be square");
    if (b.rows() != a.rows()) throw std::invalid_argument("solve: right-hand side has wrong row count");
    const std::size_t n = a.rows();
    const double pivot_tol = 1e-12 * a.max_abs();

    Matrix lu = a;
    Matrix x = b;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            double v = std::abs(lu(r, k));
            if (v > best) { best = v; piv = r; }
        }
        if (best <= pivot_tol) {
            throw std::runtime_error("solve: matrix is singular to tolerance (pivot " +
                                     std::to_string(best) + " at column " + std::to_string(k) + ")");
        }
        if (piv != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
            for (std::size_t c = 0; c < x.cols(); ++c) std::swap(x(k, c), x(piv, c));
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const Cx f = lu(r, k) / lu(k, k);
            if (f == Cx(0.0, 0.0)) continue;
            lu(r, k) = 0.0;
            for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
            for (std::size_t c = 0; c < x.cols(); ++c) x(r, c) -= f * x(k, c);
        }
    }
    for (std::size_t ri = n; ri-- > 0;) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            Cx acc = x(ri, c);
            for (std::size_t j = ri + 1; j < n; ++j) acc -= lu(ri, j) * x(j, c);
            x(ri, c) = acc / lu(ri, ri);
        }
    }
    return x;
}

CVec solve(const Matrix& a, std::span<const Cx> b) {
    return solve(a, Matrix::column_vector(b)).column(0);
}

namespace {

// One cyclic Jacobi sweep over the strict upper triangle; a and v are n x n
// row-major real arrays, v accumulates the rotations.
void jacobi_sweep(std::vector<double>& a, std::vector<double>& v, std::size_t n) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const double apq = a[p * n + q];
            if (apq == 0.0) continue;
            const double app = a[p * n + p];
            const double aqq = a[q * n + q];
            const double theta = (aqq - app) / (2.0 * apq);
            const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                             (std::abs(theta) + std::sqrt(theta * theta + 1.0));
            const double c = 1.0 / std::sqrt(t * t + 1.0);
            const double s = t * c;
            for (std::size_t k = 0; k < n; ++k) {
                const double akp = a[k * n + p];
                const double akq = a[k * n + q];
                a[k * n + p] = c * akp - s * akq;
                a[k * n + q] = s * akp + c * akq;
            }
            for (std::size_t k = 0; k < n; ++k) {
                const double apk = a[p * n + k];
                const double aqk = a[q * n + k];
                a[p * n + k] = c * apk - s * aqk;
                a[q * n + k] = s * apk + c * aqk;
            }
            for (std::size_t k = 0; k < n; ++k) {
                const double vkp = v[k * n + p];
                const double vkq = v[k * n + q];
                v[k * n + p] = c * vkp - s * vkq;
                v[k * n + q] = s * vkp + c * vkq;
            }
        }
    }
}

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
}

} // namespace

SymmetricEigen eig_symmetric(const Matrix& s) {
    if (!s.square()) throw std::invalid_argument("eig_symmetric: matrix must be square");
    const std::size_t n = s.rows();
    const double scale = std::max(1.0, s.max_abs());
    if (max_imag(s) > 1e-12 * scale || max_asymmetry(s) > 1e-12 * scale) {
        throw std::invalid_argument("eig_symmetric: input is not real symmetric to tolerance");
    }

    std::vector<double> a(n * n), v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        v[i * n + i] = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            // symmetrize away roundoff-level asymmetry
            a[i * n + j] = 0.5 * (s(i, j).real() + s(j, i).real());
        }
    }

    double norm_f = 0.0;
    for (double x : a) norm_f += x * x;
    norm_f = std::sqrt(norm_f);
    const double stop = 1e-12 * norm_f;

    int sweeps = 0;
    while (off_diagonal_norm(a, n) > stop) {
        if (++sweeps > 100) {
            throw std::runtime_error("eig_symmetric: Jacobi did not converge in 100 sweeps");
        }
        jacobi_sweep(a, v, n);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    SymmetricEigen out;
    out.eigenvalues.resize(n);
    out.u = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t src = order[c];
        out.eigenvalues[c] = a[src * n + src];
        double colmax = 0.0;
        for (std::size_t r = 0; r < n; ++r) colmax = std::max(colmax, std::abs(v[r * n + src]));
        double sign = 1.0;
        for (std::size_t r = 0; r < n; ++r) {
            if (std::abs(v[r * n + src]) > 1e-8 * colmax) {
                sign = v[r * n + src] < 0.0 ? -1.0 : 1.0;
                break;
            }
        }
        for (std::size_t r = 0; r < n; ++r) out.u(r, c) = sign * v[r * n + src];
    }
    return out;
}

CirculantEigen eig_circulant(std::span<const Cx> first_row) {
    const std::size_t n = first_row.size();
    if (n == 0) throw std::invalid_argument("eig_circulant: empty first row");
    require_finite(first_row, "eig_circulant");

    const double tau = 2.0 * std::numbers::pi;
    const double root = 1.0 / std::sqrt(static_cast<double>(n));
    CirculantEigen out;
    out.u = Matrix(n, n);
    out.eigenvalues.assign(n, Cx(0.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t m = (j * k) % n;
            out.u(j, k) = std::polar(root, tau * static_cast<double>(m) / static_cast<double>(n));
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        Cx acc = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const std::size_t m = (r * k) % n;
            acc += first_row[r] * std::polar(1.0, tau * static_cast<double>(m) / static_cast<double>(n));
        }
        out.eigenvalues[k] = acc;
    }
    return out;
}

double max_asymmetry(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("max_asymmetry: matrix must be square");
    double a = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            a = std::max(a, std::abs(m(i, j) - m(j, i)));
    return a;
}

double max_imag(const Matrix& m) {
    double a = 0.0;
    for (Cx v : m.entries()) a = std::max(a, std::abs(v.imag()));
    return a;
}

bool is_real_symmetric(const Matrix& m, double tol) {
    return m.square() && max_imag(m) <= tol && max_asymmetry(m) <= tol;
}

bool is_circulant(const Matrix& m, double tol) {
    if (!m.square()) return false;
    const std::size_t n = m.rows();
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(m(i, j) - m(0, (j + n - i) % n)) > tol) return false;
    return true;
}

Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix u(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        CVec v(n);
        for (;;) {
            for (std::size_t r = 0; r < n; ++r) v[r] = gauss(rng);
            // two Gram-Schmidt passes against the accepted columns
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t p = 0; p < c; ++p) {
                    const CVec up = u.column(p);
                    const Cx proj = dot(up, v);
                    for (std::size_t r = 0; r < n; ++r) v[r] -= proj * up[r];
                }
            }
            const double norm = l2_norm(v);
            if (norm > 1e-8) {
                for (std::size_t r = 0; r < n; ++r) v[r] /= norm;
                break;
            }
        }
        u.set_column(c, v);
    }
    return u;
}

Cx dot(std::span<const Cx> a, std::span<const Cx> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Cx acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double l2_norm(std::span<const Cx> v) {
    double s = 0.0;
    for (Cx x : v) s += std::norm(x);
    return std::sqrt(s);
}

double max_abs(std::span<const Cx> v) {
    double m = 0.0;
    for (Cx x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_abs_diff(std::span<const Cx> a, std::span<const Cx> b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

CVec hadamard(std::span<const Cx> a, std::span<const Cx> b) {
    if (a.size() != b.size()) throw std::invalid_argument("hadamard: length mismatch");
    CVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

} // namespace convkit
