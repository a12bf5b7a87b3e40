#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace convkit {

using Cx = std::complex<double>;
using CVec = std::vector<Cx>;

bool is_finite(Cx v);

/// Dense row-major complex matrix. Entries are validated to be finite on
/// construction from raw data; all operations are pure and never mutate
/// their arguments.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, CVec entries);
    Matrix(std::initializer_list<std::initializer_list<Cx>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const Cx> d);
    static Matrix column_vector(std::span<const Cx> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool square() const { return rows_ == cols_; }

    Cx& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Cx& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    std::span<const Cx> entries() const { return e_; }

    CVec column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const Cx> v);

    Matrix transpose() const;
    Matrix conj_transpose() const;

    double max_abs() const;
    double frobenius_norm() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    CVec e_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Cx s, const Matrix& a);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
CVec operator*(const Matrix& a, std::span<const Cx> x);

/// Max |a(i,j) - b(i,j)|; matrices must have equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Solves a x = b by LU elimination with partial pivoting. b may carry
/// several right-hand sides as columns. Throws if a pivot falls below
/// 1e-12 * max|a| (singular to tolerance).
Matrix solve(const Matrix& a, const Matrix& b);
CVec solve(const Matrix& a, std::span<const Cx> b);

struct SymmetricEigen {
    Matrix u;                        // orthogonal, columns are eigenvectors
    std::vector<double> eigenvalues; // ascending
};

/// Cyclic Jacobi iteration for a real symmetric matrix. Eigenvalues come
/// back ascending; each eigenvector column has its first significant
/// component made positive. Off-diagonal Frobenius norm must drop below
/// 1e-12 * ||s||_F within 100 sweeps.
SymmetricEigen eig_symmetric(const Matrix& s);

struct CirculantEigen {
    Matrix u;         // unitary DFT basis, u(j,k) = exp(2*pi*i*j*k/n)/sqrt(n)
    CVec eigenvalues; // in frequency order k = 0..n-1
};

/// Closed-form eigendecomposition of the circulant matrix whose first row
/// is given: eigenvalue k is sum_r row[r] * exp(2*pi*i*r*k/n).
CirculantEigen eig_circulant(std::span<const Cx> first_row);

// structure probes shared by the graph and recovery modules
double max_asymmetry(const Matrix& m);
double max_imag(const Matrix& m);
bool is_real_symmetric(const Matrix& m, double tol);
bool is_circulant(const Matrix& m, double tol);

/// Random real orthogonal matrix (Gram-Schmidt on gaussian columns).
Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng);

// small vector helpers; dot is conjugate-linear in its first argument
Cx dot(std::span<const Cx> a, std::span<const Cx> b);
double l2_norm(std::span<const Cx> v);
double max_abs(std::span<const Cx> v);
double max_abs_diff(std::span<const Cx> a, std::span<const Cx> b);
CVec hadamard(std::span<const Cx> a, std::span<const Cx> b);

} // namespace convkit
