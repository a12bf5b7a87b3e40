#pragma once

#include "convkit/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace convkit {

struct Edge {
    std::size_t src = 0;
    std::size_t dst = 0;
    double weight = 1.0;
};

/// Weighted graph with validated edge list. Undirected graphs store each
/// pair once with src <= dst.
class Graph {
public:
    Graph(std::size_t n, std::vector<Edge> edges, bool directed);

    std::size_t size() const { return n_; }
    bool directed() const { return directed_; }
    const std::vector<Edge>& edges() const { return edges_; }

    Matrix adjacency() const;
    /// Largest number of distinct neighbors over all nodes (self excluded).
    std::size_t max_neighbor_count() const;

    static Graph directed_cycle(std::size_t n);
    static Graph path(std::size_t n);

private:
    std::size_t n_ = 0;
    bool directed_ = false;
    std::vector<Edge> edges_;
};

enum class ShiftKind { adjacency, laplacian, normalized_laplacian_selfloop, custom };

std::string to_string(ShiftKind kind);
ShiftKind parse_shift_kind(const std::string& name);

struct ShiftDecomposition {
    Matrix u;
    CVec eigenvalues;
};

/// A graph together with a frozen shift operator S = U diag(lambda) U^-1.
/// The eigenbasis is fixed at build time; every convolution-flavored
/// operation below is defined relative to this U.
class GraphShiftSystem {
public:
    const Graph& graph() const { return graph_; }
    ShiftKind kind() const { return kind_; }
    std::size_t size() const { return shift_.rows(); }
    const Matrix& shift() const { return shift_; }
    const Matrix& basis() const { return basis_; }
    const CVec& eigenvalues() const { return eigenvalues_; }

    friend GraphShiftSystem build_shift(Graph graph, ShiftKind kind,
                                        std::optional<Matrix> custom_shift,
                                        std::optional<ShiftDecomposition> decomposition);

private:
    GraphShiftSystem(Graph g, ShiftKind k, Matrix s, Matrix u, CVec lam);

    Graph graph_;
    ShiftKind kind_;
    Matrix shift_;
    Matrix basis_;
    CVec eigenvalues_;
};

/// Assembles the shift operator and its eigendecomposition. Laplacian kinds
/// require an undirected graph. Without a supplied decomposition the shift
/// must be circulant or real symmetric; a supplied decomposition is checked
/// against the reconstruction and invertibility invariants.
GraphShiftSystem build_shift(Graph graph, ShiftKind kind,
                             std::optional<Matrix> custom_shift = {},
                             std::optional<ShiftDecomposition> decomposition = {});

/// Convenience wrapper: builds a system for a bare matrix, deriving the
/// support graph from its nonzero off-diagonal entries.
GraphShiftSystem system_from_matrix(const Matrix& s,
                                    std::optional<ShiftDecomposition> decomposition = {});

using GraphSignal = CVec;

GraphSignal gft(const GraphShiftSystem& sys, std::span<const Cx> x);
GraphSignal igft(const GraphShiftSystem& sys, std::span<const Cx> xhat);

/// Spectral convolution z = U(U^-1 x . U^-1 y), Hadamard in frequency.
GraphSignal spectral_convolve(const GraphShiftSystem& sys, std::span<const Cx> x,
                              std::span<const Cx> y);

/// Dense matrix of the filter y -> x * y, i.e. U diag(U^-1 x) U^-1.
Matrix filter_matrix(const GraphShiftSystem& sys, std::span<const Cx> x);

struct PolynomialFilter {
    CVec coeffs; // lowest degree first

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    Cx eval(Cx lambda) const;
};

/// P(S) evaluated densely by Horner's rule.
Matrix polynomial_matrix(const Matrix& s, const PolynomialFilter& p);

/// Fits the unique polynomial of degree <= n-1 with P(lambda_i) = (U^-1 x)_i.
/// Requires pairwise-distinct eigenvalues; the fitted filter must reproduce
/// filter_matrix(x) to 1e-6 in max norm or the fit is rejected.
PolynomialFilter fit_polynomial(const GraphShiftSystem& sys, std::span<const Cx> x);

struct ShiftInvariance {
    bool invariant = false;
    double commutator_norm = 0.0;
    std::optional<PolynomialFilter> certificate; // present when invariant and spectrum simple
    double certificate_residual = 0.0;           // ||P(S) - m||_max for the certificate
};

/// Decides ||MS - SM||_max <= tol and certifies a positive answer with the
/// polynomial read off diag(U^-1 M U) when the spectrum is simple.
ShiftInvariance is_shift_invariant(const GraphShiftSystem& sys, const Matrix& m, double tol);

/// One graph convolution layer P(S) X W; P(S) X goes through Horner on
/// matrix-times-feature products, P(S) itself is never formed.
Matrix gcn_layer(const GraphShiftSystem& sys, const Matrix& x, const PolynomialFilter& p,
                 const Matrix& w);

struct DofReport {
    std::size_t degree = 0;
    std::size_t polynomial_params = 0;  // degree + 1
    std::size_t stencil3x3_params = 9;  // free 3x3 kernel on the 2D grid
    std::size_t max_node_degree = 0;    // in this system's graph
    std::size_t free_kernel_params = 0; // max_node_degree + 1
};

DofReport dof_report(const GraphShiftSystem& sys, std::size_t degree);

} // namespace convkit
