#include "convkit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace convkit {

Graph::Graph(std::size_t n, std::vector<Edge> edges, bool directed)
    : n_(n), directed_(directed), edges_(std::move(edges)) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto& e : edges_) {
        if (e.src >= n_ || e.dst >= n_) {
            throw std::invalid_argument("Graph: edge endpoint out of range");
        }
        if (!std::isfinite(e.weight)) {
            throw std::invalid_argument("Graph: non-finite edge weight");
        }
        if (!directed_ && e.src > e.dst) std::swap(e.src, e.dst);
        if (!seen.insert({e.src, e.dst}).second) {
            throw std::invalid_argument("Graph: duplicate edge (" + std::to_string(e.src) + "," +
                                        std::to_string(e.dst) + ")");
        }
    }
}

Matrix Graph::adjacency() const {
    Matrix a(n_, n_);
    for (const auto& e : edges_) {
        a(e.src, e.dst) = e.weight;
        if (!directed_ && e.src != e.dst) a(e.dst, e.src) = e.weight;
    }
    return a;
}

std::size_t Graph::max_neighbor_count() const {
    std::vector<std::set<std::size_t>> nbrs(n_);
    for (const auto& e : edges_) {
        if (e.src != e.dst) {
            nbrs[e.src].insert(e.dst);
            nbrs[e.dst].insert(e.src);
        }
    }
    std::size_t best = 0;
    for (const auto& s : nbrs) best = std::max(best, s.size());
    return best;
}

Graph Graph::directed_cycle(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
    return Graph(n, std::move(edges), true);
}

Graph Graph::path(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
    return Graph(n, std::move(edges), false);
}

std::string to_string(ShiftKind kind) {
    switch (kind) {
        case ShiftKind::adjacency: return "adjacency";
        case ShiftKind::laplacian: return "laplacian";
        case ShiftKind::normalized_laplacian_selfloop: return "normalized_laplacian_selfloop";
        case ShiftKind::custom: return "custom";
    }
    return "unknown";
}

ShiftKind parse_shift_kind(const std::string& name) {
    if (name == "adjacency") return ShiftKind::adjacency;
    if (name == "laplacian") return ShiftKind::laplacian;
    if (name == "normalized_laplacian_selfloop") return ShiftKind::normalized_laplacian_selfloop;
    if (name == "custom") return ShiftKind::custom;
    throw std::invalid_argument("unknown shift kind: " + name);
}

namespace {

Matrix assemble_shift(const Graph& graph, ShiftKind kind) {
    const std::size_t n = graph.size();
    const Matrix a = graph.adjacency();
    switch (kind) {
        case ShiftKind::adjacency:
            return a;
        case ShiftKind::laplacian: {
            if (graph.directed()) {
                throw std::invalid_argument("build_shift: Laplacian needs an undirected graph");
            }
            Matrix l = Cx(-1.0, 0.0) * a;
            for (std::size_t i = 0; i < n; ++i) {
                Cx deg = 0.0;
                for (std::size_t j = 0; j < n; ++j) deg += a(i, j);
                l(i, i) += deg;
            }
            return l;
        }
        case ShiftKind::normalized_laplacian_selfloop: {
            if (graph.directed()) {
                throw std::invalid_argument("build_shift: Laplacian needs an undirected graph");
            }
            Matrix at = a + Matrix::identity(n); // adjacency with self-loops
            std::vector<double> dinv(n);
            for (std::size_t i = 0; i < n; ++i) {
                double deg = 0.0;
                for (std::size_t j = 0; j < n; ++j) deg += at(i, j).real();
                if (deg <= 0.0) {
                    throw std::invalid_argument(
                        "build_shift: nonpositive degree in normalized Laplacian");
                }
                dinv[i] = 1.0 / std::sqrt(deg);
            }
            Matrix s = Matrix::identity(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) s(i, j) -= dinv[i] * at(i, j) * dinv[j];
            return s;
        }
        case ShiftKind::custom:
            throw std::invalid_argument("build_shift: custom kind needs a shift matrix");
    }
    throw std::invalid_argument("build_shift: bad shift kind");
}

ShiftDecomposition decompose(const Matrix& s) {
    const double tol = 1e-12 * std::max(1.0, s.max_abs());
    // circulant takes precedence so cyclic structure always lands on the
    // canonical DFT basis, matching the group-side transform
    if (is_circulant(s, tol)) {
        auto eig = eig_circulant(s.entries().subspan(0, s.cols()));
        return {std::move(eig.u), std::move(eig.eigenvalues)};
    }
    if (is_real_symmetric(s, tol)) {
        auto eig = eig_symmetric(s);
        CVec lam(eig.eigenvalues.begin(), eig.eigenvalues.end());
        return {std::move(eig.u), std::move(lam)};
    }
    throw std::invalid_argument(
        "build_shift: shift is neither circulant nor real symmetric; supply a decomposition");
}

void validate_decomposition(const Matrix& s, const ShiftDecomposition& d) {
    const std::size_t n = s.rows();
    if (d.u.rows() != n || d.u.cols() != n || d.eigenvalues.size() != n) {
        throw std::invalid_argument("build_shift: decomposition shape mismatch");
    }
    const Matrix lhs = s * d.u;
    const Matrix rhs = d.u * Matrix::diagonal(d.eigenvalues);
    const double bound = 1e-8 * (1.0 + s.max_abs());
    const double err = max_abs_diff(lhs, rhs);
    if (err > bound) {
        throw std::invalid_argument("build_shift: decomposition fails reconstruction, error " +
                                    std::to_string(err));
    }
    try {
        solve(d.u, CVec(n, Cx(0.0, 0.0))); // factorization probe
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("build_shift: eigenvector matrix is singular to tolerance");
    }
}

} // namespace

GraphShiftSystem::GraphShiftSystem(Graph g, ShiftKind k, Matrix s, Matrix u, CVec lam)
    : graph_(std::move(g)), kind_(k), shift_(std::move(s)), basis_(std::move(u)),
      eigenvalues_(std::move(lam)) {}

GraphShiftSystem build_shift(Graph graph, ShiftKind kind, std::optional<Matrix> custom_shift,
                             std::optional<ShiftDecomposition> decomposition) {
    Matrix s;
    if (kind == ShiftKind::custom) {
        if (!custom_shift) {
            throw std::invalid_argument("build_shift: custom kind needs a shift matrix");
        }
        s = std::move(*custom_shift);
        if (!s.square() || s.rows() != graph.size()) {
            throw std::invalid_argument("build_shift: custom shift must be n x n");
        }
    } else {
        if (custom_shift) {
            throw std::invalid_argument("build_shift: shift matrix only allowed for custom kind");
        }
        s = assemble_shift(graph, kind);
    }

    ShiftDecomposition d = decomposition ? std::move(*decomposition) : decompose(s);
    validate_decomposition(s, d);
    return GraphShiftSystem(std::move(graph), kind, std::move(s), std::move(d.u),
                            std::move(d.eigenvalues));
}

GraphShiftSystem system_from_matrix(const Matrix& s, std::optional<ShiftDecomposition> decomposition) {
    if (!s.square()) throw std::invalid_argument("system_from_matrix: matrix must be square");
    const std::size_t n = s.rows();
    const bool symmetric = max_asymmetry(s) <= 1e-12 * std::max(1.0, s.max_abs());
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = symmetric ? i : 0; j < n; ++j) {
            if (i == j || s(i, j) == Cx(0.0, 0.0)) continue;
            edges.push_back({i, j, std::abs(s(i, j))});
        }
    }
    Graph support(n, std::move(edges), !symmetric);
    return build_shift(std::move(support), ShiftKind::custom, s, std::move(decomposition));
}

GraphSignal gft(const GraphShiftSystem& sys, std::span<const Cx> x) {
    if (x.size() != sys.size()) throw std::invalid_argument("gft: signal length mismatch");
    return solve(sys.basis(), x);
}

GraphSignal igft(const GraphShiftSystem& sys, std::span<const Cx> xhat) {
    if (xhat.size() != sys.size()) throw std::invalid_argument("igft: signal length mismatch");
    return sys.basis() * xhat;
}

GraphSignal spectral_convolve(const GraphShiftSystem& sys, std::span<const Cx> x,
                              std::span<const Cx> y) {
    return igft(sys, hadamard(gft(sys, x), gft(sys, y)));
}

Matrix filter_matrix(const GraphShiftSystem& sys, std::span<const Cx> x) {
    const CVec xhat = gft(sys, x);
    const Matrix scaled = sys.basis() * Matrix::diagonal(xhat);
    // M U = scaled  =>  U^T M^T = scaled^T
    return solve(sys.basis().transpose(), scaled.transpose()).transpose();
}

Cx PolynomialFilter::eval(Cx lambda) const {
    Cx acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * lambda + coeffs[k];
    return acc;
}

Matrix polynomial_matrix(const Matrix& s, const PolynomialFilter& p) {
    const std::size_t n = s.rows();
    Matrix acc(n, n);
    for (std::size_t k = p.coeffs.size(); k-- > 0;) {
        acc = s * acc;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += p.coeffs[k];
    }
    return acc;
}

namespace {

// pairwise-distinct test: smallest gap must exceed 1e-8 of the spectral
// spread, and an all-equal spectrum counts as repeated
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

CVec trim_trailing(CVec coeffs) {
    const double tol = 1e-9 * (1.0 + max_abs(coeffs));
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= tol) coeffs.pop_back();
    return coeffs;
}

// Vandermonde solve for P(lambda_i) = response_i with one refinement pass
CVec fit_on_spectrum(const CVec& lam, const CVec& response) {
    const std::size_t n = lam.size();
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Cx p = 1.0;
        for (std::size_t d = 0; d < n; ++d) {
            v(i, d) = p;
            p *= lam[i];
        }
    }
    CVec c = solve(v, response);
    CVec residual(n);
    for (std::size_t i = 0; i < n; ++i) {
        Cx acc = 0.0;
        for (std::size_t d = n; d-- > 0;) acc = acc * lam[i] + c[d];
        residual[i] = acc - response[i];
    }
    const CVec corr = solve(v, residual);
    for (std::size_t d = 0; d < n; ++d) c[d] -= corr[d];
    return c;
}

} // namespace

PolynomialFilter fit_polynomial(const GraphShiftSystem& sys, std::span<const Cx> x) {
    if (!spectrum_simple(sys.eigenvalues())) {
        throw std::invalid_argument("fit_polynomial: shift has repeated eigenvalues");
    }
    PolynomialFilter p{trim_trailing(fit_on_spectrum(sys.eigenvalues(), gft(sys, x)))};
    const double residual = max_abs_diff(polynomial_matrix(sys.shift(), p), filter_matrix(sys, x));
    if (residual > 1e-6) {
        throw std::runtime_error("fit_polynomial: Vandermonde system too ill-conditioned, "
                                 "achieved residual " + std::to_string(residual));
    }
    return p;
}

ShiftInvariance is_shift_invariant(const GraphShiftSystem& sys, const Matrix& m, double tol) {
    if (!m.square() || m.rows() != sys.size()) {
        throw std::invalid_argument("is_shift_invariant: matrix must be n x n");
    }
    ShiftInvariance out;
    out.commutator_norm = max_abs_diff(m * sys.shift(), sys.shift() * m);
    out.invariant = out.commutator_norm <= tol;
    if (out.invariant && spectrum_simple(sys.eigenvalues())) {
        // responses read off the diagonal of U^-1 M U
        const Matrix conj = solve(sys.basis(), m * sys.basis());
        CVec response(sys.size());
        for (std::size_t i = 0; i < sys.size(); ++i) response[i] = conj(i, i);
        PolynomialFilter cert{trim_trailing(fit_on_spectrum(sys.eigenvalues(), response))};
        out.certificate_residual = max_abs_diff(polynomial_matrix(sys.shift(), cert), m);
        out.certificate = std::move(cert);
    }
    return out;
}

Matrix gcn_layer(const GraphShiftSystem& sys, const Matrix& x, const PolynomialFilter& p,
                 const Matrix& w) {
    const std::size_t n = sys.size();
    if (x.rows() != n) throw std::invalid_argument("gcn_layer: feature matrix must have n rows");
    if (w.rows() != x.cols()) throw std::invalid_argument("gcn_layer: weight shape mismatch");
    Matrix acc(n, x.cols());
    for (std::size_t k = p.coeffs.size(); k-- > 0;) {
        acc = sys.shift() * acc;
        if (p.coeffs[k] != Cx(0.0, 0.0)) acc = acc + p.coeffs[k] * x;
    }
    return acc * w;
}

DofReport dof_report(const GraphShiftSystem& sys, std::size_t degree) {
    DofReport r;
    r.degree = degree;
    r.polynomial_params = degree + 1;
    r.stencil3x3_params = 9;
    r.max_node_degree = sys.graph().max_neighbor_count();
    r.free_kernel_params = r.max_node_degree + 1;
    return r;
}

} // namespace convkit
