#include "convkit/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace convkit {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("IntMatrix: inner dimension mismatch");
    IntMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const long long aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

MeetSemilattice MeetSemilattice::from_relation(const std::vector<std::vector<bool>>& leq) {
    const std::size_t n = leq.size();
    for (const auto& row : leq) {
        if (row.size() != n) throw std::invalid_argument("lattice: relation must be square");
    }

    // order axioms, with the witnessing pair or triple in the message
    for (std::size_t a = 0; a < n; ++a) {
        if (!leq[a][a]) {
            throw std::invalid_argument("lattice: reflexivity fails at element " +
                                        std::to_string(a));
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b && leq[a][b] && leq[b][a]) {
                throw std::invalid_argument("lattice: antisymmetry fails on pair (" +
                                            std::to_string(a) + "," + std::to_string(b) + ")");
            }
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!leq[a][b]) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (leq[b][c] && !leq[a][c]) {
                    throw std::invalid_argument("lattice: transitivity fails on triple (" +
                                                std::to_string(a) + "," + std::to_string(b) + "," +
                                                std::to_string(c) + ")");
                }
            }
        }

    // every pair needs a greatest lower bound
    std::vector<std::size_t> meet_orig(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<std::size_t> lower;
            for (std::size_t c = 0; c < n; ++c) {
                if (leq[c][a] && leq[c][b]) lower.push_back(c);
            }
            if (lower.empty()) {
                throw std::invalid_argument("lattice: no common lower bound for pair (" +
                                            std::to_string(a) + "," + std::to_string(b) + ")");
            }
            std::size_t greatest = n;
            for (std::size_t g : lower) {
                bool dominates = true;
                for (std::size_t c : lower) {
                    if (!leq[c][g]) { dominates = false; break; }
                }
                if (dominates) { greatest = g; break; }
            }
            if (greatest == n) {
                throw std::invalid_argument("lattice: no greatest lower bound for pair (" +
                                            std::to_string(a) + "," + std::to_string(b) + ")");
            }
            meet_orig[a * n + b] = greatest;
        }
    }

    // deterministic linear extension: repeatedly take the smallest original
    // index whose strict predecessors are all placed
    std::vector<std::size_t> order;
    std::vector<bool> placed(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t a = 0; a < n && pick == n; ++a) {
            if (placed[a]) continue;
            bool ready = true;
            for (std::size_t c = 0; c < n; ++c) {
                if (c != a && leq[c][a] && !placed[c]) { ready = false; break; }
            }
            if (ready) pick = a;
        }
        // a pick always exists once the axioms hold
        if (pick == n) throw std::logic_error("lattice: linear extension failed");
        placed[pick] = true;
        order.push_back(pick);
    }

    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;

    MeetSemilattice lat;
    lat.n_ = n;
    lat.labels_ = order;
    lat.leq_.assign(n * n, false);
    lat.meet_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            lat.leq_[pos[a] * n + pos[b]] = leq[a][b];
            lat.meet_[pos[a] * n + pos[b]] = pos[meet_orig[a * n + b]];
        }
    return lat;
}

IntMatrix shift_operator(const MeetSemilattice& lat, std::size_t a) {
    const std::size_t n = lat.size();
    if (a >= n) throw std::invalid_argument("shift_operator: element index out of range");
    IntMatrix t(n, n);
    for (std::size_t b = 0; b < n; ++b) t(b, lat.meet(b, a)) = 1;
    return t;
}

CommutationReport check_commutation(const MeetSemilattice& lat) {
    const std::size_t n = lat.size();
    CommutationReport report;
    std::vector<IntMatrix> shifts;
    shifts.reserve(n);
    for (std::size_t a = 0; a < n; ++a) shifts.push_back(shift_operator(lat, a));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (!(shifts[a] * shifts[b] == shifts[lat.meet(a, b)])) {
                report.ok = false;
                report.violations.emplace_back(a, b);
            }
        }
    }
    return report;
}

ShiftDiagonalization diagonalize_shifts(const MeetSemilattice& lat) {
    const std::size_t n = lat.size();
    ShiftDiagonalization out;
    out.zeta = IntMatrix(n, n);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) out.zeta(b, c) = lat.leq(c, b) ? 1 : 0;

    // invert the unitriangular zeta by forward substitution, exactly
    out.moebius = IntMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            long long acc = i == j ? 1 : 0;
            for (std::size_t k = 0; k < i; ++k) acc -= out.zeta(i, k) * out.moebius(k, j);
            out.moebius(i, j) = acc;
        }
    }

    out.responses.assign(n, std::vector<long long>(n, 0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) out.responses[a][c] = lat.leq(c, a) ? 1 : 0;

    out.identities_checked = n;
    for (std::size_t a = 0; a < n; ++a) {
        IntMatrix diag(n, n);
        for (std::size_t c = 0; c < n; ++c) diag(c, c) = out.responses[a][c];
        if (out.moebius * shift_operator(lat, a) * out.zeta == diag) {
            ++out.identities_passed;
        }
    }
    out.identities_hold = out.identities_passed == out.identities_checked &&
                          out.moebius * out.zeta == IntMatrix::identity(n);
    return out;
}

LatticeSignal lattice_convolve(const MeetSemilattice& lat, const LatticeSignal& h,
                               const LatticeSignal& s) {
    const std::size_t n = lat.size();
    if (h.size() != n || s.size() != n) {
        throw std::invalid_argument("lattice_convolve: signal length mismatch");
    }
    LatticeSignal out(n, 0.0);
    for (std::size_t b = 0; b < n; ++b) {
        double acc = 0.0;
        for (std::size_t a = 0; a < n; ++a) acc += h[a] * s[lat.meet(b, a)];
        out[b] = acc;
    }
    return out;
}

namespace {

LatticeSignal apply_int_matrix(const IntMatrix& m, const LatticeSignal& s) {
    LatticeSignal out(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (m(i, j) != 0) acc += double(m(i, j)) * s[j];
        }
        out[i] = acc;
    }
    return out;
}

} // namespace

LatticeSignal lattice_fourier(const MeetSemilattice& lat, const LatticeSignal& s) {
    if (s.size() != lat.size()) throw std::invalid_argument("lattice_fourier: length mismatch");
    return apply_int_matrix(diagonalize_shifts(lat).moebius, s);
}

LatticeSignal lattice_inverse_fourier(const MeetSemilattice& lat, const LatticeSignal& shat) {
    if (shat.size() != lat.size()) {
        throw std::invalid_argument("lattice_inverse_fourier: length mismatch");
    }
    return apply_int_matrix(diagonalize_shifts(lat).zeta, shat);
}

} // namespace convkit
