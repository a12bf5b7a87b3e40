#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace convkit {

/// Dense integer matrix; the lattice algebra is exact, no floating point.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<long long> v;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0) {}
    static IntMatrix identity(std::size_t n);

    long long& operator()(std::size_t r, std::size_t c) { return v[r * cols + c]; }
    long long operator()(std::size_t r, std::size_t c) const { return v[r * cols + c]; }

    bool operator==(const IntMatrix&) const = default;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Finite meet-semilattice. Construction validates the order axioms and the
/// existence of all pairwise meets, then renumbers the elements along a
/// deterministic linear extension (smallest original index first), so the
/// zeta matrix below is always lower unitriangular. original_label maps the
/// canonical index back to the caller's numbering.
class MeetSemilattice {
public:
    static MeetSemilattice from_relation(const std::vector<std::vector<bool>>& leq);

    std::size_t size() const { return n_; }
    bool leq(std::size_t a, std::size_t b) const { return leq_[a * n_ + b]; }
    std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * n_ + b]; }
    std::size_t original_label(std::size_t canonical) const { return labels_[canonical]; }

private:
    MeetSemilattice() = default;

    std::size_t n_ = 0;
    std::vector<bool> leq_;          // canonical order
    std::vector<std::size_t> meet_;  // canonical order
    std::vector<std::size_t> labels_;
};

using LatticeSignal = std::vector<double>;

/// Shift by a: 0/1 matrix sending the value at b to the one at b meet a.
IntMatrix shift_operator(const MeetSemilattice& lat, std::size_t a);

struct CommutationReport {
    bool ok = true;
    std::vector<std::pair<std::size_t, std::size_t>> violations;
};

/// Exhaustive exact check that T_a T_a' = T_(a meet a') for all pairs.
CommutationReport check_commutation(const MeetSemilattice& lat);

struct ShiftDiagonalization {
    IntMatrix zeta;    // zeta(b, c) = 1 iff c <= b
    IntMatrix moebius; // exact integer inverse of zeta
    std::vector<std::vector<long long>> responses; // responses[a][c] = 1 iff c <= a
    std::size_t identities_checked = 0; // one conjugation identity per element
    std::size_t identities_passed = 0;
    bool identities_hold = false; // all identities plus zeta * moebius = I
};

/// Common eigenstructure of all shifts: columns of zeta are the shared
/// eigenvectors and the response of T_a on slot c is the indicator of c <= a.
ShiftDiagonalization diagonalize_shifts(const MeetSemilattice& lat);

/// Action of sum_a h_a T_a on s.
LatticeSignal lattice_convolve(const MeetSemilattice& lat, const LatticeSignal& h,
                               const LatticeSignal& s);

// Transform pair in the shared eigenbasis; applying moebius is the forward
// direction by convention, zeta the inverse.
LatticeSignal lattice_fourier(const MeetSemilattice& lat, const LatticeSignal& s);
LatticeSignal lattice_inverse_fourier(const MeetSemilattice& lat, const LatticeSignal& shat);

} // namespace convkit
