#pragma once

#include "convkit/numeric.hpp"

#include <vector>

namespace convkit {

/// Element of a product of cyclic groups, coordinates reduced into [0, n_j).
struct GroupElement {
    std::vector<long> coords;

    bool operator==(const GroupElement&) const = default;
};

/// A finite abelian group presented as Z/n1 + ... + Z/nk. Elements are
/// enumerated lexicographically by coordinate, which fixes the layout of
/// every signal on the group.
class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<long> orders);

    const std::vector<long>& orders() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }
    std::size_t size() const { return size_; }

    GroupElement zero() const;
    GroupElement reduce(std::vector<long> coords) const;

    std::size_t index_of(const GroupElement& a) const;
    GroupElement element_at(std::size_t index) const;

    bool operator==(const FiniteAbelianGroup& other) const { return orders_ == other.orders_; }
    bool operator!=(const FiniteAbelianGroup& other) const { return !(*this == other); }

private:
    std::vector<long> orders_;
    std::size_t size_ = 1;
};

GroupElement add(const FiniteAbelianGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement negate(const FiniteAbelianGroup& g, const GroupElement& a);
GroupElement subtract(const FiniteAbelianGroup& g, const GroupElement& a, const GroupElement& b);

/// Character indexed by a frequency element of the (self-dual) group:
/// chi(a) = exp(2*pi*i * sum_j a_j * freq_j / n_j), always of modulus 1.
class Character {
public:
    Character(FiniteAbelianGroup group, GroupElement freq);

    const GroupElement& freq() const { return freq_; }
    Cx operator()(const GroupElement& a) const;

private:
    FiniteAbelianGroup group_;
    GroupElement freq_;
};

/// All |A| characters, enumerated lexicographically by frequency.
std::vector<Character> characters(const FiniteAbelianGroup& g);

/// Complex signal on a group, one value per element in lexicographic order.
struct GroupSignal {
    FiniteAbelianGroup group;
    CVec values;

    GroupSignal(FiniteAbelianGroup g, CVec v);
};

GroupSignal delta_signal(const FiniteAbelianGroup& g, const GroupElement& at);
GroupSignal constant_signal(const FiniteAbelianGroup& g, Cx value);

/// Forward transform fhat(chi) = sum_a f(a) * conj(chi(a)) under counting
/// measure; the result lives on the dual, indexed like the group itself.
GroupSignal fourier(const GroupSignal& f);

/// Inverse transform f(a) = (1/|A|) * sum_chi fhat(chi) * chi(a).
GroupSignal inverse_fourier(const GroupSignal& fhat);

/// Convolution (f*h)(a) = sum_b h(a-b) f(b); integer-exact on integer input.
GroupSignal convolve(const GroupSignal& f, const GroupSignal& h);

double l1_norm(const GroupSignal& f);

} // namespace convkit
