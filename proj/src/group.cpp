#include "convkit/group.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace convkit {

namespace {

void require_valid(const FiniteAbelianGroup& g, const GroupElement& a, const char* what) {
    if (a.coords.size() != g.rank()) {
        throw std::invalid_argument(std::string(what) + ": element has " +
                                    std::to_string(a.coords.size()) + " coordinates, group has " +
                                    std::to_string(g.rank()));
    }
    for (std::size_t j = 0; j < g.rank(); ++j) {
        if (a.coords[j] < 0 || a.coords[j] >= g.orders()[j]) {
            throw std::invalid_argument(std::string(what) + ": coordinate " + std::to_string(j) +
                                        " out of range");
        }
    }
}

} // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<long> orders) : orders_(std::move(orders)) {
    for (long n : orders_) {
        if (n < 1) throw std::invalid_argument("FiniteAbelianGroup: orders must be >= 1");
        size_ *= static_cast<std::size_t>(n);
    }
}

GroupElement FiniteAbelianGroup::zero() const {
    return GroupElement{std::vector<long>(rank(), 0)};
}

GroupElement FiniteAbelianGroup::reduce(std::vector<long> coords) const {
    if (coords.size() != rank()) {
        throw std::invalid_argument("reduce: coordinate arity mismatch");
    }
    for (std::size_t j = 0; j < rank(); ++j) {
        coords[j] %= orders_[j];
        if (coords[j] < 0) coords[j] += orders_[j];
    }
    return GroupElement{std::move(coords)};
}

std::size_t FiniteAbelianGroup::index_of(const GroupElement& a) const {
    require_valid(*this, a, "index_of");
    std::size_t idx = 0;
    for (std::size_t j = 0; j < rank(); ++j) {
        idx = idx * static_cast<std::size_t>(orders_[j]) + static_cast<std::size_t>(a.coords[j]);
    }
    return idx;
}

GroupElement FiniteAbelianGroup::element_at(std::size_t index) const {
    if (index >= size_) throw std::invalid_argument("element_at: index out of range");
    std::vector<long> coords(rank());
    for (std::size_t j = rank(); j-- > 0;) {
        coords[j] = static_cast<long>(index % static_cast<std::size_t>(orders_[j]));
        index /= static_cast<std::size_t>(orders_[j]);
    }
    return GroupElement{std::move(coords)};
}

GroupElement add(const FiniteAbelianGroup& g, const GroupElement& a, const GroupElement& b) {
    require_valid(g, a, "add");
    require_valid(g, b, "add");
    std::vector<long> coords(g.rank());
    for (std::size_t j = 0; j < g.rank(); ++j) {
        coords[j] = (a.coords[j] + b.coords[j]) % g.orders()[j];
    }
    return GroupElement{std::move(coords)};
}

GroupElement negate(const FiniteAbelianGroup& g, const GroupElement& a) {
    require_valid(g, a, "negate");
    std::vector<long> coords(g.rank());
    for (std::size_t j = 0; j < g.rank(); ++j) {
        coords[j] = a.coords[j] == 0 ? 0 : g.orders()[j] - a.coords[j];
    }
    return GroupElement{std::move(coords)};
}

GroupElement subtract(const FiniteAbelianGroup& g, const GroupElement& a, const GroupElement& b) {
    return add(g, a, negate(g, b));
}

Character::Character(FiniteAbelianGroup group, GroupElement freq)
    : group_(std::move(group)), freq_(std::move(freq)) {
    require_valid(group_, freq_, "Character");
}

Cx Character::operator()(const GroupElement& a) const {
    require_valid(group_, a, "Character()");
    // phase accumulated as reduced fractions a_j * f_j mod n_j over n_j
    double turns = 0.0;
    for (std::size_t j = 0; j < group_.rank(); ++j) {
        const long n = group_.orders()[j];
        const long m = (a.coords[j] * freq_.coords[j]) % n;
        turns += static_cast<double>(m) / static_cast<double>(n);
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

std::vector<Character> characters(const FiniteAbelianGroup& g) {
    std::vector<Character> out;
    out.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        out.emplace_back(g, g.element_at(i));
    }
    return out;
}

GroupSignal::GroupSignal(FiniteAbelianGroup g, CVec v) : group(std::move(g)), values(std::move(v)) {
    if (values.size() != group.size()) {
        throw std::invalid_argument("GroupSignal: " + std::to_string(values.size()) +
                                    " values for a group of size " + std::to_string(group.size()));
    }
    for (Cx x : values) {
        if (!is_finite(x)) throw std::invalid_argument("GroupSignal: non-finite value");
    }
}

GroupSignal delta_signal(const FiniteAbelianGroup& g, const GroupElement& at) {
    CVec v(g.size(), Cx(0.0, 0.0));
    v[g.index_of(at)] = 1.0;
    return GroupSignal(g, std::move(v));
}

GroupSignal constant_signal(const FiniteAbelianGroup& g, Cx value) {
    return GroupSignal(g, CVec(g.size(), value));
}

GroupSignal fourier(const GroupSignal& f) {
    const auto& g = f.group;
    const auto chars = characters(g);
    CVec out(g.size(), Cx(0.0, 0.0));
    for (std::size_t w = 0; w < g.size(); ++w) {
        Cx acc = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            acc += f.values[i] * std::conj(chars[w](g.element_at(i)));
        }
        out[w] = acc;
    }
    return GroupSignal(g, std::move(out));
}

GroupSignal inverse_fourier(const GroupSignal& fhat) {
    const auto& g = fhat.group;
    const auto chars = characters(g);
    const double inv_size = 1.0 / static_cast<double>(g.size());
    CVec out(g.size(), Cx(0.0, 0.0));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const GroupElement a = g.element_at(i);
        Cx acc = 0.0;
        for (std::size_t w = 0; w < g.size(); ++w) {
            acc += fhat.values[w] * chars[w](a);
        }
        out[i] = inv_size * acc;
    }
    return GroupSignal(g, std::move(out));
}

GroupSignal convolve(const GroupSignal& f, const GroupSignal& h) {
    if (f.group != h.group) {
        throw std::invalid_argument("convolve: signals live on different groups");
    }
    const auto& g = f.group;
    const std::size_t n = g.size();
    CVec out(n, Cx(0.0, 0.0));
    for (std::size_t ia = 0; ia < n; ++ia) {
        const GroupElement a = g.element_at(ia);
        Cx acc = 0.0;
        for (std::size_t ib = 0; ib < n; ++ib) {
            const GroupElement b = g.element_at(ib);
            acc += h.values[g.index_of(subtract(g, a, b))] * f.values[ib];
        }
        out[ia] = acc;
    }
    return GroupSignal(g, std::move(out));
}

double l1_norm(const GroupSignal& f) {
    double s = 0.0;
    for (Cx v : f.values) s += std::abs(v);
    return s;
}

} // namespace convkit
