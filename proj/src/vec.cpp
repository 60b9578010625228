#include "crowdcov/vec.hpp"

#include <algorithm>

namespace crowdcov {

std::string to_string(OmegaCount c) {
    return c.is_omega() ? "omega" : std::to_string(c.value());
}

SparseVec SparseVec::unit(PlaceId p, Count k) {
    SparseVec v;
    if (k > 0) v.entries_.emplace_back(p, k);
    return v;
}

SparseVec SparseVec::from_dense(const std::vector<Count>& d) {
    SparseVec v;
    for (std::size_t p = 0; p < d.size(); ++p)
        if (d[p] > 0) v.entries_.emplace_back(static_cast<PlaceId>(p), d[p]);
    return v;
}

std::vector<Count> SparseVec::to_dense(std::size_t size) const {
    std::vector<Count> d(size, 0);
    for (const auto& [p, k] : entries_) d.at(p) = k;
    return d;
}

Count SparseVec::get(PlaceId p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const auto& e, PlaceId q) { return e.first < q; });
    return (it != entries_.end() && it->first == p) ? it->second : 0;
}

void SparseVec::add(PlaceId p, Count k) {
    if (k == 0) return;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const auto& e, PlaceId q) { return e.first < q; });
    if (it != entries_.end() && it->first == p)
        it->second += k;
    else
        entries_.insert(it, {p, k});
}

Count SparseVec::total() const {
    Count n = 0;
    for (const auto& [p, k] : entries_) n += k;
    return n;
}

bool SparseVec::leq(const SparseVec& o) const {
    for (const auto& [p, k] : entries_)
        if (k > o.get(p)) return false;
    return true;
}

SparseVec SparseVec::plus(const SparseVec& o) const {
    SparseVec r = *this;
    for (const auto& [p, k] : o.entries_) r.add(p, k);
    return r;
}

SparseVec SparseVec::monus(const SparseVec& o) const {
    SparseVec r;
    for (const auto& [p, k] : entries_) {
        Count sub = o.get(p);
        if (k > sub) r.entries_.emplace_back(p, k - sub);
    }
    return r;
}

bool canonical_less(const SparseVec& a, const SparseVec& b) {
    // dense-lexicographic: walk the union of places in order, missing = 0
    auto ia = a.entries().begin(), ea = a.entries().end();
    auto ib = b.entries().begin(), eb = b.entries().end();
    while (ia != ea || ib != eb) {
        PlaceId pa = (ia != ea) ? ia->first : kNoId;
        PlaceId pb = (ib != eb) ? ib->first : kNoId;
        if (pa < pb) return false;  // a has a positive entry where b has 0
        if (pb < pa) return true;
        if (ia->second != ib->second) return ia->second < ib->second;
        ++ia;
        ++ib;
    }
    return false;
}

bool leq_gen(const SparseVec& e, const GenConfig& v) {
    for (const auto& [p, k] : e.entries()) {
        if (p >= v.entries.size()) return false;
        if (!v.entries[p].geq(k)) return false;
    }
    return true;
}

bool gen_leq(const GenConfig& a, const GenConfig& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (!OmegaCount::leq(a.entries[i], b.entries[i])) return false;
    return true;
}

bool canonical_less(const GenConfig& a, const GenConfig& b) {
    if (a.entries.size() != b.entries.size()) return a.entries.size() < b.entries.size();
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (a.entries[i] != b.entries[i]) return a.entries[i].rep() < b.entries[i].rep();
    return false;
}

}  // namespace crowdcov
