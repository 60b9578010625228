// vec.hpp -- counts, omega-extended counts, sparse vectors, generalized configurations
#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace crowdcov {

using Count = std::uint64_t;
using StateId = std::uint32_t;
using ValueId = std::uint32_t;
using PlaceId = std::uint32_t;
using TransId = std::uint32_t;

inline constexpr std::uint32_t kNoId = std::numeric_limits<std::uint32_t>::max();

// Default cap on explored configurations / nodes before giving up.
inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// A natural number extended with omega ("arbitrarily many").
class OmegaCount {
public:
    constexpr OmegaCount() = default;
    constexpr OmegaCount(Count v) : v_(v) { assert(v != kOmegaRep); }
    static constexpr OmegaCount omega() {
        OmegaCount c;
        c.v_ = kOmegaRep;
        return c;
    }
    constexpr bool is_omega() const { return v_ == kOmegaRep; }
    constexpr Count value() const {
        assert(!is_omega());
        return v_;
    }
    constexpr bool operator==(const OmegaCount&) const = default;

    // omega + k = omega - k = omega
    constexpr OmegaCount plus(Count k) const {
        if (is_omega()) return *this;
        return OmegaCount(v_ + k);
    }
    constexpr OmegaCount minus(Count k) const {
        if (is_omega()) return *this;
        assert(v_ >= k);
        return OmegaCount(v_ - k);
    }
    constexpr bool geq(Count k) const { return is_omega() || v_ >= k; }

    // a <= b in the omega-extended order (omega on top)
    static constexpr bool leq(OmegaCount a, OmegaCount b) {
        if (b.is_omega()) return true;
        if (a.is_omega()) return false;
        return a.v_ <= b.v_;
    }
    // raw encoding; omega sorts above every finite value
    constexpr Count rep() const { return v_; }

private:
    static constexpr Count kOmegaRep = std::numeric_limits<Count>::max();
    Count v_ = 0;
};

std::string to_string(OmegaCount c);

/// Sparse nonnegative vector over places. Entries are sorted by place and
/// zero counts are never stored.
class SparseVec {
public:
    SparseVec() = default;

    static SparseVec unit(PlaceId p, Count k = 1);
    static SparseVec from_dense(const std::vector<Count>& d);
    std::vector<Count> to_dense(std::size_t size) const;

    Count get(PlaceId p) const;
    void add(PlaceId p, Count k);        // entry += k
    bool empty() const { return entries_.empty(); }
    Count total() const;

    bool leq(const SparseVec& o) const;  // componentwise <=
    SparseVec plus(const SparseVec& o) const;
    SparseVec monus(const SparseVec& o) const;  // componentwise max(a - b, 0)

    bool operator==(const SparseVec&) const = default;
    const std::vector<std::pair<PlaceId, Count>>& entries() const { return entries_; }

private:
    std::vector<std::pair<PlaceId, Count>> entries_;
};

/// Dense-lexicographic order over place indices; missing entries read as 0.
bool canonical_less(const SparseVec& a, const SparseVec& b);

struct SparseVecLess {
    bool operator()(const SparseVec& a, const SparseVec& b) const { return canonical_less(a, b); }
};

/// Count vector over places where entries may be omega.
struct GenConfig {
    std::vector<OmegaCount> entries;
    bool operator==(const GenConfig&) const = default;
};

bool leq_gen(const SparseVec& e, const GenConfig& v);  // e <= v; omega imposes no bound
bool gen_leq(const GenConfig& a, const GenConfig& b);
bool canonical_less(const GenConfig& a, const GenConfig& b);

}  // namespace crowdcov
