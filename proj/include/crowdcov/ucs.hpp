// ucs.hpp -- upward-closed sets as antichains of minimal elements, and predecessor bases
#pragma once

#include <optional>
#include <vector>

#include "crowdcov/net.hpp"
#include "crowdcov/vec.hpp"

namespace crowdcov {

/// Finite antichain of minimal vectors, denoting its upward closure.
struct Basis {
    std::vector<SparseVec> elems;  // canonical order, pairwise incomparable
    bool is_antichain() const;
};

/// Keeps the <=-minimal elements, deduplicated; same upward closure.
Basis minimize(std::vector<SparseVec> vs);

/// Membership of v in the upward closure (omega entries dominate).
bool contains(const Basis& b, const SparseVec& v);
bool contains(const Basis& b, const GenConfig& v);

/// up(b2) subseteq up(b1): every element of b2 is >= some element of b1.
bool subsumed(const Basis& b1, const Basis& b2);

/// The unique minimal d with fire(d, t) >= m: pre(t) + max(m - post(t), 0).
SparseVec pred_basis_ordinary(const ExtendedNet& net, TransId t, const SparseVec& m);

struct BroadcastPred {
    SparseVec d;
    std::vector<Count> routing;  // demanded tokens routed per transfer edge
};

/// Minimal predecessors of up(m) under broadcast b, as an antichain in
/// canonical order. The sender covers one unit of demand at its target; the
/// residual demand is supplied by multisets over the transfer preimages. When
/// enumerated is non-null it receives the raw candidate count.
std::vector<BroadcastPred> pred_basis_broadcast(const ExtendedNet& net, std::uint32_t b,
                                                const SparseVec& m,
                                                std::size_t* enumerated = nullptr);

/// Some element compatible with the initial family (finite entries bound,
/// omega entries free); ties broken by canonical vector order.
std::optional<SparseVec> intersects_initial(const Basis& b, const GenConfig& init);

}  // namespace crowdcov
