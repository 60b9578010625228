#include "crowdcov/ucs.hpp"

#include <algorithm>
#include <stdexcept>

namespace crowdcov {

bool Basis::is_antichain() const {
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (i != j && elems[i].leq(elems[j])) return false;
    return true;
}

Basis minimize(std::vector<SparseVec> vs) {
    std::sort(vs.begin(), vs.end(), SparseVecLess{});
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    Basis b;
    for (const auto& v : vs) {
        bool minimal = true;
        for (const auto& u : vs)
            if (!(u == v) && u.leq(v)) {
                minimal = false;
                break;
            }
        if (minimal) b.elems.push_back(v);
    }
    return b;
}

bool contains(const Basis& b, const SparseVec& v) {
    return std::any_of(b.elems.begin(), b.elems.end(),
                       [&](const SparseVec& e) { return e.leq(v); });
}

bool contains(const Basis& b, const GenConfig& v) {
    return std::any_of(b.elems.begin(), b.elems.end(),
                       [&](const SparseVec& e) { return leq_gen(e, v); });
}

bool subsumed(const Basis& b1, const Basis& b2) {
    return std::all_of(b2.elems.begin(), b2.elems.end(),
                       [&](const SparseVec& e) { return contains(b1, e); });
}

SparseVec pred_basis_ordinary(const ExtendedNet& net, TransId t, const SparseVec& m) {
    const auto& tr = net.ordinary.at(t);
    return tr.pre.plus(m.monus(tr.post));
}

std::vector<BroadcastPred> pred_basis_broadcast(const ExtendedNet& net, std::uint32_t b,
                                                const SparseVec& m, std::size_t* enumerated) {
    const auto& bt = net.broadcasts.at(b);
    for (const auto& [p, k] : m.entries())
        if (p >= net.num_state_places && k > 0)
            throw std::invalid_argument("broadcast demand on a val/lock place");

    // The sender covers one unit of demand at its target state.
    SparseVec residual = m.monus(SparseVec::unit(bt.sender_post));

    struct DemandPlace {
        PlaceId place;
        Count need;
        std::vector<std::size_t> edges;  // transfer edges into place
    };
    std::vector<DemandPlace> demands;
    for (const auto& [p, need] : residual.entries()) {
        DemandPlace d{p, need, {}};
        for (std::size_t e = 0; e < bt.transfer.size(); ++e)
            if (bt.transfer[e].second == p) d.edges.push_back(e);
        if (d.edges.empty()) return {};  // nothing transfers into a demanded place
        demands.push_back(std::move(d));
    }

    // Per demanded place, all size-need multisets over its preimage edges,
    // enumerated as compositions in lexicographic order.
    std::vector<std::vector<Count>> split(demands.size());
    for (std::size_t i = 0; i < demands.size(); ++i) {
        split[i].assign(demands[i].edges.size(), 0);
        split[i].back() = demands[i].need;
    }
    auto next_composition = [](std::vector<Count>& x) -> bool {
        if (x.size() <= 1) return false;
        std::size_t k = x.size();
        for (std::size_t i = k - 1; i-- > 0;) {
            Count right = 0;
            for (std::size_t j = i + 1; j < k; ++j) right += x[j];
            if (right > 0) {
                x[i] += 1;
                for (std::size_t j = i + 1; j < k; ++j) x[j] = 0;
                x[k - 1] = right - 1;
                return true;
            }
        }
        return false;
    };

    std::vector<BroadcastPred> candidates;
    std::size_t count = 0;
    while (true) {
        BroadcastPred cand;
        cand.routing.assign(bt.transfer.size(), 0);
        cand.d = SparseVec::unit(bt.sender_pre);
        for (std::size_t i = 0; i < demands.size(); ++i)
            for (std::size_t j = 0; j < demands[i].edges.size(); ++j) {
                std::size_t e = demands[i].edges[j];
                cand.routing[e] += split[i][j];
                if (split[i][j] > 0) cand.d.add(bt.transfer[e].first, split[i][j]);
            }
        candidates.push_back(std::move(cand));
        ++count;
        std::size_t g = demands.size();
        bool advanced = false;
        while (g-- > 0) {
            if (next_composition(split[g])) {
                advanced = true;
                break;
            }
            std::fill(split[g].begin(), split[g].end(), 0);
            split[g].back() = demands[g].need;
        }
        if (!advanced) break;
    }
    if (enumerated) *enumerated += count;

    // antichain pass, keeping the first routing for each minimal vector
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const BroadcastPred& a, const BroadcastPred& b2) {
                         return canonical_less(a.d, b2.d);
                     });
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const BroadcastPred& a, const BroadcastPred& b2) {
                                     return a.d == b2.d;
                                 }),
                     candidates.end());
    std::vector<BroadcastPred> result;
    for (const auto& c : candidates) {
        bool minimal = true;
        for (const auto& o : candidates)
            if (!(o.d == c.d) && o.d.leq(c.d)) {
                minimal = false;
                break;
            }
        if (minimal) result.push_back(c);
    }
    return result;
}

std::optional<SparseVec> intersects_initial(const Basis& b, const GenConfig& init) {
    std::optional<SparseVec> best;
    for (const auto& e : b.elems)
        if (leq_gen(e, init) && (!best || canonical_less(e, *best))) best = e;
    return best;
}

}  // namespace crowdcov
