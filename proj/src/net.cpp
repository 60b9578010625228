#include "crowdcov/net.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace crowdcov {

ExtendedNet compile(const TemplateAutomaton& t) {
    ExtendedNet net;
    net.num_state_places = t.num_states();
    net.places = t.states;
    if (uses_store(t.kind)) {
        net.val_base = static_cast<PlaceId>(net.places.size());
        net.num_val_places = t.values.size();
        for (const auto& v : t.values) net.places.push_back("val_" + v);
    } else {
        net.val_base = static_cast<PlaceId>(net.places.size());
    }
    if (t.kind == SemanticsKind::LockStore) {
        net.lockfree = static_cast<PlaceId>(net.places.size());
        net.places.push_back("lockfree");
    }
    net.held = held_states(t);

    auto val_place = [&](ValueId v) { return static_cast<PlaceId>(net.val_base + v); };

    for (TransId i = 0; i < t.transitions.size(); ++i) {
        const auto& tr = t.transitions[i];
        switch (tr.label.kind) {
            case LabelKind::Tau: {
                OrdinaryTransition o;
                o.pre = SparseVec::unit(tr.src);
                o.post = SparseVec::unit(tr.dst);
                o.tag = OrdinaryTransition::Tag::Tau;
                o.t1 = i;
                net.ordinary.push_back(std::move(o));
                break;
            }
            case LabelKind::Send: {
                for (TransId j = 0; j < t.transitions.size(); ++j) {
                    const auto& rv = t.transitions[j];
                    if (rv.label.kind != LabelKind::Recv || rv.label.value != tr.label.value)
                        continue;
                    OrdinaryTransition o;
                    o.pre = SparseVec::unit(tr.src);
                    o.pre.add(rv.src, 1);
                    o.post = SparseVec::unit(tr.dst);
                    o.post.add(rv.dst, 1);
                    o.tag = OrdinaryTransition::Tag::Pair;
                    o.t1 = i;
                    o.t2 = j;
                    net.ordinary.push_back(std::move(o));
                }
                break;
            }
            case LabelKind::Write: {
                // the store accepts a write regardless of its current value
                for (ValueId g = 0; g < t.values.size(); ++g) {
                    OrdinaryTransition o;
                    o.pre = SparseVec::unit(tr.src);
                    o.pre.add(val_place(g), 1);
                    o.post = SparseVec::unit(tr.dst);
                    o.post.add(val_place(tr.label.value), 1);
                    o.tag = OrdinaryTransition::Tag::WriteCopy;
                    o.t1 = i;
                    o.current = g;
                    net.ordinary.push_back(std::move(o));
                }
                break;
            }
            case LabelKind::Read: {
                OrdinaryTransition o;
                o.pre = SparseVec::unit(tr.src);
                o.pre.add(val_place(tr.label.value), 1);
                o.post = SparseVec::unit(tr.dst);
                o.post.add(val_place(tr.label.value), 1);
                o.tag = OrdinaryTransition::Tag::ReadOp;
                o.t1 = i;
                net.ordinary.push_back(std::move(o));
                break;
            }
            case LabelKind::Lock: {
                OrdinaryTransition o;
                o.pre = SparseVec::unit(tr.src);
                o.pre.add(net.lockfree, 1);
                o.post = SparseVec::unit(tr.dst);
                o.tag = OrdinaryTransition::Tag::LockOp;
                o.t1 = i;
                net.ordinary.push_back(std::move(o));
                break;
            }
            case LabelKind::Unlock: {
                OrdinaryTransition o;
                o.pre = SparseVec::unit(tr.src);
                o.post = SparseVec::unit(tr.dst);
                o.post.add(net.lockfree, 1);
                o.tag = OrdinaryTransition::Tag::UnlockOp;
                o.t1 = i;
                net.ordinary.push_back(std::move(o));
                break;
            }
            case LabelKind::BcastSend: {
                BroadcastTransition b;
                b.sender_pre = tr.src;
                b.sender_post = tr.dst;
                b.t1 = i;
                std::set<std::pair<PlaceId, PlaceId>> edges;
                for (TransId j = 0; j < t.transitions.size(); ++j) {
                    const auto& rv = t.transitions[j];
                    if (rv.label.kind != LabelKind::BcastRecv || rv.label.value != tr.label.value)
                        continue;
                    if (edges.insert({rv.src, rv.dst}).second) {
                        b.transfer.emplace_back(rv.src, rv.dst);
                        b.edge_trans.push_back(j);
                    }
                }
                // keep edge_trans aligned while sorting the edge list
                std::vector<std::size_t> order(b.transfer.size());
                for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
                    return b.transfer[a] < b.transfer[c];
                });
                BroadcastTransition sorted = b;
                for (std::size_t k = 0; k < order.size(); ++k) {
                    sorted.transfer[k] = b.transfer[order[k]];
                    sorted.edge_trans[k] = b.edge_trans[order[k]];
                }
                net.broadcasts.push_back(std::move(sorted));
                break;
            }
            case LabelKind::Recv:
            case LabelKind::BcastRecv:
                break;  // folded into their senders
        }
    }

    net.init.entries.assign(net.num_places(), OmegaCount(0));
    for (std::size_t s = 0; s < t.num_states(); ++s) net.init.entries[s] = t.init.counts[s];
    if (uses_store(t.kind)) net.init.entries[val_place(*t.init.store0)] = OmegaCount(1);
    if (net.lockfree != kNoId) net.init.entries[net.lockfree] = OmegaCount(1);

    for (std::size_t s = 0; s < t.num_states(); ++s)
        if (t.target.demand[s] > 0)
            net.target.add(static_cast<PlaceId>(s), t.target.demand[s]);
    return net;
}

bool ordinary_enabled(const ExtendedNet& net, const GenConfig& m, TransId t) {
    for (const auto& [p, k] : net.ordinary.at(t).pre.entries())
        if (!m.entries.at(p).geq(k)) return false;
    return true;
}

GenConfig fire_ordinary(const ExtendedNet& net, const GenConfig& m, TransId t) {
    if (!ordinary_enabled(net, m, t)) throw std::invalid_argument("transition not enabled");
    GenConfig r = m;
    for (const auto& [p, k] : net.ordinary[t].pre.entries()) r.entries[p] = r.entries[p].minus(k);
    for (const auto& [p, k] : net.ordinary[t].post.entries()) r.entries[p] = r.entries[p].plus(k);
    return r;
}

bool ordinary_enabled(const ExtendedNet& net, const std::vector<Count>& m, TransId t) {
    for (const auto& [p, k] : net.ordinary.at(t).pre.entries())
        if (m.at(p) < k) return false;
    return true;
}

std::vector<Count> fire_ordinary(const ExtendedNet& net, const std::vector<Count>& m, TransId t) {
    if (!ordinary_enabled(net, m, t)) throw std::invalid_argument("transition not enabled");
    std::vector<Count> r = m;
    for (const auto& [p, k] : net.ordinary[t].pre.entries()) r[p] -= k;
    for (const auto& [p, k] : net.ordinary[t].post.entries()) r[p] += k;
    return r;
}

std::vector<Count> fire_broadcast(const ExtendedNet& net, const std::vector<Count>& m,
                                  std::uint32_t b, const std::vector<Count>& routing) {
    const auto& bt = net.broadcasts.at(b);
    if (m.at(bt.sender_pre) < 1) throw std::invalid_argument("broadcast not enabled");
    if (routing.size() != bt.transfer.size())
        throw std::invalid_argument("routing size mismatch");
    std::vector<Count> out(m.size(), 0);
    // val / lock places are untouched by broadcasts
    for (std::size_t p = net.num_state_places; p < m.size(); ++p) out[p] = m[p];
    std::vector<Count> routed(net.num_state_places, 0);
    for (std::size_t e = 0; e < routing.size(); ++e) {
        routed[bt.transfer[e].first] += routing[e];
        out[bt.transfer[e].second] += routing[e];
    }
    for (PlaceId p = 0; p < net.num_state_places; ++p) {
        Count avail = m[p] - (p == bt.sender_pre ? 1 : 0);
        if (routed[p] != avail) throw std::invalid_argument("routing is not a full assignment");
    }
    out[bt.sender_post] += 1;
    return out;
}

namespace {

// Enumerates all routings of a finite marking through a broadcast, calling fn
// with the successor marking. Per source place, tokens split over its
// outgoing transfer edges.
void for_each_broadcast_successor(const ExtendedNet& net, const std::vector<Count>& m,
                                  std::uint32_t b,
                                  const std::function<void(std::vector<Count>&&)>& fn) {
    const auto& bt = net.broadcasts[b];
    if (m[bt.sender_pre] < 1) return;
    struct Group {
        PlaceId place;
        Count avail;
        std::vector<std::size_t> edges;
    };
    std::vector<Group> groups;
    for (PlaceId p = 0; p < net.num_state_places; ++p) {
        Count avail = m[p] - (p == bt.sender_pre ? 1 : 0);
        if (avail == 0) continue;
        Group g{p, avail, {}};
        for (std::size_t e = 0; e < bt.transfer.size(); ++e)
            if (bt.transfer[e].first == p) g.edges.push_back(e);
        if (g.edges.empty()) return;  // token with no transfer edge blocks the broadcast
        groups.push_back(std::move(g));
    }
    std::vector<std::vector<Count>> split(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
        split[i].assign(groups[i].edges.size(), 0);
        split[i].back() = groups[i].avail;
    }
    auto emit = [&] {
        std::vector<Count> routing(bt.transfer.size(), 0);
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (std::size_t j = 0; j < groups[i].edges.size(); ++j)
                routing[groups[i].edges[j]] = split[i][j];
        fn(fire_broadcast(net, m, b, routing));
    };
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
    while (true) {
        emit();
        std::size_t g = groups.size();
        bool advanced = false;
        while (g-- > 0) {
            if (next_composition(split[g])) {
                advanced = true;
                break;
            }
            std::fill(split[g].begin(), split[g].end(), 0);
            split[g].back() = groups[g].avail;
        }
        if (!advanced) return;
    }
}

}  // namespace

std::vector<std::vector<Count>> net_successors(const ExtendedNet& net,
                                               const std::vector<Count>& m) {
    std::set<std::vector<Count>> out;
    for (TransId t = 0; t < net.ordinary.size(); ++t)
        if (ordinary_enabled(net, m, t)) out.insert(fire_ordinary(net, m, t));
    for (std::uint32_t b = 0; b < net.broadcasts.size(); ++b)
        for_each_broadcast_successor(net, m, b,
                                     [&](std::vector<Count>&& succ) { out.insert(std::move(succ)); });
    return {out.begin(), out.end()};
}

std::vector<Count> config_to_marking(const ExtendedNet& net, const Config& c) {
    std::vector<Count> m(net.num_places(), 0);
    Count holders = 0;
    for (std::size_t s = 0; s < c.counts.size(); ++s) {
        m[s] = c.counts[s];
        if (s < net.held.size() && net.held[s]) holders += c.counts[s];
    }
    if (c.store) m[net.val_base + *c.store] = 1;
    if (net.lockfree != kNoId) m[net.lockfree] = holders == 0 ? 1 : 0;
    return m;
}

namespace {

void dump_sparse(std::ostringstream& out, const ExtendedNet& net, const SparseVec& v) {
    for (const auto& [p, k] : v.entries()) out << " " << net.places[p] << "=" << k;
}

}  // namespace

std::string dump_net(const ExtendedNet& net) {
    std::ostringstream out;
    out << "places";
    for (const auto& p : net.places) out << " " << p;
    out << "\n";
    out << "init";
    for (std::size_t p = 0; p < net.num_places(); ++p)
        if (!(net.init.entries[p] == OmegaCount(0)))
            out << " " << net.places[p] << "=" << to_string(net.init.entries[p]);
    out << "\n";
    out << "target";
    dump_sparse(out, net, net.target);
    out << "\n";
    for (std::size_t i = 0; i < net.ordinary.size(); ++i) {
        out << "t" << i << " pre";
        dump_sparse(out, net, net.ordinary[i].pre);
        out << " post";
        dump_sparse(out, net, net.ordinary[i].post);
        out << "\n";
    }
    for (std::size_t i = 0; i < net.broadcasts.size(); ++i) {
        const auto& b = net.broadcasts[i];
        out << "b" << i << " send " << net.places[b.sender_pre] << "->"
            << net.places[b.sender_post] << " transfer";
        for (const auto& [p, q] : b.transfer) out << " " << net.places[p] << "->" << net.places[q];
        out << "\n";
    }
    return out.str();
}

}  // namespace crowdcov
