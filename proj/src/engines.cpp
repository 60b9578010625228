#include "crowdcov/engines.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace crowdcov {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

BackwardRun run_backward(const ExtendedNet& net) {
    auto start = std::chrono::steady_clock::now();
    BackwardRun run;

    Basis& basis = run.basis;
    basis = minimize({net.target});
    std::vector<SparseVec> frontier = basis.elems;

    auto insert_candidate = [&](const SparseVec& d, BackwardLink link,
                                std::vector<SparseVec>& next_frontier) {
        if (contains(basis, d)) return;
        // keep the antichain: drop dominated elements; processing a pruned
        // frontier element later is sound, its candidates get subsumed
        auto dominated = [&](const SparseVec& e) { return d.leq(e) && !(d == e); };
        std::erase_if(basis.elems, dominated);
        std::erase_if(next_frontier, dominated);
        basis.elems.push_back(d);
        run.links.emplace(d, std::move(link));
        next_frontier.push_back(d);
    };

    while (!frontier.empty()) {
        run.stats.iterations += 1;
        std::sort(frontier.begin(), frontier.end(), SparseVecLess{});
        std::vector<SparseVec> next;
        for (const SparseVec& m : frontier) {
            for (TransId t = 0; t < net.ordinary.size(); ++t) {
                SparseVec d = pred_basis_ordinary(net, t, m);
                run.stats.candidates += 1;
                insert_candidate(d, BackwardLink{t, false, m, {}}, next);
            }
            for (std::uint32_t b = 0; b < net.broadcasts.size(); ++b) {
                for (auto& bp : pred_basis_broadcast(net, b, m, &run.stats.candidates))
                    insert_candidate(bp.d, BackwardLink{b, true, m, std::move(bp.routing)},
                                     next);
            }
        }
        frontier = std::move(next);
    }

    std::sort(basis.elems.begin(), basis.elems.end(), SparseVecLess{});
    run.covering = intersects_initial(basis, net.init);
    run.stats.basis = basis.elems.size();
    run.stats.wall_ms = elapsed_ms(start);
    return run;
}

namespace {

Step net_transition_step(const TemplateAutomaton& t, const ExtendedNet& net, TransId nt) {
    const auto& o = net.ordinary.at(nt);
    Step s;
    s.trans = o.t1;
    switch (o.tag) {
        case OrdinaryTransition::Tag::Tau: s.kind = Step::Kind::Tau; break;
        case OrdinaryTransition::Tag::Pair:
            s.kind = Step::Kind::RendezVous;
            s.partner = o.t2;
            break;
        case OrdinaryTransition::Tag::WriteCopy:
        case OrdinaryTransition::Tag::ReadOp: s.kind = Step::Kind::StoreOp; break;
        case OrdinaryTransition::Tag::LockOp:
        case OrdinaryTransition::Tag::UnlockOp: s.kind = Step::Kind::LockOp; break;
    }
    (void)t;
    return s;
}

Config marking_to_config(const TemplateAutomaton& t, const ExtendedNet& net,
                         const std::vector<Count>& m) {
    Config c;
    c.counts.assign(t.num_states(), 0);
    for (std::size_t s = 0; s < t.num_states(); ++s) c.counts[s] = m[s];
    if (uses_store(t.kind)) {
        for (ValueId v = 0; v < t.values.size(); ++v)
            if (m[net.val_base + v] > 0) c.store = v;
    }
    return c;
}

}  // namespace

Witness extract_witness(const TemplateAutomaton& t, const ExtendedNet& net,
                        const BackwardLinks& links, const SparseVec& covering) {
    // chain from the covering element down to the target element
    std::vector<SparseVec> chain{covering};
    std::vector<const BackwardLink*> chain_links;
    {
        SparseVec cur = covering;
        while (true) {
            auto it = links.find(cur);
            if (it == links.end()) break;
            chain_links.push_back(&it->second);
            cur = it->second.parent;
            chain.push_back(cur);
        }
    }

    // concrete start: exact at finite entries, chain maximum at omega entries
    std::vector<Count> marking(net.num_places(), 0);
    for (std::size_t p = 0; p < net.num_places(); ++p) {
        if (net.init.entries[p].is_omega()) {
            Count mx = 0;
            for (const auto& d : chain) mx = std::max(mx, d.get(static_cast<PlaceId>(p)));
            marking[p] = mx;
        } else {
            marking[p] = net.init.entries[p].value();
        }
    }

    Witness w;
    w.init = marking_to_config(t, net, marking);
    w.n = w.init.total();

    for (std::size_t i = 0; i < chain_links.size(); ++i) {
        const BackwardLink& link = *chain_links[i];
        if (!link.is_broadcast) {
            if (!ordinary_enabled(net, marking, link.trans))
                throw std::logic_error("backward chain replay: transition not enabled");
            w.steps.push_back(net_transition_step(t, net, link.trans));
            marking = fire_ordinary(net, marking, link.trans);
            continue;
        }
        const auto& bt = net.broadcasts.at(link.trans);
        if (marking[bt.sender_pre] < 1)
            throw std::logic_error("backward chain replay: broadcast sender missing");
        // route the demanded tokens along the recorded composition, the rest
        // along the first transfer edge out of their place
        std::vector<Count> routing = link.routing;
        std::vector<Count> routed(net.num_state_places, 0);
        for (std::size_t e = 0; e < routing.size(); ++e) routed[bt.transfer[e].first] += routing[e];
        for (PlaceId p = 0; p < net.num_state_places; ++p) {
            Count avail = marking[p] - (p == bt.sender_pre ? 1 : 0);
            if (routed[p] > avail)
                throw std::logic_error("backward chain replay: routing exceeds tokens");
            Count excess = avail - routed[p];
            if (excess == 0) continue;
            bool placed = false;
            for (std::size_t e = 0; e < bt.transfer.size(); ++e) {
                if (bt.transfer[e].first == p) {
                    routing[e] += excess;
                    placed = true;
                    break;
                }
            }
            if (!placed) throw std::logic_error("backward chain replay: token without receive");
        }
        Step s;
        s.kind = Step::Kind::Broadcast;
        s.trans = bt.t1;
        std::vector<std::pair<TransId, Count>> assignment;
        for (std::size_t e = 0; e < routing.size(); ++e)
            if (routing[e] > 0) assignment.emplace_back(bt.edge_trans[e], routing[e]);
        // canonical order: by (source state, transition index)
        std::sort(assignment.begin(), assignment.end(), [&](const auto& a, const auto& b2) {
            StateId sa = t.transitions[a.first].src, sb = t.transitions[b2.first].src;
            return sa != sb ? sa < sb : a.first < b2.first;
        });
        s.assignment = std::move(assignment);
        w.steps.push_back(std::move(s));
        marking = fire_broadcast(net, marking, link.trans, routing);
    }

    auto replay = replay_witness(t, w);
    if (!replay.ok)
        throw std::logic_error("extracted witness does not replay: " + replay.error);
    return w;
}

Verdict backward_check(const TemplateAutomaton& t, const ExtendedNet& net, bool want_witness) {
    BackwardRun run = run_backward(net);
    Verdict v;
    v.stats = run.stats;
    if (!run.covering) {
        v.outcome = Outcome::Safe;
        return v;
    }
    v.outcome = Outcome::Coverable;
    if (want_witness) v.witness = extract_witness(t, net, run.links, *run.covering);
    return v;
}

bool KMGraph::contains_node(const GenConfig& g) const {
    return std::any_of(nodes.begin(), nodes.end(), [&](const GenConfig& n) { return n == g; });
}

KMGraph km_build(const ExtendedNet& net) {
    if (!net.broadcasts.empty())
        throw std::invalid_argument("Karp-Miller does not handle broadcast transitions");
    KMGraph g;
    struct GenLess {
        bool operator()(const GenConfig& a, const GenConfig& b) const {
            return canonical_less(a, b);
        }
    };
    std::map<GenConfig, std::uint32_t, GenLess> index;

    struct WorkItem {
        std::uint32_t node;
        std::vector<std::uint32_t> ancestors;  // node ids along the root path
    };
    g.nodes.push_back(net.init);
    index.emplace(net.init, 0);
    std::deque<WorkItem> work;
    work.push_back({0, {}});

    while (!work.empty()) {
        WorkItem item = std::move(work.front());
        work.pop_front();
        const GenConfig m = g.nodes[item.node];
        for (TransId t = 0; t < net.ordinary.size(); ++t) {
            if (!ordinary_enabled(net, m, t)) continue;
            GenConfig succ = fire_ordinary(net, m, t);
            // accelerate against every strictly smaller ancestor
            auto accelerate = [&](const GenConfig& a) {
                if (!gen_leq(a, succ) || a == succ) return;
                for (std::size_t p = 0; p < succ.entries.size(); ++p)
                    if (OmegaCount::leq(a.entries[p], succ.entries[p]) &&
                        a.entries[p] != succ.entries[p])
                        succ.entries[p] = OmegaCount::omega();
            };
            bool grew = true;
            while (grew) {
                GenConfig before = succ;
                for (auto anc : item.ancestors) accelerate(g.nodes[anc]);
                accelerate(m);
                grew = !(before == succ);
            }
            auto [it, fresh] = index.emplace(succ, static_cast<std::uint32_t>(g.nodes.size()));
            if (fresh) {
                g.nodes.push_back(succ);
                auto ancestors = item.ancestors;
                ancestors.push_back(item.node);
                work.push_back({it->second, std::move(ancestors)});
            }
            g.edges.emplace_back(item.node, t, it->second);
        }
    }
    return g;
}

bool km_coverable(const KMGraph& g, const SparseVec& target) {
    return std::any_of(g.nodes.begin(), g.nodes.end(),
                       [&](const GenConfig& n) { return leq_gen(target, n); });
}

Verdict km_check(const TemplateAutomaton& t, const ExtendedNet& net) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    if (t.kind == SemanticsKind::Broadcast || !net.broadcasts.empty()) {
        v.outcome = Outcome::Inapplicable;
        return v;
    }
    KMGraph g = km_build(net);
    v.stats.nodes = g.nodes.size();
    v.outcome = km_coverable(g, net.target) ? Outcome::Coverable : Outcome::Safe;
    v.stats.wall_ms = elapsed_ms(start);
    return v;
}

OmegaFixpoint leaderless_rv_fixpoint(const TemplateAutomaton& t) {
    OmegaFixpoint fp;
    fp.omega.assign(t.num_states(), false);
    for (StateId s = 0; s < t.num_states(); ++s)
        if (t.init.counts[s].is_omega()) fp.omega[s] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        fp.iterations += 1;
        for (const auto& tr : t.transitions) {
            if (tr.label.kind == LabelKind::Tau && fp.omega[tr.src] && !fp.omega[tr.dst]) {
                fp.omega[tr.dst] = true;
                changed = true;
            }
            if (tr.label.kind != LabelKind::Send) continue;
            if (!fp.omega[tr.src]) continue;
            for (const auto& rv : t.transitions) {
                if (rv.label.kind != LabelKind::Recv || rv.label.value != tr.label.value)
                    continue;
                if (!fp.omega[rv.src]) continue;
                // omega supplies both participants, even from a shared state
                if (!fp.omega[tr.dst]) {
                    fp.omega[tr.dst] = true;
                    changed = true;
                }
                if (!fp.omega[rv.dst]) {
                    fp.omega[rv.dst] = true;
                    changed = true;
                }
            }
        }
    }
    return fp;
}

bool leaderless_applicable(const TemplateAutomaton& t) {
    if (t.kind != SemanticsKind::RendezVous && t.kind != SemanticsKind::Store) return false;
    for (const auto& c : t.init.counts)
        if (!c.is_omega() && c.value() != 0) return false;
    return true;
}

Verdict leaderless_rv(const TemplateAutomaton& t) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    if (t.kind != SemanticsKind::RendezVous || !leaderless_applicable(t)) {
        v.outcome = Outcome::Inapplicable;
        return v;
    }
    OmegaFixpoint fp = leaderless_rv_fixpoint(t);
    v.stats.iterations = fp.iterations;
    bool all = true;
    for (StateId s = 0; s < t.num_states(); ++s)
        if (t.target.demand[s] > 0 && !fp.omega[s]) all = false;
    v.outcome = all ? Outcome::Coverable : Outcome::Safe;
    v.stats.wall_ms = elapsed_ms(start);
    return v;
}

Verdict leaderless_store(const TemplateAutomaton& t, std::size_t budget) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    if (t.kind != SemanticsKind::Store || !leaderless_applicable(t)) {
        v.outcome = Outcome::Inapplicable;
        return v;
    }
    // exact graph over (omega set, store value) nodes
    using Node = std::pair<std::vector<bool>, ValueId>;
    std::set<Node> seen;
    std::deque<Node> work;
    Node root;
    root.first.assign(t.num_states(), false);
    for (StateId s = 0; s < t.num_states(); ++s)
        if (t.init.counts[s].is_omega()) root.first[s] = true;
    root.second = *t.init.store0;
    seen.insert(root);
    work.push_back(root);
    bool covered = false;
    auto check = [&](const Node& n) {
        for (StateId s = 0; s < t.num_states(); ++s)
            if (t.target.demand[s] > 0 && !n.first[s]) return false;
        return true;
    };
    covered = check(root);
    while (!work.empty() && !covered) {
        Node n = std::move(work.front());
        work.pop_front();
        for (const auto& tr : t.transitions) {
            if (!n.first[tr.src]) continue;
            Node succ = n;
            switch (tr.label.kind) {
                case LabelKind::Tau: succ.first[tr.dst] = true; break;
                case LabelKind::Read:
                    if (n.second != tr.label.value) continue;
                    succ.first[tr.dst] = true;
                    break;
                case LabelKind::Write:
                    succ.first[tr.dst] = true;
                    succ.second = tr.label.value;
                    break;
                default: continue;
            }
            if (seen.insert(succ).second) {
                if (check(succ)) {
                    covered = true;
                    break;
                }
                work.push_back(std::move(succ));
                if (seen.size() > budget) {
                    v.outcome = Outcome::BudgetExceeded;
                    v.stats.nodes = seen.size();
                    return v;
                }
            }
        }
    }
    v.stats.nodes = seen.size();
    v.outcome = covered ? Outcome::Coverable : Outcome::Safe;
    v.stats.wall_ms = elapsed_ms(start);
    return v;
}

const char* to_string(Engine e) {
    switch (e) {
        case Engine::Backward: return "backward";
        case Engine::KarpMiller: return "km";
        case Engine::LeaderlessRv: return "leaderless-rv";
        case Engine::LeaderlessStore: return "leaderless-store";
        case Engine::Oracle: return "oracle";
    }
    return "?";
}

Engine auto_select(const TemplateAutomaton& t) {
    if (leaderless_applicable(t))
        return t.kind == SemanticsKind::RendezVous ? Engine::LeaderlessRv
                                                   : Engine::LeaderlessStore;
    return Engine::Backward;
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Safe: return "SAFE";
        case Outcome::Coverable: return "COVERABLE";
        case Outcome::SafeUpTo: return "SAFE-UP-TO";
        case Outcome::Inapplicable: return "INAPPLICABLE";
        case Outcome::BudgetExceeded: return "BUDGET-EXCEEDED";
    }
    return "?";
}

}  // namespace crowdcov
