#include "crowdcov/semantics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace crowdcov {

Count Config::total() const {
    return std::accumulate(counts.begin(), counts.end(), Count{0});
}

bool canonical_less(const Config& a, const Config& b) {
    if (a.counts != b.counts) return a.counts < b.counts;
    if (a.store.has_value() != b.store.has_value()) return b.store.has_value();
    if (a.store && b.store) return *a.store < *b.store;
    return false;
}

bool is_valid_config(const TemplateAutomaton& t, const Config& c) {
    if (c.counts.size() != t.num_states()) return false;
    if (c.store.has_value() != uses_store(t.kind)) return false;
    if (c.store && *c.store >= t.values.size()) return false;
    if (t.kind == SemanticsKind::LockStore) {
        auto held = held_states(t);
        Count holders = 0;
        for (std::size_t s = 0; s < c.counts.size(); ++s)
            if (held[s]) holders += c.counts[s];
        if (holders > 1) return false;
    }
    return true;
}

bool meets_target(const TemplateAutomaton& t, const Config& c) {
    for (std::size_t s = 0; s < t.num_states(); ++s)
        if (c.counts[s] < t.target.demand[s]) return false;
    return true;
}

bool is_lock_free(const TemplateAutomaton& t, const Config& c) {
    auto held = held_states(t);
    for (std::size_t s = 0; s < c.counts.size(); ++s)
        if (held[s] && c.counts[s] > 0) return false;
    return true;
}

namespace {

// Receive transitions for value v grouped by source state, (state, transition)
// order. Only states with processes available appear.
struct ReceiverGroup {
    StateId state;
    Count avail;
    std::vector<TransId> recvs;
};

bool collect_receivers(const TemplateAutomaton& t, const Config& c, StateId sender_src,
                       ValueId v, std::vector<ReceiverGroup>& out) {
    for (StateId q = 0; q < t.num_states(); ++q) {
        Count avail = c.counts[q] - (q == sender_src ? 1 : 0);
        if (avail == 0) continue;
        ReceiverGroup g{q, avail, {}};
        for (TransId i = 0; i < t.transitions.size(); ++i) {
            const auto& tr = t.transitions[i];
            if (tr.src == q && tr.label.kind == LabelKind::BcastRecv && tr.label.value == v)
                g.recvs.push_back(i);
        }
        if (g.recvs.empty()) return false;  // a process that cannot listen blocks the broadcast
        out.push_back(std::move(g));
    }
    return true;
}

// Enumerates all ways of splitting each group's processes over its receive
// transitions, lexicographic over the count tuples. Returns false when the
// callback stopped the enumeration.
bool for_each_assignment(const std::vector<ReceiverGroup>& groups,
                         const std::function<bool(const std::vector<std::vector<Count>>&)>& fn) {
    // first composition per group is (0, ..., 0, avail)
    std::vector<std::vector<Count>> split(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
        split[i].assign(groups[i].recvs.size(), 0);
        split[i].back() = groups[i].avail;
    }

    auto next_composition = [](std::vector<Count>& x) -> bool {
        // lexicographic successor among fixed-sum tuples
        if (x.size() <= 1) return false;
        std::size_t k = x.size();
        // find rightmost index i < k-1 that can be incremented (some mass to its right)
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
        if (!fn(split)) return false;
        // advance: odometer over groups, last group fastest
        std::size_t g = groups.size();
        while (g-- > 0) {
            if (next_composition(split[g])) break;
            std::fill(split[g].begin(), split[g].end(), 0);
            split[g].back() = groups[g].avail;
            if (g == 0) return true;
        }
        if (g == static_cast<std::size_t>(-1)) return true;
    }
}

Step make_broadcast_step(TransId sender, const std::vector<ReceiverGroup>& groups,
                         const std::vector<std::vector<Count>>& split) {
    Step s;
    s.kind = Step::Kind::Broadcast;
    s.trans = sender;
    for (std::size_t i = 0; i < groups.size(); ++i)
        for (std::size_t j = 0; j < groups[i].recvs.size(); ++j)
            if (split[i][j] > 0) s.assignment.emplace_back(groups[i].recvs[j], split[i][j]);
    return s;
}

}  // namespace

void for_each_enabled_step(const TemplateAutomaton& t, const Config& c,
                           const std::function<bool(const Step&)>& fn) {
    if (!is_valid_config(t, c)) throw std::invalid_argument("invalid configuration");
    bool lockfree_checked = false, lockfree = false;
    for (TransId i = 0; i < t.transitions.size(); ++i) {
        const auto& tr = t.transitions[i];
        switch (tr.label.kind) {
            case LabelKind::Tau:
                if (c.counts[tr.src] >= 1)
                    if (!fn(Step{Step::Kind::Tau, i, kNoId, {}})) return;
                break;
            case LabelKind::Send:
                for (TransId j = 0; j < t.transitions.size(); ++j) {
                    const auto& rv = t.transitions[j];
                    if (rv.label.kind != LabelKind::Recv || rv.label.value != tr.label.value)
                        continue;
                    Count need = tr.src == rv.src ? 2 : 1;
                    if (c.counts[tr.src] >= need && c.counts[rv.src] >= 1)
                        if (!fn(Step{Step::Kind::RendezVous, i, j, {}})) return;
                }
                break;
            case LabelKind::BcastSend: {
                if (c.counts[tr.src] < 1) break;
                std::vector<ReceiverGroup> groups;
                if (!collect_receivers(t, c, tr.src, tr.label.value, groups)) break;
                bool keep = for_each_assignment(groups, [&](const auto& split) {
                    return fn(make_broadcast_step(i, groups, split));
                });
                if (!keep) return;
                break;
            }
            case LabelKind::Write:
                if (c.counts[tr.src] >= 1)
                    if (!fn(Step{Step::Kind::StoreOp, i, kNoId, {}})) return;
                break;
            case LabelKind::Read:
                if (c.counts[tr.src] >= 1 && c.store == tr.label.value)
                    if (!fn(Step{Step::Kind::StoreOp, i, kNoId, {}})) return;
                break;
            case LabelKind::Lock:
                if (c.counts[tr.src] >= 1) {
                    if (!lockfree_checked) {
                        lockfree = is_lock_free(t, c);
                        lockfree_checked = true;
                    }
                    if (lockfree)
                        if (!fn(Step{Step::Kind::LockOp, i, kNoId, {}})) return;
                }
                break;
            case LabelKind::Unlock:
                if (c.counts[tr.src] >= 1)
                    if (!fn(Step{Step::Kind::LockOp, i, kNoId, {}})) return;
                break;
            case LabelKind::Recv:
            case LabelKind::BcastRecv:
                break;  // participate through their senders
        }
    }
}

std::vector<Step> enabled_steps(const TemplateAutomaton& t, const Config& c) {
    std::vector<Step> steps;
    for_each_enabled_step(t, c, [&](const Step& s) {
        steps.push_back(s);
        return true;
    });
    return steps;
}

bool step_enabled(const TemplateAutomaton& t, const Config& c, const Step& s) {
    if (!is_valid_config(t, c)) return false;
    if (s.trans >= t.transitions.size()) return false;
    const auto& tr = t.transitions[s.trans];
    switch (s.kind) {
        case Step::Kind::Tau:
            return tr.label.kind == LabelKind::Tau && c.counts[tr.src] >= 1;
        case Step::Kind::RendezVous: {
            if (s.partner >= t.transitions.size()) return false;
            const auto& rv = t.transitions[s.partner];
            if (tr.label.kind != LabelKind::Send || rv.label.kind != LabelKind::Recv) return false;
            if (tr.label.value != rv.label.value) return false;
            Count need = tr.src == rv.src ? 2 : 1;
            return c.counts[tr.src] >= need && c.counts[rv.src] >= 1;
        }
        case Step::Kind::Broadcast: {
            if (tr.label.kind != LabelKind::BcastSend || c.counts[tr.src] < 1) return false;
            std::vector<Count> routed(t.num_states(), 0);
            for (const auto& [ri, k] : s.assignment) {
                if (ri >= t.transitions.size() || k == 0) return false;
                const auto& rv = t.transitions[ri];
                if (rv.label.kind != LabelKind::BcastRecv || rv.label.value != tr.label.value)
                    return false;
                routed[rv.src] += k;
            }
            for (StateId q = 0; q < t.num_states(); ++q) {
                Count avail = c.counts[q] - (q == tr.src ? 1 : 0);
                if (routed[q] != avail) return false;
            }
            return true;
        }
        case Step::Kind::StoreOp:
            if (tr.label.kind == LabelKind::Write) return c.counts[tr.src] >= 1;
            if (tr.label.kind == LabelKind::Read)
                return c.counts[tr.src] >= 1 && c.store == tr.label.value;
            return false;
        case Step::Kind::LockOp:
            if (tr.label.kind == LabelKind::Lock)
                return c.counts[tr.src] >= 1 && is_lock_free(t, c);
            if (tr.label.kind == LabelKind::Unlock) return c.counts[tr.src] >= 1;
            return false;
    }
    return false;
}

Config apply_step(const TemplateAutomaton& t, const Config& c, const Step& s) {
    if (!step_enabled(t, c, s)) throw std::invalid_argument("step not enabled");
    Config r = c;
    const auto& tr = t.transitions[s.trans];
    switch (s.kind) {
        case Step::Kind::Tau:
            r.counts[tr.src] -= 1;
            r.counts[tr.dst] += 1;
            break;
        case Step::Kind::RendezVous: {
            const auto& rv = t.transitions[s.partner];
            r.counts[tr.src] -= 1;
            r.counts[rv.src] -= 1;
            r.counts[tr.dst] += 1;
            r.counts[rv.dst] += 1;
            break;
        }
        case Step::Kind::Broadcast: {
            std::vector<Count> next(t.num_states(), 0);
            next[tr.dst] += 1;  // the sender
            for (const auto& [ri, k] : s.assignment) next[t.transitions[ri].dst] += k;
            r.counts = std::move(next);
            break;
        }
        case Step::Kind::StoreOp:
            r.counts[tr.src] -= 1;
            r.counts[tr.dst] += 1;
            if (tr.label.kind == LabelKind::Write) r.store = tr.label.value;
            break;
        case Step::Kind::LockOp:
            r.counts[tr.src] -= 1;
            r.counts[tr.dst] += 1;
            break;
    }
    return r;
}

ReplayResult replay_witness(const TemplateAutomaton& t, const Witness& w) {
    ReplayResult res;
    if (!is_valid_config(t, w.init)) {
        res.error = "initial configuration is not valid for the template";
        return res;
    }
    if (w.init.total() != w.n) {
        res.error = "initial configuration does not have n processes";
        return res;
    }
    for (std::size_t s = 0; s < t.num_states(); ++s) {
        const OmegaCount& want = t.init.counts[s];
        if (!want.is_omega() && w.init.counts[s] != want.value()) {
            res.error = "initial count at state '" + t.states[s] +
                        "' differs from the initial specification";
            return res;
        }
    }
    if (uses_store(t.kind) && w.init.store != t.init.store0) {
        res.error = "initial store value differs from store_init";
        return res;
    }
    res.trace.push_back(w.init);
    Config cur = w.init;
    for (std::size_t i = 0; i < w.steps.size(); ++i) {
        if (!step_enabled(t, cur, w.steps[i])) {
            res.failed_step = static_cast<int>(i);
            res.error = "step " + std::to_string(i) + " not enabled";
            return res;
        }
        cur = apply_step(t, cur, w.steps[i]);
        res.trace.push_back(cur);
    }
    if (!meets_target(t, cur)) {
        res.error = "final configuration does not meet the target demand";
        return res;
    }
    res.ok = true;
    return res;
}

}  // namespace crowdcov
