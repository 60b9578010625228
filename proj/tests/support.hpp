// support.hpp -- shared test helpers: template builders and the random corpus
#pragma once

#include <random>
#include <string>
#include <vector>

#include "crowdcov/semantics.hpp"
#include "crowdcov/template.hpp"

namespace crowdcov::test {

// The broadcast leader template: one sender transition elects a leader, all
// listeners step aside. Receives completed so the template validates.
inline TemplateAutomaton leader_template(Count target_q2 = 1) {
    TemplateAutomaton t;
    t.kind = SemanticsKind::Broadcast;
    t.states = {"q1", "q2", "q3"};
    t.values = {"a"};
    t.transitions = {
        {0, {LabelKind::BcastSend, 0}, 1},
        {0, {LabelKind::BcastRecv, 0}, 2},
    };
    t.init.counts = {OmegaCount::omega(), 0, 0};
    t.target.demand = {0, target_q2, 0};
    return complete_receives(t);
}

// q1 -v!-> q3, q2 -v?-> q4 with a leader in q1 and omega processes in q2.
inline TemplateAutomaton rv_pair_template() {
    TemplateAutomaton t;
    t.kind = SemanticsKind::RendezVous;
    t.states = {"q1", "q2", "q3", "q4"};
    t.values = {"v"};
    t.transitions = {
        {0, {LabelKind::Send, 0}, 2},
        {1, {LabelKind::Recv, 0}, 3},
    };
    t.init.counts = {1, OmegaCount::omega(), 0, 0};
    t.target.demand = {0, 0, 0, 1};
    return t;
}

// q1 -v!-> q1, q2 -v?-> q4: every rendez-vous feeds q4, the acceleration case.
inline TemplateAutomaton rv_accel_template(Count target_q4 = 3) {
    TemplateAutomaton t;
    t.kind = SemanticsKind::RendezVous;
    t.states = {"q1", "q2", "q3", "q4"};
    t.values = {"v"};
    t.transitions = {
        {0, {LabelKind::Send, 0}, 0},
        {1, {LabelKind::Recv, 0}, 3},
    };
    t.init.counts = {1, OmegaCount::omega(), 0, 0};
    t.target.demand = {0, 0, 0, target_q4};
    return t;
}

// Leaderless rendez-vous: q1 -v!-> q3, q1 -v?-> q4 from omega many in q1.
inline TemplateAutomaton rv_leaderless_template() {
    TemplateAutomaton t;
    t.kind = SemanticsKind::RendezVous;
    t.states = {"q1", "q2", "q3", "q4"};
    t.values = {"v"};
    t.transitions = {
        {0, {LabelKind::Send, 0}, 2},
        {0, {LabelKind::Recv, 0}, 3},
    };
    t.init.counts = {OmegaCount::omega(), 0, 0, 0};
    t.target.demand = {0, 0, 0, 1};
    return t;
}

// Leaderless store: a writer unlocks a reader.
inline TemplateAutomaton store_leaderless_template() {
    TemplateAutomaton t;
    t.kind = SemanticsKind::Store;
    t.states = {"q1", "q2", "q3"};
    t.values = {"f", "v"};
    t.transitions = {
        {0, {LabelKind::Write, 1}, 1},
        {0, {LabelKind::Read, 1}, 2},
    };
    t.init.counts = {OmegaCount::omega(), 0, 0};
    t.init.store0 = 0;
    t.target.demand = {0, 0, 1};
    return t;
}

// ---- random corpus ----------------------------------------------------
//
// Valid-by-construction templates sized so the compiled nets stay at five
// places or fewer, which keeps the brute-force predecessor sweeps exhaustive.

inline std::string state_name(std::size_t i) { return "q" + std::to_string(i); }
inline std::string value_name(std::size_t i) { return "v" + std::to_string(i); }

inline void random_init_and_target(TemplateAutomaton& t, std::mt19937& rng) {
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<std::size_t> pick_state(0, t.states.size() - 1);
    t.init.counts.assign(t.states.size(), OmegaCount(0));
    if (coin(rng)) {
        // leaderless shape: omega on one or two states
        t.init.counts[0] = OmegaCount::omega();
        if (t.states.size() > 1 && coin(rng)) t.init.counts[pick_state(rng)] = OmegaCount::omega();
    } else {
        // a finite leader plus an omega crowd
        t.init.counts[pick_state(rng)] = OmegaCount::omega();
        StateId leader = static_cast<StateId>(pick_state(rng));
        if (!t.init.counts[leader].is_omega()) t.init.counts[leader] = OmegaCount(1);
    }
    t.target.demand.assign(t.states.size(), 0);
    std::uniform_int_distribution<Count> demand(1, 2);
    t.target.demand[pick_state(rng)] = demand(rng);
    if (coin(rng) && t.states.size() > 1) {
        StateId extra = static_cast<StateId>(pick_state(rng));
        if (t.target.demand[extra] == 0) t.target.demand[extra] = 1;
    }
}

inline TemplateAutomaton random_broadcast(std::mt19937& rng) {
    TemplateAutomaton t;
    t.kind = SemanticsKind::Broadcast;
    std::uniform_int_distribution<int> coin(0, 1);
    std::size_t nv = coin(rng) ? 1 : 2;
    std::size_t max_q = nv == 1 ? 5 : 3;  // receives + sends stay within 8 transitions
    std::uniform_int_distribution<std::size_t> qdist(2, max_q);
    std::size_t nq = qdist(rng);
    for (std::size_t i = 0; i < nq; ++i) t.states.push_back(state_name(i));
    for (std::size_t i = 0; i < nv; ++i) t.values.push_back(value_name(i));
    std::uniform_int_distribution<StateId> st(0, static_cast<StateId>(nq - 1));
    // one receive per (state, value) keeps totality
    for (StateId q = 0; q < nq; ++q)
        for (ValueId v = 0; v < nv; ++v)
            t.transitions.push_back({q, {LabelKind::BcastRecv, v}, st(rng)});
    std::size_t budget = 8 - t.transitions.size();
    std::uniform_int_distribution<std::size_t> extra(1, budget);
    std::size_t n_extra = extra(rng);
    std::uniform_int_distribution<ValueId> vd(0, static_cast<ValueId>(nv - 1));
    for (std::size_t i = 0; i < n_extra; ++i) {
        int kind = std::uniform_int_distribution<int>(0, 3)(rng);
        if (kind == 0)
            t.transitions.push_back({st(rng), {LabelKind::Tau, kNoId}, st(rng)});
        else if (kind == 1)  // a nondeterministic receive
            t.transitions.push_back({st(rng), {LabelKind::BcastRecv, vd(rng)}, st(rng)});
        else
            t.transitions.push_back({st(rng), {LabelKind::BcastSend, vd(rng)}, st(rng)});
    }
    random_init_and_target(t, rng);
    return t;
}

inline TemplateAutomaton random_rendezvous(std::mt19937& rng) {
    TemplateAutomaton t;
    t.kind = SemanticsKind::RendezVous;
    std::uniform_int_distribution<std::size_t> qdist(2, 5), vdist(1, 2), ndist(2, 8);
    std::size_t nq = qdist(rng), nv = vdist(rng);
    for (std::size_t i = 0; i < nq; ++i) t.states.push_back(state_name(i));
    for (std::size_t i = 0; i < nv; ++i) t.values.push_back(value_name(i));
    std::uniform_int_distribution<StateId> st(0, static_cast<StateId>(nq - 1));
    std::uniform_int_distribution<ValueId> vd(0, static_cast<ValueId>(nv - 1));
    std::size_t n = ndist(rng);
    for (std::size_t i = 0; i < n; ++i) {
        int kind = std::uniform_int_distribution<int>(0, 4)(rng);
        if (kind == 0)
            t.transitions.push_back({st(rng), {LabelKind::Tau, kNoId}, st(rng)});
        else if (kind <= 2)
            t.transitions.push_back({st(rng), {LabelKind::Send, vd(rng)}, st(rng)});
        else
            t.transitions.push_back({st(rng), {LabelKind::Recv, vd(rng)}, st(rng)});
    }
    random_init_and_target(t, rng);
    return t;
}

inline TemplateAutomaton random_store(std::mt19937& rng) {
    TemplateAutomaton t;
    t.kind = SemanticsKind::Store;
    std::uniform_int_distribution<std::size_t> qdist(2, 3), ndist(2, 8);
    std::size_t nq = qdist(rng), nv = 2;
    for (std::size_t i = 0; i < nq; ++i) t.states.push_back(state_name(i));
    for (std::size_t i = 0; i < nv; ++i) t.values.push_back(value_name(i));
    std::uniform_int_distribution<StateId> st(0, static_cast<StateId>(nq - 1));
    std::uniform_int_distribution<ValueId> vd(0, static_cast<ValueId>(nv - 1));
    std::size_t n = ndist(rng);
    for (std::size_t i = 0; i < n; ++i) {
        int kind = std::uniform_int_distribution<int>(0, 4)(rng);
        if (kind == 0)
            t.transitions.push_back({st(rng), {LabelKind::Tau, kNoId}, st(rng)});
        else if (kind <= 2)
            t.transitions.push_back({st(rng), {LabelKind::Write, vd(rng)}, st(rng)});
        else
            t.transitions.push_back({st(rng), {LabelKind::Read, vd(rng)}, st(rng)});
    }
    t.init.store0 = vd(rng);
    random_init_and_target(t, rng);
    return t;
}

inline TemplateAutomaton random_lockstore(std::mt19937& rng) {
    TemplateAutomaton t;
    t.kind = SemanticsKind::LockStore;
    std::uniform_int_distribution<int> coin(0, 1);
    // places = states + values + lockfree <= 5
    std::size_t nq = coin(rng) ? 3 : 2;
    std::size_t nv = nq == 3 ? 1 : 2;
    for (std::size_t i = 0; i < nq; ++i) t.states.push_back(state_name(i));
    for (std::size_t i = 0; i < nv; ++i) t.values.push_back(value_name(i));
    // fixed discipline: state 0 is lock-free, the rest hold the lock
    std::vector<StateId> free_states{0}, held;
    for (StateId q = 1; q < nq; ++q) held.push_back(q);
    std::uniform_int_distribution<std::size_t> ndist(2, 8);
    std::uniform_int_distribution<ValueId> vd(0, static_cast<ValueId>(nv - 1));
    auto pick = [&](const std::vector<StateId>& from) {
        return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
    };
    std::size_t n = ndist(rng);
    for (std::size_t i = 0; i < n; ++i) {
        int kind = std::uniform_int_distribution<int>(0, 4)(rng);
        switch (kind) {
            case 0: t.transitions.push_back({pick(free_states), {LabelKind::Lock, kNoId}, pick(held)}); break;
            case 1: t.transitions.push_back({pick(held), {LabelKind::Unlock, kNoId}, pick(free_states)}); break;
            case 2: t.transitions.push_back({pick(held), {LabelKind::Write, vd(rng)}, pick(held)}); break;
            case 3: t.transitions.push_back({pick(held), {LabelKind::Read, vd(rng)}, pick(held)}); break;
            case 4: t.transitions.push_back({pick(held), {LabelKind::Tau, kNoId}, pick(held)}); break;
        }
    }
    t.init.store0 = vd(rng);
    t.init.counts.assign(nq, OmegaCount(0));
    t.init.counts[0] = coin(rng) ? OmegaCount::omega() : OmegaCount(2);
    t.target.demand.assign(nq, 0);
    std::uniform_int_distribution<StateId> st(0, static_cast<StateId>(nq - 1));
    t.target.demand[st(rng)] = std::uniform_int_distribution<Count>(1, 2)(rng);
    return t;
}

inline TemplateAutomaton random_template(SemanticsKind kind, std::mt19937& rng) {
    switch (kind) {
        case SemanticsKind::Broadcast: return random_broadcast(rng);
        case SemanticsKind::RendezVous: return random_rendezvous(rng);
        case SemanticsKind::Store: return random_store(rng);
        case SemanticsKind::LockStore: return random_lockstore(rng);
    }
    return {};
}

inline std::vector<SemanticsKind> all_kinds() {
    return {SemanticsKind::Broadcast, SemanticsKind::RendezVous, SemanticsKind::Store,
            SemanticsKind::LockStore};
}

inline Config make_config(std::vector<Count> counts, std::optional<ValueId> store = {}) {
    return Config{std::move(counts), store};
}

}  // namespace crowdcov::test
