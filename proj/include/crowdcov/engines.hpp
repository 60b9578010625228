// engines.hpp -- the decision procedures: backward, Karp-Miller, leaderless fixed points
#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "crowdcov/net.hpp"
#include "crowdcov/ucs.hpp"
#include "crowdcov/verdict.hpp"

namespace crowdcov {

struct BackwardLink {
    std::uint32_t trans = kNoId;  // ordinary or broadcast index
    bool is_broadcast = false;
    SparseVec parent;             // demand covered one step forward
    std::vector<Count> routing;   // broadcast: demanded tokens per transfer edge
};

using BackwardLinks = std::map<SparseVec, BackwardLink, SparseVecLess>;

struct BackwardRun {
    Basis basis;
    BackwardLinks links;
    std::optional<SparseVec> covering;  // element meeting the initial family
    Stats stats;
};

/// Saturates the predecessor antichain from the target demand; terminates by
/// the well-quasi-order on count vectors.
BackwardRun run_backward(const ExtendedNet& net);

/// Concretizes a backward chain into a replayable witness. Throws
/// std::logic_error on internal inconsistency.
Witness extract_witness(const TemplateAutomaton& t, const ExtendedNet& net,
                        const BackwardLinks& links, const SparseVec& covering);

/// Complete decision procedure for every semantics.
Verdict backward_check(const TemplateAutomaton& t, const ExtendedNet& net,
                       bool want_witness = true);

struct KMGraph {
    std::vector<GenConfig> nodes;  // root first, discovery order
    std::vector<std::tuple<std::uint32_t, TransId, std::uint32_t>> edges;
    bool contains_node(const GenConfig& g) const;
};

/// Karp-Miller graph with node sharing. Throws std::invalid_argument on nets
/// with broadcast transitions (transfer acceleration is not supported).
KMGraph km_build(const ExtendedNet& net);

bool km_coverable(const KMGraph& g, const SparseVec& target);

/// Verdict wrapper; Inapplicable for broadcast templates.
Verdict km_check(const TemplateAutomaton& t, const ExtendedNet& net);

struct OmegaFixpoint {
    std::vector<bool> omega;  // per state: reachable with arbitrarily many processes
    std::size_t iterations = 0;
};

/// The saturation underlying the leaderless rendez-vous engine.
OmegaFixpoint leaderless_rv_fixpoint(const TemplateAutomaton& t);

/// Polynomial fixed-point engine; requires rendez-vous semantics with every
/// nonzero initial entry omega. Coverable verdicts carry no witness.
Verdict leaderless_rv(const TemplateAutomaton& t);

/// Exact search over (omega-set, store value) nodes; requires store semantics
/// with every nonzero initial entry omega.
Verdict leaderless_store(const TemplateAutomaton& t, std::size_t budget = kDefaultBudget);

enum class Engine { Backward, KarpMiller, LeaderlessRv, LeaderlessStore, Oracle };

const char* to_string(Engine e);

/// True when a leaderless engine's preconditions hold for t.
bool leaderless_applicable(const TemplateAutomaton& t);

/// Leaderless engine when applicable, backward otherwise. Karp-Miller is
/// never auto-selected.
Engine auto_select(const TemplateAutomaton& t);

}  // namespace crowdcov
