// semantics.hpp -- one-step operational semantics over the counting abstraction
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crowdcov/template.hpp"

namespace crowdcov {

/// Counting abstraction of a crowd configuration: per-state process counts,
/// plus the store value for the store semantics.
struct Config {
    std::vector<Count> counts;       // indexed by state
    std::optional<ValueId> store;

    Count total() const;
    bool operator==(const Config&) const = default;
};

bool canonical_less(const Config& a, const Config& b);

struct ConfigLess {
    bool operator()(const Config& a, const Config& b) const { return canonical_less(a, b); }
};

/// One step of the crowd. Broadcast assignments list the receive transitions
/// taken with their process counts (zero entries omitted), ordered by
/// (source state, transition index).
struct Step {
    enum class Kind { Tau, RendezVous, Broadcast, StoreOp, LockOp };
    Kind kind = Kind::Tau;
    TransId trans = kNoId;    // the moving / sending transition
    TransId partner = kNoId;  // rendez-vous: the receive transition
    std::vector<std::pair<TransId, Count>> assignment;
    bool operator==(const Step&) const = default;
};

bool is_valid_config(const TemplateAutomaton& t, const Config& c);
bool meets_target(const TemplateAutomaton& t, const Config& c);
bool is_lock_free(const TemplateAutomaton& t, const Config& c);

/// All steps enabled at c, in canonical order.
std::vector<Step> enabled_steps(const TemplateAutomaton& t, const Config& c);

/// Lazy variant: enumerates in the same order, stops when fn returns false.
void for_each_enabled_step(const TemplateAutomaton& t, const Config& c,
                           const std::function<bool(const Step&)>& fn);

bool step_enabled(const TemplateAutomaton& t, const Config& c, const Step& s);

/// Successor configuration. Throws std::invalid_argument if s is not enabled.
Config apply_step(const TemplateAutomaton& t, const Config& c, const Step& s);

/// A replayable proof of coverability: a crowd size, a concrete initial
/// configuration, and the step sequence.
struct Witness {
    Count n = 0;
    Config init;
    std::vector<Step> steps;
};

struct ReplayResult {
    bool ok = false;
    int failed_step = -1;  // index of the failing step; -1 for init/target problems
    std::string error;
    std::vector<Config> trace;  // configurations visited, starting at init
};

/// Replays w from its initial configuration, verifying enabledness of every
/// step and the target demand at the end.
ReplayResult replay_witness(const TemplateAutomaton& t, const Witness& w);

}  // namespace crowdcov
