// template.hpp -- crowd protocol templates: parsing, validation, receive completion
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crowdcov/vec.hpp"

namespace crowdcov {

enum class SemanticsKind { Broadcast, RendezVous, Store, LockStore };

const char* to_string(SemanticsKind k);
bool uses_store(SemanticsKind k);

enum class LabelKind { Tau, Send, Recv, BcastSend, BcastRecv, Write, Read, Lock, Unlock };

struct TransitionLabel {
    LabelKind kind = LabelKind::Tau;
    ValueId value = kNoId;  // set for value-carrying label kinds
    bool operator==(const TransitionLabel&) const = default;
};

bool label_carries_value(LabelKind k);
bool label_allowed(LabelKind label, SemanticsKind kind);

struct Transition {
    StateId src = 0;
    TransitionLabel label;
    StateId dst = 0;
    bool operator==(const Transition&) const = default;
};

struct InitialSpec {
    std::vector<OmegaCount> counts;   // indexed by state
    std::optional<ValueId> store0;    // present iff the semantics has a store
    bool operator==(const InitialSpec&) const = default;
};

struct TargetSpec {
    std::vector<Count> demand;        // indexed by state
    bool operator==(const TargetSpec&) const = default;
};

struct TemplateAutomaton {
    SemanticsKind kind = SemanticsKind::Broadcast;
    std::vector<std::string> states;
    std::vector<std::string> values;
    std::vector<Transition> transitions;
    InitialSpec init;
    TargetSpec target;

    std::size_t num_states() const { return states.size(); }
    std::optional<StateId> state_index(std::string_view name) const;
    std::optional<ValueId> value_index(std::string_view name) const;
    bool operator==(const TemplateAutomaton&) const = default;
};

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what);
    int line;
};

/// Parses the crowd-file format. Throws ParseError with a line number.
TemplateAutomaton parse_template(std::string_view text);

/// Emits a crowd file that parses back to an equal template.
std::string serialize_template(const TemplateAutomaton& t);

std::string label_text(const TemplateAutomaton& t, const TransitionLabel& l);
std::string transition_text(const TemplateAutomaton& t, const Transition& tr);

struct Violation {
    enum class Kind {
        LabelKindMismatch,   // label not available under the declared semantics
        MissingReceive,      // broadcast totality: no v?? out of some state
        LockStatusConflict,  // state reachable both lock-free and lock-holding
        AccessWithoutLock,   // w/r transition out of a lock-free state
        LockFromHeld,
        UnlockFromFree,
        InitOnHeldState,
        NoInitialProcess,
        EmptyTarget,
    };
    Kind kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(Violation::Kind k) const;
    std::size_t count(Violation::Kind k) const;
};

ValidationReport validate(const TemplateAutomaton& t);

/// Lock status of each state under propagation from the initial states.
/// Lock flips Free -> Held, Unlock flips Held -> Free, everything else
/// preserves the status. Unknown marks states not reached by propagation.
enum class LockStatus : unsigned { Unknown = 0, Free = 1, Held = 2, Conflict = 3 };

std::vector<LockStatus> lock_statuses(const TemplateAutomaton& t);

/// States that may hold the lock (status Held or Conflict).
std::vector<bool> held_states(const TemplateAutomaton& t);

/// Adds a self-loop q -v??-> q for every (state, value) pair without a
/// receive, so the result passes totality validation. Broadcast only.
TemplateAutomaton complete_receives(const TemplateAutomaton& t);

}  // namespace crowdcov
