// verdict.hpp -- query outcomes shared by all engines
#pragma once

#include <optional>

#include "crowdcov/semantics.hpp"

namespace crowdcov {

enum class Outcome {
    Safe,            // no crowd size covers the target
    Coverable,       // some crowd size covers the target
    SafeUpTo,        // bounded exploration only; never a proof
    Inapplicable,    // engine preconditions not met
    BudgetExceeded,  // exploration cap hit before a verdict
};

const char* to_string(Outcome o);

struct Stats {
    std::size_t basis = 0;       // final antichain size (backward engine)
    std::size_t nodes = 0;       // configurations / tree nodes / abstract nodes
    std::size_t iterations = 0;  // frontier rounds / fixed-point passes / crowd sizes
    std::size_t candidates = 0;  // predecessor candidates enumerated
    double wall_ms = 0.0;
};

struct Verdict {
    Outcome outcome = Outcome::Safe;
    Count bound = 0;  // SafeUpTo: the explored bound
    std::optional<Witness> witness;
    Stats stats;
};

}  // namespace crowdcov
