// oracle.hpp -- ground truth by exhaustive search at a fixed crowd size
#pragma once

#include <map>
#include <set>
#include <vector>

#include "crowdcov/net.hpp"
#include "crowdcov/semantics.hpp"
#include "crowdcov/verdict.hpp"

namespace crowdcov {

struct ReachSet {
    Count n = 0;
    std::set<Config, ConfigLess> configs;
    // BFS tree: first-discovery predecessor of each non-initial configuration.
    std::map<Config, std::pair<Step, Config>, ConfigLess> parent;
    bool budget_exceeded = false;
};

/// Exactly the configurations reachable with n processes, over all ways of
/// splitting the processes left after the finite initial entries among the
/// omega states. Throws std::invalid_argument when n is too small.
ReachSet explore(const TemplateAutomaton& t, Count n, std::size_t budget = kDefaultBudget);

/// Bounded surrogate of the coverability query: Coverable with a replayable
/// witness for the first crowd size <= nmax that reaches the target,
/// otherwise SafeUpTo(nmax). Never reports Safe.
Verdict oracle_coverable(const TemplateAutomaton& t, Count nmax,
                         std::size_t budget = kDefaultBudget);

/// All vectors <= bound componentwise with some one-step net successor
/// covering m. Test oracle for the predecessor bases.
std::set<std::vector<Count>> brute_pred(const ExtendedNet& net, const std::vector<Count>& m,
                                        Count bound);

/// Memoizing variant for corpus sweeps: successor antichains are computed
/// once per net and reused across demand vectors.
class BrutePredOracle {
public:
    BrutePredOracle(const ExtendedNet& net, Count bound);

    bool is_pred(std::size_t box_index, const std::vector<Count>& m) const;
    std::set<std::vector<Count>> pred(const std::vector<Count>& m) const;

    const std::vector<std::vector<Count>>& box() const { return box_; }

private:
    Count bound_;
    std::vector<std::vector<Count>> box_;                   // all vectors in [0,bound]^places
    std::vector<std::vector<std::vector<Count>>> maxima_;   // maximal successors per box vector
};

}  // namespace crowdcov
