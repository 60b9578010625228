#include "crowdcov/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <stdexcept>

namespace crowdcov {

namespace {

// All ways of splitting extra processes over the omega states, lexicographic.
std::vector<Config> initial_configs(const TemplateAutomaton& t, Count n) {
    Count finite_sum = 0;
    std::vector<StateId> omega_states;
    for (StateId s = 0; s < t.num_states(); ++s) {
        if (t.init.counts[s].is_omega())
            omega_states.push_back(s);
        else
            finite_sum += t.init.counts[s].value();
    }
    if (n < finite_sum)
        throw std::invalid_argument("crowd size smaller than the finite initial entries");
    Count rest = n - finite_sum;
    std::vector<Config> out;
    if (omega_states.empty()) {
        if (rest > 0) return out;  // no way to place the extra processes
        Config c;
        c.counts.assign(t.num_states(), 0);
        for (StateId s = 0; s < t.num_states(); ++s) c.counts[s] = t.init.counts[s].value();
        c.store = t.init.store0;
        out.push_back(std::move(c));
        return out;
    }
    std::vector<Count> split(omega_states.size(), 0);
    split.back() = rest;
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
        Config c;
        c.counts.assign(t.num_states(), 0);
        for (StateId s = 0; s < t.num_states(); ++s)
            if (!t.init.counts[s].is_omega()) c.counts[s] = t.init.counts[s].value();
        for (std::size_t i = 0; i < omega_states.size(); ++i)
            c.counts[omega_states[i]] += split[i];
        c.store = t.init.store0;
        out.push_back(std::move(c));
        if (!next_composition(split)) break;
    }
    std::sort(out.begin(), out.end(), ConfigLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

ReachSet explore(const TemplateAutomaton& t, Count n, std::size_t budget) {
    ReachSet rs;
    rs.n = n;
    std::vector<Config> layer = initial_configs(t, n);
    for (auto& c : layer)
        if (t.kind == SemanticsKind::LockStore && !is_valid_config(t, c))
            throw std::invalid_argument("initial configuration violates the lock invariant");
    for (const auto& c : layer) rs.configs.insert(c);
    while (!layer.empty()) {
        std::vector<Config> next;
        for (const auto& c : layer) {
            for (const Step& s : enabled_steps(t, c)) {
                Config d = apply_step(t, c, s);
                if (rs.configs.insert(d).second) {
                    rs.parent.emplace(d, std::make_pair(s, c));
                    next.push_back(std::move(d));
                    if (rs.configs.size() > budget) {
                        rs.budget_exceeded = true;
                        return rs;
                    }
                }
            }
        }
        std::sort(next.begin(), next.end(), ConfigLess{});
        layer = std::move(next);
    }
    return rs;
}

Verdict oracle_coverable(const TemplateAutomaton& t, Count nmax, std::size_t budget) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    std::size_t explored = 0;
    Count finite_sum = 0;
    bool has_omega = false;
    for (StateId s = 0; s < t.num_states(); ++s) {
        if (t.init.counts[s].is_omega())
            has_omega = true;
        else
            finite_sum += t.init.counts[s].value();
    }
    for (Count n = finite_sum; n <= nmax; ++n) {
        if (!has_omega && n > finite_sum) break;
        v.stats.iterations += 1;
        ReachSet rs = explore(t, n, budget);
        explored += rs.configs.size();
        if (rs.budget_exceeded) {
            v.outcome = Outcome::BudgetExceeded;
            v.stats.nodes = explored;
            return v;
        }
        // canonical scan; parent links give a minimal-step trace
        std::optional<Config> hit;
        Count best_depth = 0;
        for (const auto& c : rs.configs) {
            if (!meets_target(t, c)) continue;
            Count depth = 0;
            for (Config cur = c; rs.parent.count(cur);) {
                cur = rs.parent.at(cur).second;
                ++depth;
            }
            if (!hit || depth < best_depth) {
                hit = c;
                best_depth = depth;
            }
        }
        if (hit) {
            Witness w;
            w.n = n;
            std::vector<Step> steps;
            Config cur = *hit;
            while (rs.parent.count(cur)) {
                auto& [s, p] = rs.parent.at(cur);
                steps.push_back(s);
                cur = p;
            }
            std::reverse(steps.begin(), steps.end());
            w.init = cur;
            w.steps = std::move(steps);
            v.outcome = Outcome::Coverable;
            v.witness = std::move(w);
            v.stats.nodes = explored;
            v.stats.wall_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
            return v;
        }
    }
    v.outcome = Outcome::SafeUpTo;
    v.bound = nmax;
    v.stats.nodes = explored;
    v.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return v;
}

std::set<std::vector<Count>> brute_pred(const ExtendedNet& net, const std::vector<Count>& m,
                                        Count bound) {
    std::set<std::vector<Count>> preds;
    std::vector<Count> d(net.num_places(), 0);
    auto covers = [&](const std::vector<Count>& c) {
        for (std::size_t p = 0; p < m.size(); ++p)
            if (c[p] < m[p]) return false;
        return true;
    };
    while (true) {
        for (const auto& succ : net_successors(net, d)) {
            if (covers(succ)) {
                preds.insert(d);
                break;
            }
        }
        // odometer over the box
        std::size_t p = d.size();
        bool advanced = false;
        while (p-- > 0) {
            if (d[p] < bound) {
                d[p] += 1;
                advanced = true;
                break;
            }
            d[p] = 0;
        }
        if (!advanced) break;
    }
    return preds;
}

BrutePredOracle::BrutePredOracle(const ExtendedNet& net, Count bound) : bound_(bound) {
    std::vector<Count> d(net.num_places(), 0);
    while (true) {
        box_.push_back(d);
        std::size_t p = d.size();
        bool advanced = false;
        while (p-- > 0) {
            if (d[p] < bound) {
                d[p] += 1;
                advanced = true;
                break;
            }
            d[p] = 0;
        }
        if (!advanced) break;
    }
    maxima_.reserve(box_.size());
    auto leq = [](const std::vector<Count>& a, const std::vector<Count>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    };
    for (const auto& v : box_) {
        auto succs = net_successors(net, v);
        std::vector<std::vector<Count>> maxima;
        for (const auto& s : succs) {
            bool dominated = false;
            for (const auto& o : succs)
                if (&o != &s && leq(s, o) && s != o) {
                    dominated = true;
                    break;
                }
            if (!dominated) maxima.push_back(s);
        }
        maxima_.push_back(std::move(maxima));
    }
}

bool BrutePredOracle::is_pred(std::size_t box_index, const std::vector<Count>& m) const {
    for (const auto& s : maxima_[box_index]) {
        bool ok = true;
        for (std::size_t p = 0; p < m.size(); ++p)
            if (s[p] < m[p]) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

std::set<std::vector<Count>> BrutePredOracle::pred(const std::vector<Count>& m) const {
    std::set<std::vector<Count>> out;
    for (std::size_t i = 0; i < box_.size(); ++i)
        if (is_pred(i, m)) out.insert(box_[i]);
    return out;
}

}  // namespace crowdcov
