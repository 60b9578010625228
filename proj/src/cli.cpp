#include "crowdcov/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "crowdcov/engines.hpp"
#include "crowdcov/oracle.hpp"
#include "crowdcov/witness_io.hpp"
#include "json.hpp"

namespace crowdcov {

using json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_text(const TemplateAutomaton& t, const Config& c) {
    std::ostringstream out;
    bool any = false;
    for (std::size_t s = 0; s < t.num_states(); ++s) {
        if (c.counts[s] == 0) continue;
        if (any) out << " ";
        out << t.states[s] << "=" << c.counts[s];
        any = true;
    }
    if (c.store) {
        if (any) out << " ";
        out << "store=" << t.values.at(*c.store);
        any = true;
    }
    if (!any) out << "-";
    return out.str();
}

std::string violation_text(const Violation& v) {
    return v.detail;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string digest_hex(std::string_view data) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(data);
    return out.str();
}

json witness_json(const TemplateAutomaton& t, const Witness& w) {
    json init = json::object();
    for (std::size_t s = 0; s < t.num_states(); ++s)
        if (w.init.counts[s] > 0) init[t.states[s]] = w.init.counts[s];
    if (w.init.store) init["store"] = t.values.at(*w.init.store);
    json steps = json::array();
    for (const auto& s : w.steps) steps.push_back(step_text(t, s));
    return json{{"n", w.n}, {"init", std::move(init)}, {"steps", std::move(steps)}};
}

json stats_json(const Stats& s) {
    return json{{"basis", s.basis},
                {"nodes", s.nodes},
                {"iterations", s.iterations},
                {"candidates", s.candidates}};
}

int outcome_exit(Outcome o) {
    switch (o) {
        case Outcome::Safe: return exit_code::kSafe;
        case Outcome::Coverable: return exit_code::kCoverable;
        case Outcome::SafeUpTo: return exit_code::kBounded;
        case Outcome::Inapplicable: return exit_code::kInapplicable;
        case Outcome::BudgetExceeded: return exit_code::kBounded;
    }
    return exit_code::kInputError;
}

struct LoadedTemplate {
    TemplateAutomaton t;
    std::string digest;
};

LoadedTemplate load(const std::string& path) {
    std::string text = read_file(path);
    return {parse_template(text), digest_hex(text)};
}

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string fmt_ms(double ms) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3) << ms;
    return out.str();
}

}  // namespace

int cmd_check(const std::string& path, const CheckOptions& opt, std::ostream& out,
              std::ostream& err) {
    auto start = std::chrono::steady_clock::now();
    LoadedTemplate loaded;
    try {
        loaded = load(path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::kInputError;
    }
    TemplateAutomaton t = std::move(loaded.t);
    if (opt.complete && t.kind == SemanticsKind::Broadcast) t = complete_receives(t);

    auto report = validate(t);
    if (!report.ok()) {
        if (opt.json) {
            json j{{"verdict", "INVALID"}, {"engine", "none"}, {"digest", loaded.digest}};
            json violations = json::array();
            for (const auto& v : report.violations) violations.push_back(violation_text(v));
            j["violations"] = std::move(violations);
            j["stats"] = stats_json(Stats{});
            j["time_ms"] = ms_since(start);
            out << j.dump() << "\n";
        }
        for (const auto& v : report.violations) err << "violation: " << violation_text(v) << "\n";
        return exit_code::kInputError;
    }

    Engine engine;
    if (opt.engine == "auto") {
        engine = auto_select(t);
    } else if (opt.engine == "backward") {
        engine = Engine::Backward;
    } else if (opt.engine == "km") {
        engine = Engine::KarpMiller;
    } else if (opt.engine == "leaderless") {
        engine = t.kind == SemanticsKind::Store ? Engine::LeaderlessStore : Engine::LeaderlessRv;
    } else if (opt.engine == "oracle") {
        engine = Engine::Oracle;
    } else {
        err << "error: unknown engine '" << opt.engine << "'\n";
        return exit_code::kInputError;
    }

    ExtendedNet net = compile(t);
    Verdict v;
    switch (engine) {
        case Engine::Backward: v = backward_check(t, net, opt.witness); break;
        case Engine::KarpMiller: v = km_check(t, net); break;
        case Engine::LeaderlessRv: v = leaderless_rv(t); break;
        case Engine::LeaderlessStore: v = leaderless_store(t, opt.budget); break;
        case Engine::Oracle: v = oracle_coverable(t, opt.oracle_n, opt.budget); break;
    }
    // the forward engines prove coverability without a trace; the backward
    // engine supplies one on request
    if (opt.witness && v.outcome == Outcome::Coverable && !v.witness &&
        engine != Engine::Backward)
        v.witness = backward_check(t, net, true).witness;

    if (opt.json) {
        json j{{"verdict", to_string(v.outcome)},
               {"engine", to_string(engine)},
               {"digest", loaded.digest}};
        if (v.outcome == Outcome::SafeUpTo) j["n"] = v.bound;
        if (v.witness) {
            j["n"] = v.witness->n;
            if (opt.witness) j["witness"] = witness_json(t, *v.witness);
        }
        j["stats"] = stats_json(v.stats);
        j["time_ms"] = ms_since(start);
        out << j.dump() << "\n";
    } else {
        out << "verdict: " << to_string(v.outcome);
        if (v.outcome == Outcome::SafeUpTo) out << "(" << v.bound << ")";
        out << "\n";
        out << "engine: " << to_string(engine) << "\n";
        if (v.witness) {
            out << "n: " << v.witness->n << "\n";
            if (opt.witness) out << serialize_witness(t, *v.witness);
        }
        out << "stats: basis=" << v.stats.basis << " nodes=" << v.stats.nodes
            << " iterations=" << v.stats.iterations << " candidates=" << v.stats.candidates
            << "\n";
        out << "time: " << fmt_ms(ms_since(start)) << " ms\n";
    }
    return outcome_exit(v.outcome);
}

int cmd_explore(const std::string& path, Count n, std::size_t budget, std::ostream& out,
                std::ostream& err) {
    LoadedTemplate loaded;
    try {
        loaded = load(path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::kInputError;
    }
    auto report = validate(loaded.t);
    if (!report.ok()) {
        for (const auto& v : report.violations) err << "violation: " << violation_text(v) << "\n";
        return exit_code::kInputError;
    }
    ReachSet rs;
    try {
        rs = explore(loaded.t, n, budget);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::kInputError;
    }
    if (rs.budget_exceeded) {
        err << "error: budget exceeded after " << rs.configs.size() << " configurations\n";
        return exit_code::kBounded;
    }
    for (const auto& c : rs.configs) out << config_text(loaded.t, c) << "\n";
    out << "configs=" << rs.configs.size() << "\n";
    return exit_code::kSafe;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
    LoadedTemplate loaded;
    try {
        loaded = load(path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::kInputError;
    }
    auto report = validate(loaded.t);
    if (report.ok()) {
        out << "valid\n";
        return exit_code::kSafe;
    }
    for (const auto& v : report.violations) out << "violation: " << violation_text(v) << "\n";
    return exit_code::kInputError;
}

int cmd_compile(const std::string& path, std::ostream& out, std::ostream& err) {
    LoadedTemplate loaded;
    try {
        loaded = load(path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::kInputError;
    }
    auto report = validate(loaded.t);
    if (!report.ok()) {
        for (const auto& v : report.violations) err << "violation: " << violation_text(v) << "\n";
        return exit_code::kInputError;
    }
    out << dump_net(compile(loaded.t));
    return exit_code::kSafe;
}

}  // namespace crowdcov
