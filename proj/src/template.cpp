#include "crowdcov/template.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace crowdcov {

const char* to_string(SemanticsKind k) {
    switch (k) {
        case SemanticsKind::Broadcast: return "broadcast";
        case SemanticsKind::RendezVous: return "rendezvous";
        case SemanticsKind::Store: return "store";
        case SemanticsKind::LockStore: return "lockstore";
    }
    return "?";
}

bool uses_store(SemanticsKind k) {
    return k == SemanticsKind::Store || k == SemanticsKind::LockStore;
}

bool label_carries_value(LabelKind k) {
    switch (k) {
        case LabelKind::Tau:
        case LabelKind::Lock:
        case LabelKind::Unlock: return false;
        default: return true;
    }
}

bool label_allowed(LabelKind label, SemanticsKind kind) {
    switch (label) {
        case LabelKind::Tau: return true;
        case LabelKind::Send:
        case LabelKind::Recv: return kind == SemanticsKind::RendezVous;
        case LabelKind::BcastSend:
        case LabelKind::BcastRecv: return kind == SemanticsKind::Broadcast;
        case LabelKind::Write:
        case LabelKind::Read: return uses_store(kind);
        case LabelKind::Lock:
        case LabelKind::Unlock: return kind == SemanticsKind::LockStore;
    }
    return false;
}

std::optional<StateId> TemplateAutomaton::state_index(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return static_cast<StateId>(i);
    return std::nullopt;
}

std::optional<ValueId> TemplateAutomaton::value_index(std::string_view name) const {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] == name) return static_cast<ValueId>(i);
    return std::nullopt;
}

ParseError::ParseError(int line_, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}

namespace {

bool is_ident(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    return toks;
}

Count parse_nat(std::string_view s, int line) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        }))
        throw ParseError(line, "expected a natural number, got '" + std::string(s) + "'");
    Count v = 0;
    for (char c : s) v = v * 10 + static_cast<Count>(c - '0');
    return v;
}

struct RawEntry {
    std::string token;
    int line;
};

TransitionLabel parse_label(const std::string& tok, const TemplateAutomaton& t, int line) {
    auto value_of = [&](std::string_view name) -> ValueId {
        auto v = t.value_index(name);
        if (!v) throw ParseError(line, "unknown value '" + std::string(name) + "'");
        return *v;
    };
    if (tok == "tau") return {LabelKind::Tau, kNoId};
    if (tok == "lock") return {LabelKind::Lock, kNoId};
    if (tok == "unlock") return {LabelKind::Unlock, kNoId};
    if (tok.size() >= 4 && (tok.rfind("w(", 0) == 0 || tok.rfind("r(", 0) == 0) &&
        tok.back() == ')') {
        std::string name = tok.substr(2, tok.size() - 3);
        LabelKind k = tok[0] == 'w' ? LabelKind::Write : LabelKind::Read;
        return {k, value_of(name)};
    }
    if (tok.size() >= 3 && tok.ends_with("!!"))
        return {LabelKind::BcastSend, value_of(tok.substr(0, tok.size() - 2))};
    if (tok.size() >= 3 && tok.ends_with("??"))
        return {LabelKind::BcastRecv, value_of(tok.substr(0, tok.size() - 2))};
    if (tok.size() >= 2 && tok.ends_with('!'))
        return {LabelKind::Send, value_of(tok.substr(0, tok.size() - 1))};
    if (tok.size() >= 2 && tok.ends_with('?'))
        return {LabelKind::Recv, value_of(tok.substr(0, tok.size() - 1))};
    throw ParseError(line, "unrecognized transition label '" + tok + "'");
}

}  // namespace

TemplateAutomaton parse_template(std::string_view text) {
    TemplateAutomaton t;
    bool saw_semantics = false, saw_states = false, saw_init = false, saw_target = false;
    bool saw_store_init = false;
    int store_init_line = 0;
    std::string store_init_name;
    std::vector<RawEntry> init_entries, target_entries;
    std::vector<std::array<std::string, 3>> trans_raw;
    std::vector<int> trans_lines;

    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& dir = toks[0];
        if (dir == "semantics") {
            if (saw_semantics) throw ParseError(lineno, "duplicate semantics directive");
            if (toks.size() != 2) throw ParseError(lineno, "semantics expects one keyword");
            if (toks[1] == "broadcast")
                t.kind = SemanticsKind::Broadcast;
            else if (toks[1] == "rendezvous")
                t.kind = SemanticsKind::RendezVous;
            else if (toks[1] == "store")
                t.kind = SemanticsKind::Store;
            else if (toks[1] == "lockstore")
                t.kind = SemanticsKind::LockStore;
            else
                throw ParseError(lineno, "unknown semantics '" + toks[1] + "'");
            saw_semantics = true;
        } else if (dir == "values") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (!is_ident(toks[i]))
                    throw ParseError(lineno, "bad value identifier '" + toks[i] + "'");
                if (t.value_index(toks[i]))
                    throw ParseError(lineno, "duplicate value declaration '" + toks[i] + "'");
                t.values.push_back(toks[i]);
            }
        } else if (dir == "states") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (!is_ident(toks[i]))
                    throw ParseError(lineno, "bad state identifier '" + toks[i] + "'");
                if (t.state_index(toks[i]))
                    throw ParseError(lineno, "duplicate state declaration '" + toks[i] + "'");
                t.states.push_back(toks[i]);
            }
            saw_states = true;
        } else if (dir == "init") {
            if (toks.size() < 2) throw ParseError(lineno, "init expects at least one entry");
            for (std::size_t i = 1; i < toks.size(); ++i)
                init_entries.push_back({toks[i], lineno});
            saw_init = true;
        } else if (dir == "store_init") {
            if (saw_store_init) throw ParseError(lineno, "duplicate store_init directive");
            if (toks.size() != 2) throw ParseError(lineno, "store_init expects one value");
            store_init_name = toks[1];
            store_init_line = lineno;
            saw_store_init = true;
        } else if (dir == "target") {
            if (toks.size() < 2) throw ParseError(lineno, "target expects at least one entry");
            for (std::size_t i = 1; i < toks.size(); ++i)
                target_entries.push_back({toks[i], lineno});
            saw_target = true;
        } else if (dir == "trans") {
            if (toks.size() != 4)
                throw ParseError(lineno, "trans expects: trans <state> <label> <state>");
            trans_raw.push_back({toks[1], toks[2], toks[3]});
            trans_lines.push_back(lineno);
        } else {
            throw ParseError(lineno, "unknown directive '" + dir + "'");
        }
    }

    if (!saw_semantics) throw ParseError(lineno, "missing mandatory section: semantics");
    if (!saw_states) throw ParseError(lineno, "missing mandatory section: states");
    if (!saw_init) throw ParseError(lineno, "missing mandatory section: init");
    if (!saw_target) throw ParseError(lineno, "missing mandatory section: target");
    if (uses_store(t.kind) && !saw_store_init)
        throw ParseError(lineno, "missing mandatory section: store_init");
    if (!uses_store(t.kind) && saw_store_init)
        throw ParseError(store_init_line, "store_init is only allowed for store semantics");

    auto state_of = [&](std::string_view name, int ln) -> StateId {
        auto s = t.state_index(name);
        if (!s) throw ParseError(ln, "unknown state '" + std::string(name) + "'");
        return *s;
    };

    t.init.counts.assign(t.num_states(), OmegaCount(0));
    std::vector<bool> init_seen(t.num_states(), false);
    for (const auto& e : init_entries) {
        auto eq = e.token.find('=');
        if (eq == std::string::npos)
            throw ParseError(e.line, "init entry must be <state>=<nat|omega>");
        StateId s = state_of(e.token.substr(0, eq), e.line);
        std::string rhs = e.token.substr(eq + 1);
        if (init_seen[s])
            throw ParseError(e.line, "duplicate init entry for state '" + t.states[s] + "'");
        init_seen[s] = true;
        t.init.counts[s] = rhs == "omega" ? OmegaCount::omega() : OmegaCount(parse_nat(rhs, e.line));
    }
    if (uses_store(t.kind)) {
        auto v = t.value_index(store_init_name);
        if (!v) throw ParseError(store_init_line, "unknown value '" + store_init_name + "'");
        t.init.store0 = *v;
    }

    t.target.demand.assign(t.num_states(), 0);
    std::vector<bool> target_seen(t.num_states(), false);
    for (const auto& e : target_entries) {
        auto ge = e.token.find(">=");
        StateId s;
        Count k = 1;
        if (ge == std::string::npos) {
            s = state_of(e.token, e.line);
        } else {
            s = state_of(e.token.substr(0, ge), e.line);
            k = parse_nat(e.token.substr(ge + 2), e.line);
        }
        if (target_seen[s])
            throw ParseError(e.line, "duplicate target entry for state '" + t.states[s] + "'");
        target_seen[s] = true;
        t.target.demand[s] = k;
    }

    for (std::size_t i = 0; i < trans_raw.size(); ++i) {
        const auto& [src, lbl, dst] = trans_raw[i];
        int ln = trans_lines[i];
        t.transitions.push_back({state_of(src, ln), parse_label(lbl, t, ln), state_of(dst, ln)});
    }
    return t;
}

std::string label_text(const TemplateAutomaton& t, const TransitionLabel& l) {
    auto val = [&] { return t.values.at(l.value); };
    switch (l.kind) {
        case LabelKind::Tau: return "tau";
        case LabelKind::Send: return val() + "!";
        case LabelKind::Recv: return val() + "?";
        case LabelKind::BcastSend: return val() + "!!";
        case LabelKind::BcastRecv: return val() + "??";
        case LabelKind::Write: return "w(" + val() + ")";
        case LabelKind::Read: return "r(" + val() + ")";
        case LabelKind::Lock: return "lock";
        case LabelKind::Unlock: return "unlock";
    }
    return "?";
}

std::string transition_text(const TemplateAutomaton& t, const Transition& tr) {
    return t.states.at(tr.src) + " " + label_text(t, tr.label) + " " + t.states.at(tr.dst);
}

std::string serialize_template(const TemplateAutomaton& t) {
    std::ostringstream out;
    out << "semantics " << to_string(t.kind) << "\n";
    if (!t.values.empty()) {
        out << "values";
        for (const auto& v : t.values) out << " " << v;
        out << "\n";
    }
    out << "states";
    for (const auto& s : t.states) out << " " << s;
    out << "\n";
    out << "init";
    bool any = false;
    for (std::size_t s = 0; s < t.num_states(); ++s) {
        if (t.init.counts[s] == OmegaCount(0)) continue;
        out << " " << t.states[s] << "=" << to_string(t.init.counts[s]);
        any = true;
    }
    if (!any && !t.states.empty()) out << " " << t.states[0] << "=0";
    out << "\n";
    if (t.init.store0) out << "store_init " << t.values.at(*t.init.store0) << "\n";
    out << "target";
    any = false;
    for (std::size_t s = 0; s < t.num_states(); ++s) {
        if (t.target.demand[s] == 0) continue;
        out << " " << t.states[s] << ">=" << t.target.demand[s];
        any = true;
    }
    if (!any && !t.states.empty()) out << " " << t.states[0] << ">=0";
    out << "\n";
    for (const auto& tr : t.transitions) out << "trans " << transition_text(t, tr) << "\n";
    return out.str();
}

bool ValidationReport::has(Violation::Kind k) const {
    return std::any_of(violations.begin(), violations.end(),
                       [k](const Violation& v) { return v.kind == k; });
}

std::size_t ValidationReport::count(Violation::Kind k) const {
    return static_cast<std::size_t>(std::count_if(
        violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; }));
}

std::vector<LockStatus> lock_statuses(const TemplateAutomaton& t) {
    // Least fixed point of status propagation; independent of iteration order.
    std::vector<unsigned> status(t.num_states(), 0);  // bit 1 = free, bit 2 = held
    for (std::size_t s = 0; s < t.num_states(); ++s)
        if (!(t.init.counts[s] == OmegaCount(0))) status[s] |= 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& tr : t.transitions) {
            unsigned src = status[tr.src];
            unsigned out = 0;
            switch (tr.label.kind) {
                case LabelKind::Lock: out = (src & 1) ? 2u : 0u; break;
                case LabelKind::Unlock: out = (src & 2) ? 1u : 0u; break;
                default: out = src; break;
            }
            if ((status[tr.dst] | out) != status[tr.dst]) {
                status[tr.dst] |= out;
                changed = true;
            }
        }
    }
    std::vector<LockStatus> r(t.num_states());
    for (std::size_t s = 0; s < t.num_states(); ++s) r[s] = static_cast<LockStatus>(status[s]);
    return r;
}

std::vector<bool> held_states(const TemplateAutomaton& t) {
    std::vector<bool> held(t.num_states(), false);
    if (t.kind != SemanticsKind::LockStore) return held;
    auto st = lock_statuses(t);
    for (std::size_t s = 0; s < t.num_states(); ++s)
        held[s] = st[s] == LockStatus::Held || st[s] == LockStatus::Conflict;
    return held;
}

ValidationReport validate(const TemplateAutomaton& t) {
    ValidationReport rep;
    auto add = [&](Violation::Kind k, std::string detail) {
        rep.violations.push_back({k, std::move(detail)});
    };

    for (const auto& tr : t.transitions)
        if (!label_allowed(tr.label.kind, t.kind))
            add(Violation::Kind::LabelKindMismatch,
                "label '" + label_text(t, tr.label) + "' not allowed under " +
                    to_string(t.kind) + " semantics (" + transition_text(t, tr) + ")");

    bool any_init = false;
    for (const auto& c : t.init.counts)
        if (!(c == OmegaCount(0))) any_init = true;
    if (!any_init) add(Violation::Kind::NoInitialProcess, "no state has a nonzero initial count");

    if (std::all_of(t.target.demand.begin(), t.target.demand.end(),
                    [](Count k) { return k == 0; }))
        add(Violation::Kind::EmptyTarget, "target demand is all zero");

    if (t.kind == SemanticsKind::Broadcast) {
        for (StateId q = 0; q < t.num_states(); ++q) {
            for (ValueId v = 0; v < t.values.size(); ++v) {
                bool found = false;
                for (const auto& tr : t.transitions)
                    if (tr.src == q && tr.label.kind == LabelKind::BcastRecv &&
                        tr.label.value == v)
                        found = true;
                if (!found)
                    add(Violation::Kind::MissingReceive,
                        "state '" + t.states[q] + "' has no receive for value '" + t.values[v] +
                            "'");
            }
        }
    }

    if (t.kind == SemanticsKind::LockStore) {
        auto status = lock_statuses(t);
        auto may_free = [&](StateId s) {
            return status[s] == LockStatus::Free || status[s] == LockStatus::Conflict;
        };
        auto may_held = [&](StateId s) {
            return status[s] == LockStatus::Held || status[s] == LockStatus::Conflict;
        };
        for (StateId s = 0; s < t.num_states(); ++s)
            if (status[s] == LockStatus::Conflict)
                add(Violation::Kind::LockStatusConflict,
                    "state '" + t.states[s] + "' is reachable both lock-free and lock-holding");
        for (const auto& tr : t.transitions) {
            switch (tr.label.kind) {
                case LabelKind::Write:
                case LabelKind::Read:
                    if (may_free(tr.src))
                        add(Violation::Kind::AccessWithoutLock,
                            "store access from lock-free state (" + transition_text(t, tr) + ")");
                    break;
                case LabelKind::Lock:
                    if (may_held(tr.src))
                        add(Violation::Kind::LockFromHeld,
                            "lock from lock-holding state (" + transition_text(t, tr) + ")");
                    break;
                case LabelKind::Unlock:
                    if (may_free(tr.src))
                        add(Violation::Kind::UnlockFromFree,
                            "unlock from lock-free state (" + transition_text(t, tr) + ")");
                    break;
                default: break;
            }
        }
        for (StateId s = 0; s < t.num_states(); ++s)
            if (!(t.init.counts[s] == OmegaCount(0)) && may_held(s))
                add(Violation::Kind::InitOnHeldState,
                    "initial count on lock-holding state '" + t.states[s] + "'");
    }
    return rep;
}

TemplateAutomaton complete_receives(const TemplateAutomaton& t) {
    if (t.kind != SemanticsKind::Broadcast)
        throw std::invalid_argument("complete_receives requires broadcast semantics");
    TemplateAutomaton r = t;
    for (StateId q = 0; q < t.num_states(); ++q) {
        for (ValueId v = 0; v < t.values.size(); ++v) {
            bool found = false;
            for (const auto& tr : t.transitions)
                if (tr.src == q && tr.label.kind == LabelKind::BcastRecv && tr.label.value == v)
                    found = true;
            if (!found) r.transitions.push_back({q, {LabelKind::BcastRecv, v}, q});
        }
    }
    return r;
}

}  // namespace crowdcov
