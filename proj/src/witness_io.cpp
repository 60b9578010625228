#include "crowdcov/witness_io.hpp"

#include <sstream>

namespace crowdcov {

namespace {

std::string triple(const TemplateAutomaton& t, TransId i) {
    return transition_text(t, t.transitions.at(i));
}

}  // namespace

std::string step_text(const TemplateAutomaton& t, const Step& s) {
    std::ostringstream out;
    out << triple(t, s.trans);
    switch (s.kind) {
        case Step::Kind::RendezVous: out << " " << triple(t, s.partner); break;
        case Step::Kind::Broadcast:
            for (const auto& [ri, k] : s.assignment) out << " " << triple(t, ri) << " x" << k;
            break;
        default: break;
    }
    return out.str();
}

std::string serialize_witness(const TemplateAutomaton& t, const Witness& w) {
    std::ostringstream out;
    out << "witness n=" << w.n << "\n";
    out << "init";
    for (std::size_t s = 0; s < t.num_states(); ++s)
        if (w.init.counts[s] > 0) out << " " << t.states[s] << "=" << w.init.counts[s];
    if (w.init.store) out << " store=" << t.values.at(*w.init.store);
    out << "\n";
    for (const auto& s : w.steps) out << "step " << step_text(t, s) << "\n";
    return out.str();
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string tok;
    while (in >> tok) {
        if (tok.starts_with('#')) break;
        toks.push_back(tok);
    }
    return toks;
}

TransId find_transition(const TemplateAutomaton& t, const std::string& src,
                        const std::string& lbl, const std::string& dst, int line) {
    for (TransId i = 0; i < t.transitions.size(); ++i) {
        const auto& tr = t.transitions[i];
        if (t.states[tr.src] == src && t.states[tr.dst] == dst &&
            label_text(t, tr.label) == lbl)
            return i;
    }
    throw ParseError(line, "no such transition: " + src + " " + lbl + " " + dst);
}

Count parse_count(const std::string& s, int line) {
    try {
        return static_cast<Count>(std::stoull(s));
    } catch (...) {
        throw ParseError(line, "expected a number, got '" + s + "'");
    }
}

}  // namespace

Witness parse_witness(const TemplateAutomaton& t, std::string_view text) {
    Witness w;
    bool saw_header = false, saw_init = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "witness") {
            if (toks.size() != 2 || !toks[1].starts_with("n="))
                throw ParseError(lineno, "expected: witness n=<nat>");
            w.n = parse_count(toks[1].substr(2), lineno);
            saw_header = true;
        } else if (toks[0] == "init") {
            w.init.counts.assign(t.num_states(), 0);
            for (std::size_t i = 1; i < toks.size(); ++i) {
                auto eq = toks[i].find('=');
                if (eq == std::string::npos)
                    throw ParseError(lineno, "init entry must be <state>=<nat>");
                std::string name = toks[i].substr(0, eq);
                if (name == "store") {
                    auto v = t.value_index(toks[i].substr(eq + 1));
                    if (!v) throw ParseError(lineno, "unknown value in store entry");
                    w.init.store = *v;
                    continue;
                }
                auto s = t.state_index(name);
                if (!s) throw ParseError(lineno, "unknown state '" + name + "'");
                w.init.counts[*s] = parse_count(toks[i].substr(eq + 1), lineno);
            }
            saw_init = true;
        } else if (toks[0] == "step") {
            if (toks.size() < 4) throw ParseError(lineno, "step expects a transition triple");
            TransId main = find_transition(t, toks[1], toks[2], toks[3], lineno);
            const auto& tr = t.transitions[main];
            Step s;
            s.trans = main;
            switch (tr.label.kind) {
                case LabelKind::Tau: s.kind = Step::Kind::Tau; break;
                case LabelKind::Send: {
                    s.kind = Step::Kind::RendezVous;
                    if (toks.size() != 7)
                        throw ParseError(lineno, "rendez-vous step expects two triples");
                    s.partner = find_transition(t, toks[4], toks[5], toks[6], lineno);
                    break;
                }
                case LabelKind::BcastSend: {
                    s.kind = Step::Kind::Broadcast;
                    if ((toks.size() - 4) % 4 != 0)
                        throw ParseError(lineno,
                                         "broadcast step expects receive triples with xCOUNT");
                    for (std::size_t i = 4; i < toks.size(); i += 4) {
                        TransId r = find_transition(t, toks[i], toks[i + 1], toks[i + 2], lineno);
                        if (!toks[i + 3].starts_with('x'))
                            throw ParseError(lineno, "expected xCOUNT after receive triple");
                        s.assignment.emplace_back(r, parse_count(toks[i + 3].substr(1), lineno));
                    }
                    break;
                }
                case LabelKind::Write:
                case LabelKind::Read: s.kind = Step::Kind::StoreOp; break;
                case LabelKind::Lock:
                case LabelKind::Unlock: s.kind = Step::Kind::LockOp; break;
                default:
                    throw ParseError(lineno, "step transition cannot initiate a move");
            }
            w.steps.push_back(std::move(s));
        } else {
            throw ParseError(lineno, "unknown witness directive '" + toks[0] + "'");
        }
    }
    if (!saw_header) throw ParseError(lineno, "missing witness header");
    if (!saw_init) throw ParseError(lineno, "missing witness init line");
    return w;
}

}  // namespace crowdcov
