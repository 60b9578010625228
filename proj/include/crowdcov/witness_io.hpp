// witness_io.hpp -- replayable text form of witnesses, mirroring the trans syntax
#pragma once

#include <string>
#include <string_view>

#include "crowdcov/semantics.hpp"

namespace crowdcov {

/// One step in the trans syntax: the main triple, then a receive triple for
/// rendez-vous, or receive triples with xCOUNT multiplicities for broadcasts.
std::string step_text(const TemplateAutomaton& t, const Step& s);

std::string serialize_witness(const TemplateAutomaton& t, const Witness& w);

/// Parses the output of serialize_witness. Throws ParseError.
Witness parse_witness(const TemplateAutomaton& t, std::string_view text);

}  // namespace crowdcov
