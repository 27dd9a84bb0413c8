/* json_io.hh -- the shared JSON automaton format
 *
 * {"alphabet": ["0","1"], "states": N, "initial": [..],
 *  "transitions": [[from, letter, to], ...],
 *  "acceptance": {"buchi": [..]} | {"parity": {"0": i0, ...}} | {"finite": [..]}}
 *
 * Letters in transitions may be given as alphabet indices or as names.
 */

#pragma once

#include <string>
#include <variant>

#include "sadic/buchi.hh"
#include "sadic/dfa.hh"

namespace sadic {

using ParsedAutomaton = std::variant<BuchiAutomaton, ParityAutomaton, Dfa>;

ParsedAutomaton parse_automaton_json(const std::string& text);

/// Any parsed automaton as a Buchi automaton (parity goes through the
/// standard translation; a finite-acceptance automaton is rejected).
BuchiAutomaton to_buchi(const ParsedAutomaton& a);

std::string buchi_to_json(const BuchiAutomaton& a);
std::string parity_to_json(const ParityAutomaton& a);
std::string dfa_to_json(const Dfa& a, const std::vector<std::string>& letter_names);

} // namespace sadic
