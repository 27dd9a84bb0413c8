/* adic.hh -- congenial expansions and the trace automata over Xi_L
 *
 * B_x reads (class, letter) pairs, rejects on a congeniality violation,
 * tracks the accumulated morphism h_L o sigma_0 ... sigma_{n-1}, and feeds
 * the block values h_L(u_n) to the infinite-product automaton for x. The
 * generated-words automaton is the union of B_x over accepting x; the
 * directed-words automaton combines letter-projected copies through the
 * generating-set family.
 */

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sadic/buchi.hh"
#include "sadic/morphic.hh"
#include "sadic/xi.hh"

namespace sadic {

/// Ultimately periodic directive sequence, optionally letter-augmented.
/// An empty period is allowed only for prefix computations.
struct DirectiveSequence {
    std::vector<Substitution> pre;
    std::vector<Substitution> period;
    std::optional<std::vector<Letter>> letters_pre;
    std::optional<std::vector<Letter>> letters_period;

    std::uint32_t d() const;
    bool augmented() const;
    std::size_t pre_len() const { return pre.size(); }
    std::size_t period_len() const { return period.size(); }
    const Substitution& at(std::size_t n) const;
    Letter letter_at(std::size_t n) const;
    void validate() const;
};

/// Head condition over the preperiod and one full period wrap.
bool is_congenial(const DirectiveSequence& s);

/// All congenial letter augmentations of an ultimately periodic sequence,
/// returned as fully augmented sequences (the substitution period repeats as
/// needed to align shapes). Always between 1 and |Sigma| of them.
std::vector<DirectiveSequence> congenial_augmentations(const DirectiveSequence& s);

/// sigma_0 ... sigma_n(a_n) for a congenial augmented sequence, truncated to
/// the budget; successive outputs extend one another.
Word generated_prefix(const DirectiveSequence& s, std::size_t n,
                      std::size_t budget = Config::defaults().prefix_budget);

/// Exact value of the word generated by a congenial up sequence: either a
/// finite-sort element (the word is finite) or an omega-sort id.
struct GeneratedValue {
    bool is_omega = false;
    std::uint32_t id = 0; // ElemId or OmegaId
};
GeneratedValue generated_value(const DirectiveSequence& s, const OmegaSemigroup& sg,
                               const Config& cfg = Config::defaults());

/// A trace automaton together with its class alphabet.
struct TraceAutomaton {
    BuchiAutomaton aut;
    std::vector<SubstClass> classes;
    std::uint32_t d = 0;
    bool augmented = false; // alphabet is classes x Sigma when set
};

/// Automaton over classes x Sigma accepting the congenial traces whose
/// generated word has value x.
TraceAutomaton build_Bx(const OmegaSemigroup& sg, const std::vector<SubstClass>& classes,
                        bool omega_sort, std::uint32_t x,
                        const Config& cfg = Config::defaults());

/// Union of B_x over accepting x: accepts a trace iff it is congenial and
/// generates a word in the language.
TraceAutomaton build_generated_automaton(const OmegaSemigroup& sg,
                                         const std::vector<SubstClass>& classes,
                                         const Config& cfg = Config::defaults());

/// One element of the generating-set family: values that s-congenial words
/// must jointly realize for a directed word to land in the language.
struct GeneratingSet {
    std::vector<ElemId> fins;
    std::vector<OmegaId> oms;
};

/// Minimal sets (of size at most d) whose generated sub-omega-semigroup
/// meets the accepting set.
std::vector<GeneratingSet> generating_sets(const OmegaSemigroup& sg, std::uint32_t d);

/// Automaton over classes accepting the traces of sequences directing some
/// word in the language.
TraceAutomaton build_directed_automaton(const OmegaSemigroup& sg,
                                        const std::vector<SubstClass>& classes,
                                        const Config& cfg = Config::defaults());

/// Replace each class letter by the named substitutions landing in it.
/// Every set member must match one of the automaton's classes.
BuchiAutomaton relabel_for_finite_S(const TraceAutomaton& t, const SubstitutionSet& set,
                                    const OmegaSemigroup& sg,
                                    const Config& cfg = Config::defaults());

enum class DecideMode { GeneratedWithAugmentation, Directed };

/// Membership of the ultimately periodic trace of s in the generated- or
/// directed-words automaton, evaluated by lasso search on the lazily
/// unfolded construction.
bool decide_up(const DirectiveSequence& s, const OmegaSemigroup& sg, DecideMode mode,
               const Config& cfg = Config::defaults());
bool decide_up(const DirectiveSequence& s, const BuchiAutomaton& a, DecideMode mode,
               const Config& cfg = Config::defaults());

/// Does every tail of the up sequence admit a positive composition?
bool weakly_primitive_up(const DirectiveSequence& s);

} // namespace sadic
