/* buchi.hh -- Buchi and parity automata, lasso membership, lazy sources
 */

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sadic/config.hh"
#include "sadic/words.hh"

namespace sadic {

/// Nondeterministic Buchi automaton with an explicit transition table.
struct BuchiAutomaton {
    std::uint32_t n_letters = 0;
    std::vector<std::string> letter_names; // optional, same length as alphabet
    std::uint32_t n_states = 0;
    std::vector<std::uint32_t> initial;
    // delta[q][a] = sorted target list
    std::vector<std::vector<std::vector<std::uint32_t>>> delta;
    std::vector<bool> accepting;

    void add_transition(std::uint32_t from, std::uint32_t letter, std::uint32_t to);
    void finalize(); // sort + dedup target lists
};

/// Deterministic parity automaton; acceptance is "limsup of index is even"
/// on the unique run.
struct ParityAutomaton {
    std::uint32_t n_letters = 0;
    std::vector<std::string> letter_names;
    std::uint32_t n_states = 0;
    std::uint32_t initial = 0;
    std::vector<std::vector<std::uint32_t>> delta; // total
    std::vector<std::uint32_t> index;
};

/// Standard parity-to-Buchi translation: guess the even value of the limsup
/// and verify it from that point on.
BuchiAutomaton parity_to_buchi(const ParityAutomaton& p);

/// An automaton revealed one transition at a time. States are dense ids
/// interned by the implementation on demand; both explicitly stored and
/// lazily constructed automata satisfy this interface, so membership and
/// materialization run on one code path.
class BuchiSource {
  public:
    virtual ~BuchiSource() = default;
    virtual std::uint32_t alphabet_size() const = 0;
    virtual std::vector<std::uint32_t> initial_states() = 0;
    virtual void successors(std::uint32_t state, std::uint32_t letter,
                            std::vector<std::uint32_t>& out) = 0;
    virtual bool is_accepting(std::uint32_t state) = 0;
};

/// Wraps an explicit automaton as a source.
class ExplicitSource final : public BuchiSource {
  public:
    explicit ExplicitSource(const BuchiAutomaton& a) : aut_(a) {}
    std::uint32_t alphabet_size() const override { return aut_.n_letters; }
    std::vector<std::uint32_t> initial_states() override { return aut_.initial; }
    void successors(std::uint32_t s, std::uint32_t a, std::vector<std::uint32_t>& out) override {
        out = aut_.delta[s][a];
    }
    bool is_accepting(std::uint32_t s) override { return aut_.accepting[s]; }

  private:
    const BuchiAutomaton& aut_;
};

/// Explores every reachable state of a source into an explicit automaton.
BuchiAutomaton materialize(BuchiSource& src, const Config& cfg = Config::defaults());

/// Does the source accept the ultimately periodic word pre * period^omega?
/// Decided by a cycle search on the product with the lasso shape; this is the
/// direct-run oracle, independent of any semigroup algebra.
bool up_member(BuchiSource& src, const Word& pre, const Word& period);

/// Direct lasso acceptance check of u v^omega on an explicit automaton.
bool accepts_up_direct(const BuchiAutomaton& a, const Word& u, const Word& v);

/// Language union; alphabets must agree.
BuchiAutomaton buchi_union(const BuchiAutomaton& a, const BuchiAutomaton& b);

/// Language intersection via the usual two-phase counter product.
BuchiAutomaton buchi_intersect(const BuchiAutomaton& a, const BuchiAutomaton& b,
                               const Config& cfg = Config::defaults());

/// Is the accepted language empty? (SCC-based.)
bool buchi_is_empty(const BuchiAutomaton& a);

std::string buchi_to_dot(const BuchiAutomaton& a);

} // namespace sadic
