/* semigroup.hh -- the transition omega-semigroup of a Buchi automaton
 *
 * Finite-word sort: transition profiles, Q x Q matrices over
 * {none < path < path-via-accepting}, closed under the max-of-combine
 * product. Omega sort: state sets "accepting run from here on this tail".
 * Element id 0 is the adjoined identity 1_M; ids 1..nf are M_f.
 */

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "sadic/buchi.hh"
#include "sadic/config.hh"
#include "sadic/dfa.hh"

namespace sadic {

enum PathKind : std::uint8_t { kNone = 0, kPath = 1, kPathAcc = 2 };

/// Q x Q matrix over {none, path, path-via-accepting} summarising all runs
/// of the automaton on one finite word.
struct Profile {
    std::uint32_t n = 0;
    std::vector<std::uint8_t> cells; // row-major

    std::uint8_t at(std::uint32_t q, std::uint32_t r) const { return cells[q * n + r]; }
    std::uint8_t& at(std::uint32_t q, std::uint32_t r) { return cells[q * n + r]; }
    bool operator<(const Profile& o) const { return cells < o.cells; }
    bool operator==(const Profile& o) const { return cells == o.cells; }
};

Profile profile_product(const Profile& a, const Profile& b);

/// Id of an element of the omega sort.
using OmegaId = std::uint32_t;

/// An element of the omega sort: the states from which this tail behaviour
/// has an accepting run. Base automata are capped at 64 states.
using StateSet = std::uint64_t;

struct OmegaSemigroup {
    BuchiAutomaton base;
    std::uint32_t nf = 0; // |M_f|; element ids run 1..nf, 0 is 1_M
    std::vector<Profile> profiles; // profiles[i-1] is element i
    std::vector<ElemId> letter_elem; // per base letter
    MonoidTable table; // (nf+1) x (nf+1), row/col 0 = identity
    std::vector<bool> idempotent; // per element id

    std::vector<StateSet> omega_elems; // the realizable omega sort
    std::vector<OmegaId> omega_power_tbl; // per element id 1..nf (index id-1)
    std::vector<std::vector<OmegaId>> mixed_tbl; // [elem id][omega id]
    std::vector<bool> in_H; // omega id -> vector meets the initial set

    ElemId mul(ElemId a, ElemId b) const { return table.mul(a, b); }
    ElemId eval(const Word& w) const;
    /// m^omega; rejects the adjoined identity.
    OmegaId omega_power(ElemId m) const;
    OmegaId mixed(ElemId m, OmegaId v) const { return mixed_tbl[m][v]; }
    StateSet vec(OmegaId v) const { return omega_elems[v]; }
    std::uint32_t n_omega() const { return static_cast<std::uint32_t>(omega_elems.size()); }

    /// Value of the ultimately periodic word u v^omega.
    OmegaId up_value(const Word& u, const Word& v) const;
    bool accepts_up(const Word& u, const Word& v) const;

    /// Value of the infinite product of an ultimately periodic element
    /// sequence (1_M letters discarded); finite sort if the period is all
    /// identities. Returned as (is_omega, elem-or-omega id).
    std::pair<bool, std::uint32_t> up_product(const std::vector<ElemId>& pre,
                                              const std::vector<ElemId>& per) const;
};

/// Builds profiles by closing the letter profiles under the product, then the
/// realizable omega sort via omega powers and mixed products.
OmegaSemigroup build_semigroup(const BuchiAutomaton& a, const Config& cfg = Config::defaults());

/// Lazy automaton over the alphabet {1_M} + M_f (letter i = element id i)
/// accepting exactly the sequences whose infinite product is x.
class InfiniteProductSource final : public BuchiSource {
  public:
    /// Finite-sort target (x may be 1_M).
    InfiniteProductSource(const OmegaSemigroup& s, ElemId x);
    /// Omega-sort target.
    InfiniteProductSource(const OmegaSemigroup& s, OmegaId x, bool omega_sort_tag);

    std::uint32_t alphabet_size() const override { return sg_.nf + 1; }
    std::vector<std::uint32_t> initial_states() override;
    void successors(std::uint32_t state, std::uint32_t letter,
                    std::vector<std::uint32_t>& out) override;
    bool is_accepting(std::uint32_t state) override;

  private:
    const OmegaSemigroup& sg_;
    bool omega_sort_;
    ElemId fin_target_ = 0;
    OmegaId om_target_ = 0;
    // finite sort: state m in [0, nf] reads, state nf+1 is frozen
    // omega sort: pre(p) = p; blk(e, c, f) = nf+1 + (((e-1)*(nf+1)) + c)*2 + f
    std::uint32_t blk_state(ElemId e, ElemId c, bool flag) const {
        return sg_.nf + 1 + (((e - 1) * (sg_.nf + 1)) + c) * 2 + (flag ? 1 : 0);
    }
};

/// Materialized infinite-product automaton: accepts m_0 m_1 ... over M_f'
/// iff the product after discarding identities is x.
/// Pass the target as an element id (finite sort) or omega id.
BuchiAutomaton build_Ax_finite(const OmegaSemigroup& s, ElemId x,
                               const Config& cfg = Config::defaults());
BuchiAutomaton build_Ax_omega(const OmegaSemigroup& s, OmegaId x,
                              const Config& cfg = Config::defaults());

} // namespace sadic
