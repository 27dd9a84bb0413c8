/* morphic.hh -- sigma^omega semantics and the morphic-word machinery
 *
 * h o sigma^omega(a) is computed from the class of sigma alone: terminal
 * letters resolve by saturation, the first non-terminal letter of each image
 * induces a successor chain, and the chain's cycle is one of right-expansion
 * (head fixpoint), left-expansion (omega power of the looped prefix), or a
 * pure head cycle (bottom).
 */

#pragma once

#include <optional>
#include <vector>

#include "sadic/dfa.hh"
#include "sadic/xi.hh"

namespace sadic {

/// Value of a (possibly failed) word limit under a morphism: a finite-sort
/// element, an omega-sort element, or bottom.
struct OmegaValue {
    enum class Kind { Finite, Infinite, Bottom };
    Kind kind = Kind::Bottom;
    ElemId fin = kOne;
    OmegaId inf = 0;

    static OmegaValue finite(ElemId m) { return {Kind::Finite, m, 0}; }
    static OmegaValue infinite(OmegaId v) { return {Kind::Infinite, kOne, v}; }
    static OmegaValue bottom() { return {}; }
    bool operator==(const OmegaValue& o) const {
        if (kind != o.kind)
            return false;
        if (kind == Kind::Finite)
            return fin == o.fin;
        if (kind == Kind::Infinite)
            return inf == o.inf;
        return true;
    }
};

/// Concatenation with the bottom conventions of the word limit.
OmegaValue ov_concat(const OmegaSemigroup& s, const OmegaValue& a, const OmegaValue& b);

/// Semantic ground truth for sigma^omega(u) = lim sigma^n(u), by iteration
/// on the concrete substitution. When the limit is ultimately periodic and
/// the iteration can certify it, `up` carries (stem, period).
struct SigmaOmegaResult {
    enum class Kind { Finite, Infinite, Divergent };
    Kind kind = Kind::Divergent;
    Word word; // the whole word (finite) or the first k letters (infinite)
    std::optional<std::pair<Word, Word>> up;
};

SigmaOmegaResult sigma_omega_prefix(const Substitution& sigma, const Word& u, std::size_t k,
                                    std::size_t budget = Config::defaults().prefix_budget);

/// h o sigma^omega(a), computed from the class of sigma alone: the value
/// is the same for every representative.
OmegaValue h_sigma_omega(const SubstClass& xi, const Morphism& h, Letter a);

/// h o pi o sigma^omega(a) from the two classes.
OmegaValue h_pi_sigma_omega(const SubstClass& xi, const SubstClass& zeta, const Morphism& h,
                            Letter a);

/// DFA over Sigma accepting exactly the u with pi(sigma^omega(u)) in the
/// language; states are accumulated omega values with an explicit bottom
/// sink. Also returns the per-letter values.
struct MorphicDfa {
    Dfa dfa;
    std::vector<OmegaValue> letter_value;
};

MorphicDfa morphic_language_dfa(const SubstClass& xi, const SubstClass& zeta,
                                const OmegaSemigroup& s);

/// { h(alpha) : sigma(alpha) = alpha } -- the omega-sort part of the
/// sub-omega-semigroup generated by the values of head-fixed letters.
std::vector<OmegaId> fixed_point_images(const SubstClass& xi, const Morphism& h);

} // namespace sadic
