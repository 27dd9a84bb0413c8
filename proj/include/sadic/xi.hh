/* xi.hh -- substitution classes modulo a recognizing omega-semigroup
 *
 * Two substitutions are equivalent when their segments tables agree: for
 * every letter a and every letter-to-M_f morphism h, the first-occurrence
 * factorization of the image with h-values of the in-between blocks.
 * Classes compose without representatives via the merge-and-rename
 * procedure, which is what makes the trace automata possible.
 */

#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "sadic/semigroup.hh"
#include "sadic/words.hh"

namespace sadic {

/// A monoid morphism Sigma* -> M_f', fixed by its letter images (in M_f).
struct Morphism {
    std::vector<ElemId> img;

    bool operator==(const Morphism& o) const { return img == o.img; }
    bool operator<(const Morphism& o) const { return img < o.img; }
};

/// h_L: letters to their profiles.
Morphism canonical_morphism(const OmegaSemigroup& s);

/// The morphism with odometer index i among all |M_f|^d letter tables.
Morphism morphism_at(const OmegaSemigroup& s, std::uint32_t d, std::size_t index);
std::size_t morphism_space_size(const OmegaSemigroup& s, std::uint32_t d,
                                const Config& cfg = Config::defaults());

using SegPair = std::pair<Letter, ElemId>;
using SegList = std::vector<SegPair>;

/// An element of Xi_L, held as a lazily materialized segments table. Copies
/// share state; all accessors are safe for concurrent use.
class SubstClass {
  public:
    SubstClass() = default;

    std::uint32_t d() const;
    const OmegaSemigroup& semigroup() const;

    /// segments(a, h): pairs (b_i, h(v_i)) of the first-occurrence
    /// factorization of the image of a.
    SegList row(Letter a, const Morphism& h) const;
    /// Letters of the factorization with "block non-empty" flags.
    const std::vector<std::pair<Letter, bool>>& introduces(Letter a) const;
    Letter head(Letter a) const;
    /// False iff the image is a single letter.
    bool expanding(Letter a) const;
    /// h(v) for image(a) = head(a) . v.
    ElemId tail(Letter a, const Morphism& h) const;
    /// h o sigma as a letter table.
    Morphism compose_morphism(const Morphism& h) const;

    /// Full-table equality over all of morphisms_L (guarded).
    bool equals(const SubstClass& o) const;
    /// Equality restricted to an explicit list of morphisms.
    bool equals_on(const SubstClass& o, const std::vector<Morphism>& hs) const;
    const std::vector<std::uint32_t>& force_key() const;

    friend SubstClass class_of(const Substitution&, const OmegaSemigroup&, const Config&);
    friend SubstClass compose_classes(const SubstClass&, const SubstClass&);

    struct Impl; // definition is internal to the implementation file

  private:
    std::shared_ptr<Impl> impl_;
};

/// [sigma]_L.
SubstClass class_of(const Substitution& sigma, const OmegaSemigroup& s,
                    const Config& cfg = Config::defaults());

/// [sigma o mu]_L from the classes alone (xi's representative applied after
/// zeta's): compose_classes([sigma], [mu]) = [sigma o mu].
SubstClass compose_classes(const SubstClass& xi, const SubstClass& zeta);

/// Morphisms reachable from h_L by composing with the given classes.
std::vector<Morphism> reachable_morphisms(const OmegaSemigroup& s,
                                          const std::vector<SubstClass>& classes,
                                          const Config& cfg = Config::defaults());

/// Every realizable class with a concrete witness, found by closing word
/// rows under letter extension and extracting witnesses through the DFA
/// pipeline (preimage automata, marker concatenation, intersection, shortest
/// witness). Desk scale; guarded.
std::vector<std::pair<SubstClass, Substitution>> enumerate_classes(
    const OmegaSemigroup& s, std::uint32_t d, const Config& cfg = Config::defaults());

/// Ultimately periodic trace over Xi_L (optionally letter-augmented).
struct Trace {
    std::vector<SubstClass> pre;
    std::vector<SubstClass> period;
    std::optional<std::vector<Letter>> letters_pre;
    std::optional<std::vector<Letter>> letters_period;
};

/// Pointwise classes of an ultimately periodic substitution sequence;
/// equivalent substitutions collapse onto one class instance.
Trace trace_of(const std::vector<Substitution>& pre, const std::vector<Substitution>& period,
               const OmegaSemigroup& s,
               const std::optional<std::vector<Letter>>& letters_pre = std::nullopt,
               const std::optional<std::vector<Letter>>& letters_period = std::nullopt,
               const Config& cfg = Config::defaults());

/// Phi = classes xi such that sigma(alpha) lies in the language, for any
/// representative sigma of xi. `alpha_value` must return h(alpha) for the
/// requested morphism.
std::vector<std::size_t> phi_classes(const std::function<OmegaId(const Morphism&)>& alpha_value,
                                     const OmegaSemigroup& s,
                                     const std::vector<SubstClass>& classes);

/// h(alpha) provider for the ultimately periodic word u v^omega.
std::function<OmegaId(const Morphism&)> up_alpha_values(const OmegaSemigroup& s, Word u, Word v);

} // namespace sadic
