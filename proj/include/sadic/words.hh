/* words.hh -- alphabets, finite words, substitutions, lazy infinite words
 */

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sadic/config.hh"
#include "sadic/error.hh"

namespace sadic {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

std::string word_to_string(const Word& w, const std::vector<std::string>* names = nullptr);

/// Non-erasing morphism on words over {0, ..., d-1}: every letter has a
/// non-empty image.
struct Substitution {
    std::uint32_t d = 0;
    std::vector<Word> images;

    Substitution() = default;
    Substitution(std::uint32_t d_, std::vector<Word> images_);

    static Substitution identity(std::uint32_t d);
    /// sigma_fib over {0,1}: 0 -> 01, 1 -> 0.
    static Substitution fibonacci();
    /// lambda_i over {0..d-1}: i -> i, j -> ij. Left-proper.
    static Substitution lambda(std::uint32_t d, Letter i);
    /// rho_i over {0..d-1}: i -> i, j -> ji.
    static Substitution rho(std::uint32_t d, Letter i);

    const Word& image(Letter a) const { return images.at(a); }
    Letter head(Letter a) const { return images.at(a).front(); }
    bool is_identity() const;
    /// Every letter occurs in every image.
    bool positive() const;
    /// All images share their first letter.
    bool left_proper() const;
    /// Boolean incidence: occ[b][c] iff b occurs in image(c).
    std::vector<std::vector<bool>> incidence() const;

    bool operator==(const Substitution& o) const { return d == o.d && images == o.images; }
};

/// Image of w under sigma, letter by letter.
Word apply(const Substitution& sigma, const Word& w);

/// (sigma o mu): a |-> sigma(mu(a)). mu acts first.
Substitution compose(const Substitution& sigma, const Substitution& mu);

/// (mu o sigma): a |-> mu(sigma(a)). sigma acts first; the other reading of
/// the same pair of arguments.
Substitution compose_then(const Substitution& sigma, const Substitution& mu);

/// Factorization w = b1 v1 b2 v2 ... bk vk on the first occurrence of each
/// letter: b_i distinct, v_i over {b1..b_i}.
std::vector<std::pair<Letter, Word>> first_occurrence_factorization(const Word& w);

/// All distinct length-n factors of the given prefix.
std::set<Word> factors(const Word& prefix, std::size_t n);

/// A finite or infinite word evaluated through a prefix oracle, or the
/// divergent limit (bottom). Prefix queries beyond the budget raise
/// GuardError; any letter query on a divergent word raises DomainError.
class LazyWord {
  public:
    enum class Kind { Infinite, Finite, Divergent };

    static LazyWord infinite(std::function<Word(std::size_t)> prefix_fn,
                             std::size_t budget = Config::defaults().prefix_budget);
    static LazyWord finite(Word w);
    static LazyWord divergent();

    Kind kind() const { return kind_; }
    /// First min(n, length) letters. Divergent words reject every query.
    Word prefix(std::size_t n) const;
    Letter at(std::size_t i) const;
    std::size_t finite_length() const;

    /// Concatenation with the bottom conventions: bottom * x = bottom,
    /// u * bottom = bottom for finite u and = u for infinite u; an infinite
    /// left factor absorbs the right one.
    static LazyWord concat(const LazyWord& a, const LazyWord& b);

  private:
    Kind kind_ = Kind::Divergent;
    std::function<Word(std::size_t)> prefix_fn_;
    Word finite_word_;
    std::size_t budget_ = 0;
};

/// Smallest M such that every length-M factor of the word contains all p(l)
/// factors of length l. The word must be uniformly recurrent with exact
/// factor complexity p; the prefix budget bounds the search.
std::size_t recurrence(const LazyWord& word,
                       const std::function<std::size_t(std::size_t)>& complexity,
                       std::size_t l,
                       std::size_t prefix_budget = Config::defaults().prefix_budget);

/// A named alphabet shared by parsed substitutions and automata. Letters are
/// indices into `names`.
struct NamedAlphabet {
    std::vector<std::string> names;

    std::uint32_t size() const { return static_cast<std::uint32_t>(names.size()); }
    std::optional<Letter> find(const std::string& name) const;
};

/// One substitution in the DSL: one line per letter, `a -> w`, comments with
/// `#`. Returns the substitution and the alphabet (letter names sorted).
std::pair<Substitution, NamedAlphabet> parse_substitution(const std::string& text);

/// A set of named substitutions over one alphabet. Sections start with
/// `[name]`; the body is the single-substitution DSL.
struct SubstitutionSet {
    NamedAlphabet alphabet;
    std::vector<std::string> names;
    std::vector<Substitution> subs;

    std::optional<std::size_t> find(const std::string& name) const;
};

SubstitutionSet parse_substitution_set(const std::string& text);

/// Render a substitution in the DSL (inverse of parse_substitution).
std::string substitution_to_dsl(const Substitution& s, const NamedAlphabet* alpha = nullptr);

} // namespace sadic
