/* sturmian.hh -- continued fractions, Ostrowski numeration, and the
 * Arnoux-Rauzy pipelines
 *
 * Reals are handled exactly: every quantity is (a + b*eta)/den with integer
 * a, b and eta given by its continued fraction. Signs and floors are decided
 * by bracketing eta between consecutive convergents, escalating precision on
 * demand; a genuinely exhausted digit supply raises PrecisionError.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sadic/adic.hh"
#include "sadic/bigrat.hh"

namespace sadic {

/// eta = [0; a_1, a_2, ...], a finite digit prefix plus an optional periodic
/// continuation.
struct ContinuedFraction {
    std::vector<std::uint32_t> digits;
    std::vector<std::uint32_t> periodic_tail;

    std::uint32_t digit(std::size_t n) const; // 1-based
    bool unbounded() const { return !periodic_tail.empty(); }
    std::size_t available() const;
    /// [0; 2, 1, 1, 1, ...]: the fibonacci slope 1/phi^2.
    static ContinuedFraction fibonacci_slope();
};

/// (p_0, q_0) .. (p_n, q_n).
std::vector<std::pair<BigInt, BigInt>> convergents(const ContinuedFraction& cf, std::size_t n);

/// a + b*eta with integer coefficients (scaling by a positive denominator is
/// the caller's business).
struct EtaLinear {
    BigInt a, b;
};

/// Exact sign/floor engine bound to one continued fraction.
class EtaArith {
  public:
    explicit EtaArith(ContinuedFraction cf);

    const ContinuedFraction& cf() const { return cf_; }
    /// theta_n = q_n eta - p_n for n >= -1 (theta_{-1} = -1).
    EtaLinear theta(std::int64_t n);
    /// Exact sign of a + b*eta.
    int sign(const EtaLinear& x);
    /// floor((a + b*eta)/den), den > 0.
    BigInt floor_val(const EtaLinear& x, const BigInt& den);

  private:
    ContinuedFraction cf_;
    std::vector<std::pair<BigInt, BigInt>> conv_; // extended on demand
    void ensure(std::size_t n);
};

/// Greedy Ostrowski digits of chi = chi_num/chi_den in base eta, respecting
/// the digit rules; ties (two-expansion boundaries) resolve toward the
/// smaller digit. chi must lie in [-eta, 1-eta].
std::vector<std::uint32_t> ostrowski_encode(EtaArith& eta, const BigInt& chi_num,
                                            const BigInt& chi_den, std::size_t n_digits);

/// Exact value of the finite digit sum b_1 theta_0 + ... as a + b*eta.
EtaLinear ostrowski_decode(EtaArith& eta, const std::vector<std::uint32_t>& digits);

/// Digit rules (i)-(iii) against the base continued fraction.
bool ostrowski_digits_valid(const ContinuedFraction& cf, const std::vector<std::uint32_t>& digits);

/// |x - chi| <= tol_num/tol_den, decided exactly.
bool eta_within(EtaArith& eta, const EtaLinear& x, const BigInt& chi_num, const BigInt& chi_den,
                const BigInt& tol_num, const BigInt& tol_den);

/// alpha(n) = floor((n+2) eta + chi) - floor((n+1) eta + chi), or the ceiling
/// variant; exact for rational chi.
Letter sturmian_letter(EtaArith& eta, const BigInt& chi_num, const BigInt& chi_den,
                       std::uint64_t n, bool ceiling = false);

/// First `len` letters of the characteristic word (chi = 0, floor variant).
Word characteristic_word(EtaArith& eta, std::size_t len);

/// The Arnoux-Rauzy generator set over d letters: lambda_0..lambda_{d-1},
/// rho_0..rho_{d-1}, with stable names.
SubstitutionSet ar_generators(std::uint32_t d);

/// The flat directive prefix of the blocks
/// lambda_0^{b_1} rho_0^{a_1-b_1} lambda_1^{b_2} rho_1^{a_2-b_2} ... for
/// eta = [0; a_1+1, a_2, ...]; digits b must satisfy rules (i)-(ii). The
/// forced congenial letters are defined up to the last lambda.
struct SturmianDirective {
    std::vector<Substitution> subs;
    std::vector<std::string> names;
    std::vector<Letter> letters; // defined for positions < letters.size()

    /// Prefix-only directive sequence (empty period) for prefix evaluation.
    DirectiveSequence to_sequence() const;
};

SturmianDirective directive_from_expansions(const ContinuedFraction& cf,
                                            const std::vector<std::uint32_t>& b_digits);

/// Deterministic Buchi automaton over the 2d generator names accepting the
/// weakly primitive sequences with infinitely many left-proper terms.
BuchiAutomaton weak_primitivity_automaton(std::uint32_t d);

/// Intersection of the weak-primitivity automaton with the relabeled
/// directed-words automaton: accepts s iff the unique Arnoux-Rauzy word it
/// directs is in the language.
BuchiAutomaton build_ar_acceptance_automaton(const BuchiAutomaton& a, std::uint32_t d,
                                             const Config& cfg = Config::defaults());

/// Greedy minimal-positive segmentation of an augmented congenial prefix:
/// (composed block, carried letter) pairs. Raises GuardError when a block
/// fails to close within the prefix.
std::vector<std::pair<Substitution, Letter>> partial_quotients(
    const std::vector<Substitution>& subs, const std::vector<Letter>& letters,
    std::size_t max_blocks);

struct PqAgreementRow {
    std::uint32_t N = 0;
    std::size_t trials = 0;
    std::size_t agreements = 0;
    std::string example_disagreement; // empty when all trials agreed
};

struct PqAgreementReport {
    std::vector<PqAgreementRow> rows;
    std::optional<std::uint32_t> minimal_full_agreement;
};

/// Samples pairs of weakly primitive lambda/rho sequences sharing their
/// first N partial quotients and compares directed-words verdicts, for
/// N = 0..max_N.
PqAgreementReport agreement_experiment(const BuchiAutomaton& a, std::uint32_t max_N,
                                       std::size_t trials, std::uint64_t seed,
                                       const Config& cfg = Config::defaults());

} // namespace sadic
