/* dfa.hh -- finite-word DFA machinery for witness search
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sadic/config.hh"
#include "sadic/words.hh"

namespace sadic {

/// Complete deterministic finite-word automaton. `delta[q][a]` is total.
struct Dfa {
    std::uint32_t n_letters = 0;
    std::uint32_t n_states = 0;
    std::uint32_t initial = 0;
    std::vector<std::vector<std::uint32_t>> delta;
    std::vector<bool> accepting;

    bool accepts(const Word& w) const;
    std::uint32_t run(const Word& w) const;
};

/// Element ids of a finite monoid; 0 is reserved for the adjoined identity.
using ElemId = std::uint32_t;
inline constexpr ElemId kOne = 0;

/// Table-backed monoid interface used by preimage_dfa so the DFA layer does
/// not depend on the semigroup module.
struct MonoidTable {
    /// product[i][j] = i * j, with row/column 0 behaving as the identity.
    std::vector<std::vector<ElemId>> product;
    std::size_t size() const { return product.size(); }
    ElemId mul(ElemId a, ElemId b) const { return product[a][b]; }
};

/// DFA for { w over `allowed` : h(w) = x }, with h given by letter images in
/// the monoid and h(eps) = 1. States are monoid elements reachable from 1.
Dfa preimage_dfa(const MonoidTable& monoid,
                 const std::vector<ElemId>& letter_image,
                 ElemId x,
                 const std::vector<bool>& allowed,
                 const Config& cfg = Config::defaults());

/// DFA for b1 L(D1) b2 L(D2) ... bk L(Dk); built as a marker-chained NFA and
/// determinized by subset construction.
Dfa concat_with_markers(const std::vector<std::pair<Letter, Dfa>>& parts,
                        const Config& cfg = Config::defaults());

Dfa intersect(const Dfa& a, const Dfa& b, const Config& cfg = Config::defaults());

bool is_empty(const Dfa& a);

/// Shortest accepted word; ties broken lexicographically by letter index.
std::optional<Word> witness(const Dfa& a);

std::string dfa_to_dot(const Dfa& a, const std::vector<std::string>* letter_names = nullptr);

} // namespace sadic
