/* config.hh -- resource guards and global knobs
 */

#pragma once

#include <cstdint>

namespace sadic {

/// Guards keep every fixed-point closure and every prefix evaluation finite.
/// All limits are positive; exceeding one raises GuardError, never a hang.
struct Config {
    /// Cap on |M_f| during transition-semigroup closure.
    std::size_t semigroup_cap = 20000;
    /// Cap on DFA states during subset construction / products.
    std::size_t dfa_state_cap = 100000;
    /// Cap on Buchi states when materializing lazily constructed automata.
    std::size_t buchi_state_cap = 500000;
    /// Default budget for lazy word prefixes, in letters.
    std::size_t prefix_budget = 1000000;
    /// Cap on |M_f|^|Sigma| when a full morphism table must be forced.
    std::size_t morphism_space_cap = 300000;
    /// Cap on the number of substitution classes enumerate_classes may emit.
    std::size_t class_enum_cap = 100000;
    /// Restrict segments tables to morphisms reachable from h_L (experimental).
    bool xi_reachable_only = false;
    /// Seed for every randomized harness.
    std::uint64_t seed = 1;

    static const Config& defaults() {
        static const Config c{};
        return c;
    }
};

} // namespace sadic
