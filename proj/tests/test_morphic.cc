#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sadic/morphic.hh"
#include "test_util.hh"

using namespace sadic;
using namespace sadic::testutil;

TEST_CASE("sigma_omega_prefix: fibonacci") {
    auto r = sigma_omega_prefix(Substitution::fibonacci(), w("0"), 8);
    CHECK(r.kind == SigmaOmegaResult::Kind::Infinite);
    CHECK(r.word == w("01001010"));
    CHECK(!r.up.has_value()); // the fibonacci word is not ultimately periodic
}

TEST_CASE("sigma_omega_prefix: swap diverges") {
    Substitution swap(2, {w("1"), w("0")});
    auto r = sigma_omega_prefix(swap, w("0"), 4);
    CHECK(r.kind == SigmaOmegaResult::Kind::Divergent);
}

TEST_CASE("sigma_omega_prefix: 1 -> 10 grows to 10^omega") {
    Substitution s(2, {w("0"), w("10")});
    auto r = sigma_omega_prefix(s, w("1"), 4);
    CHECK(r.kind == SigmaOmegaResult::Kind::Infinite);
    CHECK(r.word == w("1000"));
    REQUIRE(r.up.has_value());
    // stem q period: 1 0 sigma(0) ... then 0^omega
    Word pre = r.up->first, per = r.up->second;
    CHECK(per == w("0")); // sigma^n(0) stays "0"
}

TEST_CASE("sigma_omega_prefix: terminal letters") {
    Substitution s(2, {w("0"), w("0")}); // 0 -> 0, 1 -> 0
    auto r = sigma_omega_prefix(s, w("1"), 4);
    CHECK(r.kind == SigmaOmegaResult::Kind::Finite);
    CHECK(r.word == w("0"));

    // mutual head-chain: 0 -> 120, 1 -> 1, 2 -> 0 gives 1^omega
    Substitution m(3, {{1, 2, 0}, {1}, {0}});
    auto rm = sigma_omega_prefix(m, {0}, 6);
    CHECK(rm.kind == SigmaOmegaResult::Kind::Infinite);
    CHECK(rm.word == Word{1, 1, 1, 1, 1, 1});
    REQUIRE(rm.up.has_value());
}

TEST_CASE("sigma_omega_prefix matches plain iteration on random substitutions") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
        std::uint32_t d = 2 + (t % 2);
        Substitution s = random_substitution(rng, d, 3);
        std::uniform_int_distribution<Letter> ad(0, d - 1);
        Word u = {ad(rng)};
        auto r = sigma_omega_prefix(s, u, 30);
        // iterate concretely; only positions stable across two further
        // applications are trusted (deeper tails may not have settled)
        Word cur = u;
        for (int i = 0; i < 14 && cur.size() <= 4096; ++i)
            cur = sadic::apply(s, cur);
        Word nxt = sadic::apply(s, cur), nxt2 = sadic::apply(s, nxt);
        std::size_t stable = 0;
        while (stable < cur.size() && cur[stable] == nxt[stable] && cur[stable] == nxt2[stable])
            ++stable;
        if (r.kind == SigmaOmegaResult::Kind::Finite) {
            CHECK(cur == r.word);
        } else if (r.kind == SigmaOmegaResult::Kind::Infinite) {
            for (std::size_t i = 0; i < std::min<std::size_t>({30, stable, r.word.size()}); ++i)
                CHECK(cur[i] == r.word[i]);
            if (r.up) {
                auto& [pre, per] = *r.up;
                for (std::size_t i = pre.size(); i < stable; ++i)
                    CHECK(cur[i] == per[(i - pre.size()) % per.size()]);
            }
        } else {
            // divergent: the head of sigma^n(u) must oscillate
            Word a = cur, b = sadic::apply(s, cur);
            bool stable_head = a.front() == b.front();
            Word c = sadic::apply(s, b);
            stable_head &= (b.front() == c.front());
            CHECK(!stable_head);
        }
    }
}

namespace {

// the algebra-independent semantic value of sigma^omega(a) under h, via the
// iteration oracle: finite -> fold, up -> up_value, divergent -> bottom
OmegaValue semantic_value(const OmegaSemigroup& s, const Substitution& sub, Letter a,
                          const Morphism& h) {
    auto r = sigma_omega_prefix(sub, {a}, 64);
    if (r.kind == SigmaOmegaResult::Kind::Divergent)
        return OmegaValue::bottom();
    auto eval = [&](const Word& word) {
        ElemId m = kOne;
        for (Letter c : word)
            m = s.mul(m, h.img[c]);
        return m;
    };
    if (r.kind == SigmaOmegaResult::Kind::Finite)
        return OmegaValue::finite(eval(r.word));
    if (!r.up)
        return OmegaValue{}; // not decidable by the oracle
    ElemId pre = eval(r.up->first), per = eval(r.up->second);
    return OmegaValue::infinite(s.mixed(pre, s.omega_power(per)));
}

} // namespace

TEST_CASE("h_sigma_omega on the fibonacci class") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    Morphism hL = canonical_morphism(s);
    SubstClass fib = class_of(Substitution::fibonacci(), s);
    OmegaValue v = h_sigma_omega(fib, hL, 0);
    REQUIRE(v.kind == OmegaValue::Kind::Infinite);
    CHECK(s.vec(v.inf) == 0b11); // alpha_fib has infinitely many 1s
    CHECK(s.in_H[v.inf]);

    SubstClass swap = class_of(Substitution(2, {w("1"), w("0")}), s);
    CHECK(h_sigma_omega(swap, hL, 0).kind == OmegaValue::Kind::Bottom);

    SubstClass collapse = class_of(Substitution(2, {w("0"), w("0")}), s);
    OmegaValue f = h_sigma_omega(collapse, hL, 1);
    REQUIRE(f.kind == OmegaValue::Kind::Finite);
    CHECK(f.fin == s.eval(w("0")));
}

TEST_CASE("h_sigma_omega agrees with the semantic oracle when it decides") {
    std::mt19937_64 rng(55);
    int checked = 0;
    for (int t = 0; t < 400; ++t) {
        BuchiAutomaton aut = random_buchi(rng, 3);
        OmegaSemigroup s = build_semigroup(aut);
        Substitution sub = random_substitution(rng, 2, 3);
        SubstClass c = class_of(sub, s);
        Morphism hL = canonical_morphism(s);
        for (Letter a = 0; a < 2; ++a) {
            OmegaValue expect = semantic_value(s, sub, a, hL);
            if (expect.kind == OmegaValue::Kind::Bottom) {
                auto r = sigma_omega_prefix(sub, {a}, 8);
                if (r.kind != SigmaOmegaResult::Kind::Divergent)
                    continue; // oracle could not certify an up structure
            }
            OmegaValue got = h_sigma_omega(c, hL, a);
            CHECK(got == expect);
            ++checked;
        }
    }
    CHECK(checked > 300);
}

TEST_CASE("mutual head-chain value: 0 -> 120, 1 -> 1, 2 -> 0") {
    // sigma^omega(0) = 1^omega although no single letter loops through 0
    BuchiAutomaton aut;
    aut.n_letters = 3;
    aut.letter_names = {"0", "1", "2"};
    aut.n_states = 2;
    aut.initial = {0};
    aut.delta.assign(2, std::vector<std::vector<std::uint32_t>>(3));
    aut.add_transition(0, 1, 1);
    aut.add_transition(1, 1, 1);
    aut.add_transition(0, 0, 0);
    aut.add_transition(1, 0, 0);
    aut.add_transition(0, 2, 0);
    aut.add_transition(1, 2, 0);
    aut.accepting = {false, true};
    aut.finalize();
    OmegaSemigroup s = build_semigroup(aut);
    Substitution m(3, {{1, 2, 0}, {1}, {0}});
    OmegaValue v = h_sigma_omega(class_of(m, s), canonical_morphism(s), 0);
    REQUIRE(v.kind == OmegaValue::Kind::Infinite);
    CHECK(v.inf == s.up_value(Word{}, Word{1}));
}

TEST_CASE("class invariance of h_sigma_omega across witnesses") {
    OmegaSemigroup s = build_semigroup(all_accepting());
    auto classes = enumerate_classes(s, 2);
    Morphism hL = canonical_morphism(s);
    std::mt19937_64 rng(2);
    int done = 0;
    for (auto& [cls, wit] : classes) {
        // a second witness: recompute via class_of on a padded image set
        SubstClass again = class_of(wit, s);
        for (Letter a = 0; a < 2; ++a)
            CHECK(h_sigma_omega(cls, hL, a) == h_sigma_omega(again, hL, a));
        if (++done > 20)
            break;
    }
    (void)rng;
}

TEST_CASE("h_pi_sigma_omega") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    Morphism hL = canonical_morphism(s);
    SubstClass fib = class_of(Substitution::fibonacci(), s);
    SubstClass id = class_of(Substitution::identity(2), s);
    CHECK(h_pi_sigma_omega(fib, id, hL, 0) == h_sigma_omega(fib, hL, 0));
    // pi = sigma = fib: sigma_fib(alpha_fib) = alpha_fib
    CHECK(h_pi_sigma_omega(fib, fib, hL, 0) == h_sigma_omega(fib, hL, 0));
    // bottom propagates through any outer class
    SubstClass swap = class_of(Substitution(2, {w("1"), w("0")}), s);
    CHECK(h_pi_sigma_omega(swap, fib, hL, 0).kind == OmegaValue::Kind::Bottom);
}

TEST_CASE("morphic language DFA for fibonacci over infinitely-many-ones") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    SubstClass fib = class_of(Substitution::fibonacci(), s);
    MorphicDfa m = morphic_language_dfa(fib, fib, s);
    // every non-empty u is accepted: sigma_fib^omega(a) is alpha_fib-tailed
    CHECK(!m.dfa.accepts(Word{}));
    for (std::size_t len = 1; len <= 4; ++len)
        for (std::size_t mask = 0; mask < (1u << len); ++mask) {
            Word u;
            for (std::size_t i = 0; i < len; ++i)
                u.push_back((mask >> i) & 1);
            CHECK(m.dfa.accepts(u));
        }

    // empty language rejects everything
    OmegaSemigroup se = build_semigroup(empty_language());
    SubstClass fib_e = class_of(Substitution::fibonacci(), se);
    MorphicDfa me = morphic_language_dfa(fib_e, fib_e, se);
    for (std::size_t len = 0; len <= 4; ++len)
        for (std::size_t mask = 0; mask < (1u << len); ++mask) {
            Word u;
            for (std::size_t i = 0; i < len; ++i)
                u.push_back((mask >> i) & 1);
            CHECK(!me.dfa.accepts(u));
        }

    // swap: all values bottom, nothing accepted
    SubstClass swap = class_of(Substitution(2, {w("1"), w("0")}), s);
    SubstClass id = class_of(Substitution::identity(2), s);
    MorphicDfa ms = morphic_language_dfa(swap, id, s);
    CHECK(!ms.dfa.accepts(w("0")));
    CHECK(!ms.dfa.accepts(w("01")));
}

TEST_CASE("saturation: u and sigma(u) are equi-accepted") {
    std::mt19937_64 rng(14);
    int done = 0;
    while (done < 30) {
        OmegaSemigroup s = build_semigroup(random_buchi(rng, 3));
        Substitution sub = random_substitution(rng, 2, 3);
        SubstClass c = class_of(sub, s);
        SubstClass id = class_of(Substitution::identity(2), s);
        MorphicDfa m = morphic_language_dfa(c, id, s);
        for (std::size_t len = 1; len <= 4; ++len)
            for (std::size_t mask = 0; mask < (1u << len); ++mask) {
                Word u;
                for (std::size_t i = 0; i < len; ++i)
                    u.push_back((mask >> i) & 1);
                CHECK(m.dfa.accepts(u) == m.dfa.accepts(sadic::apply(sub, u)));
            }
        ++done;
    }
}

TEST_CASE("DFA distributivity: the state after uv is the product of contributions") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    SubstClass fib = class_of(Substitution::fibonacci(), s);
    SubstClass id = class_of(Substitution::identity(2), s);
    MorphicDfa m = morphic_language_dfa(fib, id, s);
    auto value_of = [&](const Word& u) {
        OmegaValue v = OmegaValue::finite(kOne);
        for (Letter a : u)
            v = ov_concat(s, v, m.letter_value[a]);
        return v;
    };
    for (std::size_t len = 0; len <= 5; ++len)
        for (std::size_t mask = 0; mask < (1u << len); ++mask) {
            Word uv;
            for (std::size_t i = 0; i < len; ++i)
                uv.push_back((mask >> i) & 1);
            for (std::size_t cut = 0; cut <= uv.size(); ++cut) {
                Word u(uv.begin(), uv.begin() + cut), v(uv.begin() + cut, uv.end());
                CHECK(ov_concat(s, value_of(u), value_of(v)) == value_of(uv));
            }
        }
}

TEST_CASE("fixed point images") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    Morphism hL = canonical_morphism(s);

    SubstClass fib = class_of(Substitution::fibonacci(), s);
    auto fp = fixed_point_images(fib, hL);
    REQUIRE(fp.size() == 1);
    CHECK(fp[0] == h_sigma_omega(fib, hL, 0).inf); // only alpha_fib

    // no head-fixed letter: no fixed points
    SubstClass swap = class_of(Substitution(2, {w("1"), w("0")}), s);
    CHECK(fixed_point_images(swap, hL).empty());

    // 0 -> 0, 1 -> 10: fixed points are 0^omega and 0^k 1 0^omega
    SubstClass ext = class_of(Substitution(2, {w("0"), w("10")}), s);
    auto fpe = fixed_point_images(ext, hL);
    // candidate fixed points as up words, filtered by sigma(alpha) = alpha
    // on prefixes: 0^omega and 0^k 1 0^omega all map to values in fpe
    OmegaId zeros = s.up_value(Word{}, w("0"));
    OmegaId one_tail = s.up_value(w("1"), w("0"));
    OmegaId shifted = s.up_value(w("01"), w("0"));
    CHECK(std::find(fpe.begin(), fpe.end(), zeros) != fpe.end());
    CHECK(std::find(fpe.begin(), fpe.end(), one_tail) != fpe.end());
    CHECK(std::find(fpe.begin(), fpe.end(), shifted) != fpe.end());
    // and nothing accepted: every fixed point has finitely many 1s
    for (OmegaId v : fpe)
        CHECK(!s.in_H[v]);
}

TEST_CASE("equivalent substitutions with different images share all values") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    std::mt19937_64 rng(404);
    // collect witnesses grouped by class and compare across group members
    std::vector<std::pair<SubstClass, std::vector<Substitution>>> groups;
    for (int t = 0; t < 400; ++t) {
        Substitution sub = random_substitution(rng, 2, 4);
        SubstClass c = class_of(sub, s);
        bool placed = false;
        for (auto& [cls, members] : groups)
            if (cls.equals(c)) {
                bool dup = false;
                for (auto& m : members)
                    dup |= m == sub;
                if (!dup)
                    members.push_back(sub);
                placed = true;
                break;
            }
        if (!placed)
            groups.emplace_back(c, std::vector<Substitution>{sub});
    }
    std::size_t compared = 0;
    for (auto& [cls, members] : groups) {
        if (members.size() < 2)
            continue;
        for (std::size_t hi = 0; hi < morphism_space_size(s, 2); hi += 2) {
            Morphism h = morphism_at(s, 2, hi);
            for (Letter a = 0; a < 2; ++a) {
                OmegaValue base = h_sigma_omega(class_of(members[0], s), h, a);
                for (std::size_t i = 1; i < members.size(); ++i)
                    CHECK(h_sigma_omega(class_of(members[i], s), h, a) == base);
            }
            ++compared;
        }
    }
    CHECK(compared > 5); // some group with distinct witnesses must exist
}
