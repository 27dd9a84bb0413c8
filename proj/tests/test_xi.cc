#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>

#include "sadic/xi.hh"
#include "test_util.hh"

using namespace sadic;
using namespace sadic::testutil;

TEST_CASE("segments of concrete substitutions") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    Morphism hL = canonical_morphism(s);

    SubstClass fib = class_of(Substitution::fibonacci(), s);
    SegList r0 = fib.row(0, hL);
    REQUIRE(r0.size() == 2);
    CHECK(r0[0] == SegPair{0, kOne});
    CHECK(r0[1] == SegPair{1, kOne});

    Substitution s0110(2, {w("0110"), w("0")});
    SegList r = class_of(s0110, s).row(0, hL);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == SegPair{0, kOne});
    CHECK(r[1].first == 1);
    CHECK(r[1].second == s.eval(w("10")));

    // lambda0 o lambda1: 0 -> 010, 1 -> 01
    Substitution c = compose(Substitution::lambda(2, 0), Substitution::lambda(2, 1));
    SegList rc = class_of(c, s).row(0, hL);
    REQUIRE(rc.size() == 2);
    CHECK(rc[1].second == s.eval(w("0")));
}

TEST_CASE("derived accessors") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    Morphism hL = canonical_morphism(s);
    SubstClass fib = class_of(Substitution::fibonacci(), s);
    CHECK(fib.head(0) == 0);
    CHECK(fib.head(1) == 0);
    CHECK(fib.expanding(0));
    CHECK(!fib.expanding(1));
    // tail(0, h) = h("1"), tail(1, h) = h(eps)
    CHECK(fib.tail(0, hL) == s.eval(w("1")));
    CHECK(fib.tail(1, hL) == kOne);

    // head/tail consistency: h(sigma(a)) = h(head(a)) * tail(a, h)
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        Substitution sub = random_substitution(rng, 2);
        SubstClass c = class_of(sub, s);
        Morphism g = c.compose_morphism(hL);
        for (Letter a = 0; a < 2; ++a) {
            ElemId lhs = g.img[a];
            ElemId rhs = s.mul(hL.img[c.head(a)], c.tail(a, hL));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("expanding false forces a one-letter image") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    Substitution swap(2, {w("1"), w("0")});
    SubstClass c = class_of(swap, s);
    CHECK(!c.expanding(0));
    CHECK(c.head(0) == 1);
    Morphism hL = canonical_morphism(s);
    CHECK(c.row(0, hL) == SegList{{1, kOne}});
}

TEST_CASE("class equality and identity laws") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    SubstClass fib = class_of(Substitution::fibonacci(), s);
    CHECK(fib.equals(class_of(Substitution::fibonacci(), s)));

    SubstClass id = class_of(Substitution::identity(2), s);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        SubstClass c = class_of(random_substitution(rng, 2), s);
        CHECK(compose_classes(c, id).equals(c));
        CHECK(compose_classes(id, c).equals(c));
    }
}

TEST_CASE("equal-image substitutions collapse on the one-state automaton") {
    OmegaSemigroup s = build_semigroup(all_accepting());
    // same introduces-structure, different block contents
    Substitution a(2, {w("010"), w("1")});
    Substitution b(2, {w("0100"), w("1")});
    CHECK(class_of(a, s).equals(class_of(b, s)));
    Substitution c(2, {w("001"), w("1")});
    CHECK(!class_of(a, s).equals(class_of(c, s)));
}

TEST_CASE("homomorphism: class of a composition is the composition of classes") {
    std::mt19937_64 rng(99);
    int done = 0;
    while (done < 120) {
        OmegaSemigroup s = build_semigroup(random_buchi(rng, 3));
        if (s.nf > 10)
            continue;
        for (int t = 0; t < 5; ++t) {
            Substitution a = random_substitution(rng, 2);
            Substitution b = random_substitution(rng, 2);
            SubstClass lhs = class_of(compose(a, b), s);
            SubstClass rhs = compose_classes(class_of(a, s), class_of(b, s));
            CHECK(lhs.equals(rhs));
        }
        ++done;
    }
}

TEST_CASE("compose_classes associativity on random triples") {
    std::mt19937_64 rng(1);
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    for (int t = 0; t < 30; ++t) {
        SubstClass a = class_of(random_substitution(rng, 2), s);
        SubstClass b = class_of(random_substitution(rng, 2), s);
        SubstClass c = class_of(random_substitution(rng, 2), s);
        CHECK(compose_classes(compose_classes(a, b), c)
                  .equals(compose_classes(a, compose_classes(b, c))));
    }
}

TEST_CASE("fibonacci squared lands in the right class") {
    std::mt19937_64 rng(8);
    int done = 0;
    while (done < 5) {
        OmegaSemigroup s = build_semigroup(random_buchi(rng, 3));
        if (s.nf > 10)
            continue;
        Substitution fib = Substitution::fibonacci();
        CHECK(class_of(compose(fib, fib), s)
                  .equals(compose_classes(class_of(fib, s), class_of(fib, s))));
        ++done;
    }
}

TEST_CASE("enumerate_classes on the one-state automaton") {
    OmegaSemigroup s = build_semigroup(all_accepting());
    auto classes = enumerate_classes(s, 2);
    // 12 word rows per letter (4 shapes of b-sequences with emptiness flags)
    CHECK(classes.size() == 144);

    // distinctness and witness round-trip
    for (std::size_t i = 0; i < classes.size(); ++i) {
        CHECK(class_of(classes[i].second, s).equals(classes[i].first));
        for (std::size_t j = i + 1; j < classes.size(); ++j)
            CHECK(!classes[i].first.equals(classes[j].first));
    }

    // brute-force class collapse over all substitutions with short images:
    // length <= 3 misses the two-blocks-both-nonempty rows, length <= 4 does not
    std::vector<Word> images;
    for (std::size_t len = 1; len <= 4; ++len)
        for (std::size_t mask = 0; mask < (1u << len); ++mask) {
            Word w;
            for (std::size_t i = 0; i < len; ++i)
                w.push_back((mask >> i) & 1);
            images.push_back(w);
        }
    std::vector<SubstClass> brute;
    for (const Word& i0 : images)
        for (const Word& i1 : images) {
            SubstClass c = class_of(Substitution(2, {i0, i1}), s);
            bool seen = false;
            for (const SubstClass& b : brute)
                if (b.equals(c))
                    seen = true;
            if (!seen)
                brute.push_back(c);
        }
    CHECK(brute.size() == classes.size());
}

TEST_CASE("traces collapse equivalent substitutions") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    Substitution fib = Substitution::fibonacci();
    Trace t1 = trace_of({}, {fib}, s);
    CHECK(t1.period.size() == 1);

    Substitution l0 = Substitution::lambda(2, 0), l1 = Substitution::lambda(2, 1);
    Trace t2 = trace_of({}, {l0, l1}, s);
    CHECK(!t2.period[0].equals(t2.period[1]));

    // the same substitution twice shares one class instance
    Trace t3 = trace_of({fib}, {fib}, s);
    CHECK(t3.pre[0].equals(t3.period[0]));

    Trace t4 = trace_of({}, {fib}, s, std::nullopt, std::vector<Letter>{0});
    REQUIRE(t4.letters_period.has_value());
    CHECK(t4.letters_period->front() == 0);
}

TEST_CASE("phi classes for ultimately periodic alpha") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    auto values = up_alpha_values(s, Word{}, w("10"));

    std::mt19937_64 rng(17);
    std::vector<SubstClass> classes;
    std::vector<Substitution> subs;
    subs.push_back(Substitution::identity(2));
    for (int t = 0; t < 50; ++t)
        subs.push_back(random_substitution(rng, 2));
    for (const Substitution& sub : subs)
        classes.push_back(class_of(sub, s));
    auto phi = phi_classes(values, s, classes);

    // oracle: sigma((10)^omega) = (sigma(1)sigma(0))^omega, tested directly
    BuchiAutomaton a = inf_many_ones();
    std::vector<bool> expect(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
        Word v = subs[i].image(1);
        Word v0 = subs[i].image(0);
        v.insert(v.end(), v0.begin(), v0.end());
        expect[i] = accepts_up_direct(a, Word{}, v);
    }
    std::vector<bool> got(subs.size(), false);
    for (std::size_t i : phi)
        got[i] = true;
    CHECK(got == expect);

    // identity class belongs to Phi iff alpha itself is accepted
    CHECK(got[0] == accepts_up_direct(a, Word{}, w("10")));

    // empty language: Phi is empty
    OmegaSemigroup se = build_semigroup(empty_language());
    auto values_e = up_alpha_values(se, Word{}, w("10"));
    std::vector<SubstClass> ce = {class_of(Substitution::identity(2), se),
                                  class_of(Substitution::fibonacci(), se)};
    CHECK(phi_classes(values_e, se, ce).empty());
}

TEST_CASE("reachable morphisms stay closed") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    SubstClass fib = class_of(Substitution::fibonacci(), s);
    auto reach = reachable_morphisms(s, {fib});
    CHECK(!reach.empty());
    for (const Morphism& h : reach) {
        Morphism g = fib.compose_morphism(h);
        CHECK(std::find(reach.begin(), reach.end(), g) != reach.end());
    }

    // restricted equality is implied by full equality
    SubstClass fib2 = class_of(Substitution::fibonacci(), s);
    CHECK(fib.equals_on(fib2, reach));
}

TEST_CASE("morphism space guard") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    Config tight;
    tight.morphism_space_cap = 2;
    CHECK_THROWS_AS(morphism_space_size(s, 2, tight), GuardError);
}

TEST_CASE("shared classes are safe to query concurrently") {
    OmegaSemigroup s = build_semigroup(inf_many_ones());
    SubstClass fib = class_of(Substitution::fibonacci(), s);
    SubstClass composed = compose_classes(fib, class_of(Substitution::lambda(2, 0), s));
    Morphism hL = canonical_morphism(s);

    auto worker = [&](int salt) {
        std::size_t acc = 0;
        for (int i = 0; i < 200; ++i) {
            Morphism h = morphism_at(s, 2, (i + salt) % morphism_space_size(s, 2));
            acc += composed.row(0, h).size();
            acc += composed.tail(1, h);
            acc += fib.compose_morphism(h).img[0];
        }
        return acc;
    };
    std::size_t solo = worker(0) + worker(1) + worker(2) + worker(3);

    SubstClass again = compose_classes(class_of(Substitution::fibonacci(), s),
                                       class_of(Substitution::lambda(2, 0), s));
    std::vector<std::thread> threads;
    std::vector<std::size_t> results(4);
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&, t]() {
            std::size_t acc = 0;
            for (int i = 0; i < 200; ++i) {
                Morphism h = morphism_at(s, 2, (i + t) % morphism_space_size(s, 2));
                acc += again.row(0, h).size();
                acc += again.tail(1, h);
                acc += fib.compose_morphism(h).img[0];
            }
            results[t] = acc;
        });
    for (auto& th : threads)
        th.join();
    CHECK(results[0] + results[1] + results[2] + results[3] == solo);
    CHECK(again.equals(composed));
}
