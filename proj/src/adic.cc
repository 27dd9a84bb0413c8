#include "sadic/adic.hh"

#include <algorithm>
#include <map>
#include <set>

#include "sadic/error.hh"

namespace sadic {

std::uint32_t DirectiveSequence::d() const {
    if (!pre.empty())
        return pre.front().d;
    if (!period.empty())
        return period.front().d;
    throw DomainError("directive sequence: empty");
}

bool DirectiveSequence::augmented() const {
    return letters_period.has_value() || letters_pre.has_value();
}

const Substitution& DirectiveSequence::at(std::size_t n) const {
    if (n < pre.size())
        return pre[n];
    if (period.empty())
        throw DomainError("directive sequence: index past a finite prefix");
    return period[(n - pre.size()) % period.size()];
}

Letter DirectiveSequence::letter_at(std::size_t n) const {
    if (!augmented())
        throw DomainError("directive sequence: not letter-augmented");
    if (n < letters_pre->size())
        return (*letters_pre)[n];
    return (*letters_period)[(n - letters_pre->size()) % letters_period->size()];
}

void DirectiveSequence::validate() const {
    std::uint32_t dd = d();
    for (const Substitution& s : pre)
        if (s.d != dd)
            throw DomainError("directive sequence: mixed alphabets");
    for (const Substitution& s : period)
        if (s.d != dd)
            throw DomainError("directive sequence: mixed alphabets");
    if (augmented()) {
        if (!letters_pre || !letters_period)
            throw DomainError("directive sequence: augmentation must cover both parts");
        if (letters_pre->size() != pre.size() || letters_period->size() != period.size())
            throw DomainError("directive sequence: augmentation shape mismatch");
        for (Letter a : *letters_pre)
            if (a >= dd)
                throw DomainError("directive sequence: augmentation letter outside alphabet");
        for (Letter a : *letters_period)
            if (a >= dd)
                throw DomainError("directive sequence: augmentation letter outside alphabet");
    }
}

bool is_congenial(const DirectiveSequence& s) {
    if (!s.augmented())
        throw DomainError("is_congenial: sequence is not letter-augmented");
    s.validate();
    if (s.period.empty())
        throw DomainError("is_congenial: empty period");
    std::size_t horizon = s.pre_len() + s.period_len();
    for (std::size_t n = 1; n <= horizon; ++n)
        if (s.at(n).head(s.letter_at(n)) != s.letter_at(n - 1))
            return false;
    return true;
}

std::vector<DirectiveSequence> congenial_augmentations(const DirectiveSequence& s) {
    s.validate();
    if (s.period.empty())
        throw DomainError("congenial_augmentations: empty period");
    const std::uint32_t d = s.d();
    const std::size_t k = s.pre_len(), m = s.period_len();

    // G maps a_{k+m} to a_k through the heads of one period
    auto head_of = [&](std::size_t n) {
        std::vector<Letter> f(d);
        for (Letter a = 0; a < d; ++a)
            f[a] = s.at(n).head(a);
        return f;
    };
    (void)head_of;
    // compose right-to-left: G = f_{k+1} o ... o f_{k+m}
    std::vector<Letter> G(d);
    for (Letter a = 0; a < d; ++a) {
        Letter x = a;
        for (std::size_t j = m; j >= 1; --j)
            x = s.at(k + j).head(x);
        G[a] = x;
    }

    // eventual image of G
    std::set<Letter> eset;
    for (Letter a = 0; a < d; ++a)
        eset.insert(a);
    for (std::uint32_t round = 0; round < d; ++round) {
        std::set<Letter> next;
        for (Letter a : eset)
            next.insert(G[a]);
        if (next == eset)
            break;
        eset = std::move(next);
    }
    // on the eventual image G is a bijection; cycle decomposition gives the
    // backward orbits
    std::vector<Letter> E(eset.begin(), eset.end());
    std::map<Letter, Letter> ginv;
    for (Letter a : E)
        ginv[G[a]] = a;

    std::vector<DirectiveSequence> out;
    for (Letter x : E) {
        // orbit length of x
        std::size_t c = 1;
        for (Letter y = ginv.at(x); y != x; y = ginv.at(y))
            ++c;
        std::vector<Letter> letters_period(c * m);
        Letter block_anchor = x;
        for (std::size_t t = 0; t < c; ++t) {
            Letter next_anchor = ginv.at(block_anchor); // a_{k + (t+1) m}
            letters_period[t * m] = block_anchor;
            Letter cur = next_anchor;
            for (std::size_t j = m; j >= 2; --j) {
                // a_{k + t m + j - 1} = head_{sigma_{k + t m + j}}(a_{k + t m + j})
                cur = s.at(k + j).head(cur);
                letters_period[t * m + j - 1] = cur;
            }
            block_anchor = next_anchor;
        }
        std::vector<Letter> letters_pre(k);
        Letter cur = letters_period[0]; // a_k
        for (std::size_t n = k; n >= 1; --n) {
            cur = s.at(n).head(cur);
            letters_pre[n - 1] = cur;
        }
        DirectiveSequence aug;
        aug.pre = s.pre;
        for (std::size_t t = 0; t < c; ++t)
            aug.period.insert(aug.period.end(), s.period.begin(), s.period.end());
        aug.letters_pre = std::move(letters_pre);
        aug.letters_period = std::move(letters_period);
        out.push_back(std::move(aug));
    }
    return out;
}

Word generated_prefix(const DirectiveSequence& s, std::size_t n, std::size_t budget) {
    if (!s.augmented())
        throw DomainError("generated_prefix: sequence is not letter-augmented");
    Word out = s.at(0).image(s.letter_at(0));
    if (out.size() > budget)
        out.resize(budget);
    for (std::size_t step = 1; step <= n; ++step) {
        if (out.size() >= budget)
            break;
        const Substitution& sub = s.at(step);
        Letter a = s.letter_at(step);
        if (sub.head(a) != s.letter_at(step - 1))
            throw DomainError("generated_prefix: congeniality violated at position " +
                              std::to_string(step));
        Word chunk(sub.image(a).begin() + 1, sub.image(a).end());
        std::size_t room = budget - out.size();
        for (std::size_t i = step; i-- > 0;) {
            if (chunk.size() > room)
                chunk.resize(room);
            chunk = sadic::apply(s.at(i), chunk);
        }
        if (chunk.size() > room)
            chunk.resize(room);
        out.insert(out.end(), chunk.begin(), chunk.end());
    }
    return out;
}

namespace {

// Shared bookkeeping for the trace automata over one class alphabet:
// interned morphisms and the per-class composition action.
struct TraceContext {
    const OmegaSemigroup* sg = nullptr;
    std::vector<SubstClass> classes;
    std::uint32_t d = 0;

    std::vector<Morphism> morphs;
    std::map<std::vector<ElemId>, std::uint32_t> mindex;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> compose_cache;
    std::uint32_t hL = 0;

    TraceContext(const OmegaSemigroup& s, std::vector<SubstClass> cls)
        : sg(&s), classes(std::move(cls)), d(s.base.n_letters) {
        hL = intern(canonical_morphism(s));
    }

    std::uint32_t intern(const Morphism& h) {
        auto it = mindex.find(h.img);
        if (it != mindex.end())
            return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(morphs.size());
        mindex.emplace(h.img, id);
        morphs.push_back(h);
        return id;
    }

    std::uint32_t compose(std::uint32_t ci, std::uint32_t mi) {
        auto key = std::make_pair(ci, mi);
        auto it = compose_cache.find(key);
        if (it != compose_cache.end())
            return it->second;
        std::uint32_t id = intern(classes[ci].compose_morphism(morphs[mi]));
        compose_cache.emplace(key, id);
        return id;
    }
};

// B_x unfolded on demand: state = (previous letter or start, accumulated
// morphism, inner infinite-product state).
class BxSource final : public BuchiSource {
  public:
    BxSource(std::shared_ptr<TraceContext> ctx, bool omega_sort, std::uint32_t x)
        : ctx_(std::move(ctx)),
          ax_(omega_sort ? InfiniteProductSource(*ctx_->sg, static_cast<OmegaId>(x), true)
                         : InfiniteProductSource(*ctx_->sg, static_cast<ElemId>(x))) {}

    std::uint32_t alphabet_size() const override {
        return static_cast<std::uint32_t>(ctx_->classes.size()) * ctx_->d;
    }

    std::vector<std::uint32_t> initial_states() override {
        std::vector<std::uint32_t> out;
        for (std::uint32_t ax : ax_.initial_states())
            out.push_back(intern(ctx_->d, ctx_->hL, ax));
        return out;
    }

    void successors(std::uint32_t state, std::uint32_t letter,
                    std::vector<std::uint32_t>& out) override {
        out.clear();
        auto [prev, mi, ax] = states_[state];
        std::uint32_t ci = letter / ctx_->d;
        Letter a = letter % ctx_->d;
        const SubstClass& cls = ctx_->classes[ci];
        ElemId m;
        std::uint32_t gi = ctx_->compose(ci, mi);
        if (prev == ctx_->d) { // start: feed h_L(sigma_0(a_0))
            m = ctx_->morphs[gi].img[a];
        } else {
            if (cls.head(a) != prev)
                return; // congeniality violated; reject forever
            m = cls.tail(a, ctx_->morphs[mi]);
        }
        ax_.successors(ax, m, tmp_);
        for (std::uint32_t t : tmp_)
            out.push_back(intern(a, gi, t));
    }

    bool is_accepting(std::uint32_t state) override {
        return ax_.is_accepting(std::get<2>(states_[state]));
    }

  private:
    using St = std::tuple<Letter, std::uint32_t, std::uint32_t>; // prev (d = start), morph, ax
    std::uint32_t intern(Letter prev, std::uint32_t mi, std::uint32_t ax) {
        St s{prev, mi, ax};
        auto it = index_.find(s);
        if (it != index_.end())
            return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(states_.size());
        index_.emplace(s, id);
        states_.push_back(s);
        return id;
    }

    std::shared_ptr<TraceContext> ctx_;
    InfiniteProductSource ax_;
    std::vector<St> states_;
    std::map<St, std::uint32_t> index_;
    std::vector<std::uint32_t> tmp_;
};

// Letter projection of B_x: reads classes, guesses the letters.
class CxSource final : public BuchiSource {
  public:
    CxSource(std::shared_ptr<TraceContext> ctx, bool omega_sort, std::uint32_t x)
        : d_(ctx->d), inner_(std::move(ctx), omega_sort, x) {}

    std::uint32_t alphabet_size() const override { return inner_.alphabet_size() / d_; }
    std::vector<std::uint32_t> initial_states() override { return inner_.initial_states(); }
    void successors(std::uint32_t state, std::uint32_t letter,
                    std::vector<std::uint32_t>& out) override {
        out.clear();
        std::vector<std::uint32_t> per;
        for (Letter a = 0; a < d_; ++a) {
            inner_.successors(state, letter * d_ + a, per);
            out.insert(out.end(), per.begin(), per.end());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    bool is_accepting(std::uint32_t state) override { return inner_.is_accepting(state); }

  private:
    std::uint32_t d_;
    BxSource inner_;
};

class UnionSource final : public BuchiSource {
  public:
    explicit UnionSource(std::vector<std::shared_ptr<BuchiSource>> parts)
        : parts_(std::move(parts)) {}

    std::uint32_t alphabet_size() const override { return parts_.front()->alphabet_size(); }
    std::vector<std::uint32_t> initial_states() override {
        std::vector<std::uint32_t> out;
        for (std::uint32_t p = 0; p < parts_.size(); ++p)
            for (std::uint32_t s : parts_[p]->initial_states())
                out.push_back(intern(p, s));
        return out;
    }
    void successors(std::uint32_t state, std::uint32_t letter,
                    std::vector<std::uint32_t>& out) override {
        out.clear();
        auto [p, inner] = states_[state];
        parts_[p]->successors(inner, letter, tmp_);
        for (std::uint32_t t : tmp_)
            out.push_back(intern(p, t));
    }
    bool is_accepting(std::uint32_t state) override {
        auto [p, inner] = states_[state];
        return parts_[p]->is_accepting(inner);
    }

  private:
    std::uint32_t intern(std::uint32_t part, std::uint32_t inner) {
        auto key = std::make_pair(part, inner);
        auto it = index_.find(key);
        if (it != index_.end())
            return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(states_.size());
        index_.emplace(key, id);
        states_.push_back(key);
        return id;
    }
    std::vector<std::shared_ptr<BuchiSource>> parts_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> states_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index_;
    std::vector<std::uint32_t> tmp_;
};

// Counter product implementing the conjunction of Buchi conditions.
class IntersectionSource final : public BuchiSource {
  public:
    explicit IntersectionSource(std::vector<std::shared_ptr<BuchiSource>> parts)
        : parts_(std::move(parts)) {}

    std::uint32_t alphabet_size() const override { return parts_.front()->alphabet_size(); }
    std::vector<std::uint32_t> initial_states() override {
        std::vector<std::vector<std::uint32_t>> inits;
        for (auto& p : parts_)
            inits.push_back(p->initial_states());
        std::vector<std::uint32_t> out;
        std::vector<std::uint32_t> combo(parts_.size(), 0);
        while (true) {
            St s;
            for (std::size_t i = 0; i < parts_.size(); ++i)
                s.inner.push_back(inits[i][combo[i]]);
            s.counter = 0;
            s.mark = false;
            out.push_back(intern(s));
            std::size_t pos = 0;
            while (pos < parts_.size()) {
                if (++combo[pos] < inits[pos].size())
                    break;
                combo[pos] = 0;
                ++pos;
            }
            if (pos == parts_.size())
                break;
        }
        return out;
    }
    void successors(std::uint32_t state, std::uint32_t letter,
                    std::vector<std::uint32_t>& out) override {
        out.clear();
        St cur = states_[state];
        std::vector<std::vector<std::uint32_t>> succ(parts_.size());
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            parts_[i]->successors(cur.inner[i], letter, succ[i]);
            if (succ[i].empty())
                return;
        }
        std::vector<std::uint32_t> combo(parts_.size(), 0);
        while (true) {
            St s;
            for (std::size_t i = 0; i < parts_.size(); ++i)
                s.inner.push_back(succ[i][combo[i]]);
            s.counter = cur.counter;
            s.mark = false;
            if (parts_[s.counter]->is_accepting(s.inner[s.counter])) {
                if (++s.counter == parts_.size()) {
                    s.counter = 0;
                    s.mark = true;
                }
            }
            out.push_back(intern(s));
            std::size_t pos = 0;
            while (pos < parts_.size()) {
                if (++combo[pos] < succ[pos].size())
                    break;
                combo[pos] = 0;
                ++pos;
            }
            if (pos == parts_.size())
                break;
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    bool is_accepting(std::uint32_t state) override { return states_[state].mark; }

  private:
    struct St {
        std::vector<std::uint32_t> inner;
        std::uint32_t counter = 0;
        bool mark = false;
        bool operator<(const St& o) const {
            return std::tie(inner, counter, mark) < std::tie(o.inner, o.counter, o.mark);
        }
    };
    std::uint32_t intern(const St& s) {
        auto it = index_.find(s);
        if (it != index_.end())
            return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(states_.size());
        index_.emplace(s, id);
        states_.push_back(s);
        return id;
    }
    std::vector<std::shared_ptr<BuchiSource>> parts_;
    std::vector<St> states_;
    std::map<St, std::uint32_t> index_;
};

std::vector<std::string> trace_letter_names(const std::vector<SubstClass>& classes,
                                            std::uint32_t d, bool augmented) {
    std::vector<std::string> names;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (!augmented) {
            names.push_back("xi" + std::to_string(c));
        } else {
            for (Letter a = 0; a < d; ++a)
                names.push_back("(xi" + std::to_string(c) + "," + std::to_string(a) + ")");
        }
    }
    return names;
}

// One rejecting sink over the given alphabet.
class NeverSource final : public BuchiSource {
  public:
    explicit NeverSource(std::uint32_t n_letters) : n_letters_(n_letters) {}
    std::uint32_t alphabet_size() const override { return n_letters_; }
    std::vector<std::uint32_t> initial_states() override { return {0}; }
    void successors(std::uint32_t, std::uint32_t, std::vector<std::uint32_t>& out) override {
        out.assign(1, 0);
    }
    bool is_accepting(std::uint32_t) override { return false; }

  private:
    std::uint32_t n_letters_;
};

std::shared_ptr<BuchiSource> generated_source(std::shared_ptr<TraceContext> ctx) {
    std::vector<std::shared_ptr<BuchiSource>> parts;
    const OmegaSemigroup& sg = *ctx->sg;
    std::uint32_t n_letters = static_cast<std::uint32_t>(ctx->classes.size()) * ctx->d;
    for (OmegaId v = 0; v < sg.n_omega(); ++v)
        if (sg.in_H[v])
            parts.push_back(std::make_shared<BxSource>(ctx, true, v));
    if (parts.empty()) // empty language
        parts.push_back(std::make_shared<NeverSource>(n_letters));
    return std::make_shared<UnionSource>(std::move(parts));
}

std::shared_ptr<BuchiSource> directed_source(std::shared_ptr<TraceContext> ctx,
                                             const std::vector<GeneratingSet>& family) {
    std::vector<std::shared_ptr<BuchiSource>> unions;
    for (const GeneratingSet& X : family) {
        std::vector<std::shared_ptr<BuchiSource>> factors;
        for (ElemId e : X.fins)
            factors.push_back(std::make_shared<CxSource>(ctx, false, e));
        for (OmegaId v : X.oms)
            factors.push_back(std::make_shared<CxSource>(ctx, true, v));
        unions.push_back(std::make_shared<IntersectionSource>(std::move(factors)));
    }
    if (unions.empty())
        unions.push_back(
            std::make_shared<NeverSource>(static_cast<std::uint32_t>(ctx->classes.size())));
    return std::make_shared<UnionSource>(std::move(unions));
}

} // namespace

GeneratedValue generated_value(const DirectiveSequence& s, const OmegaSemigroup& sg,
                               const Config& cfg) {
    if (!is_congenial(s))
        throw DomainError("generated_value: sequence is not congenial");
    // one class per sequence position phase
    std::vector<SubstClass> classes;
    for (std::size_t n = 0; n < s.pre_len() + s.period_len(); ++n)
        classes.push_back(class_of(s.at(n), sg, cfg));
    TraceContext ctx(sg, classes);
    // iterate (position phase, morphism) until it repeats; collect block values
    std::vector<ElemId> values;
    std::map<std::pair<std::size_t, std::uint32_t>, std::size_t> seen;
    std::uint32_t mi = ctx.hL;
    std::size_t n = 0;
    std::size_t preperiod = 0;
    while (true) {
        std::size_t phase = n < s.pre_len()
                                ? n
                                : s.pre_len() + (n - s.pre_len()) % s.period_len();
        // positions n >= 1 all use the tail formula, so states may only be
        // matched there (position 0 feeds the whole first image)
        if (n >= s.pre_len() && n >= 1) {
            auto key = std::make_pair(phase, mi);
            auto it = seen.find(key);
            if (it != seen.end()) {
                preperiod = it->second;
                break;
            }
            seen.emplace(key, n);
        }
        std::uint32_t ci = static_cast<std::uint32_t>(phase);
        Letter a = s.letter_at(n);
        std::uint32_t gi = ctx.compose(ci, mi);
        ElemId m = n == 0 ? ctx.morphs[gi].img[a] : ctx.classes[ci].tail(a, ctx.morphs[mi]);
        values.push_back(m);
        mi = gi;
        ++n;
    }
    std::vector<ElemId> pre(values.begin(), values.begin() + preperiod);
    std::vector<ElemId> per(values.begin() + preperiod, values.end());
    auto [is_omega, id] = sg.up_product(pre, per);
    return GeneratedValue{is_omega, id};
}

TraceAutomaton build_Bx(const OmegaSemigroup& sg, const std::vector<SubstClass>& classes,
                        bool omega_sort, std::uint32_t x, const Config& cfg) {
    auto ctx = std::make_shared<TraceContext>(sg, classes);
    BxSource src(ctx, omega_sort, x);
    TraceAutomaton t;
    t.aut = materialize(src, cfg);
    t.aut.letter_names = trace_letter_names(classes, ctx->d, true);
    t.classes = classes;
    t.d = ctx->d;
    t.augmented = true;
    return t;
}

TraceAutomaton build_generated_automaton(const OmegaSemigroup& sg,
                                         const std::vector<SubstClass>& classes,
                                         const Config& cfg) {
    auto ctx = std::make_shared<TraceContext>(sg, classes);
    auto src = generated_source(ctx);
    TraceAutomaton t;
    t.aut = materialize(*src, cfg);
    t.aut.letter_names = trace_letter_names(classes, ctx->d, true);
    t.classes = classes;
    t.d = ctx->d;
    t.augmented = true;
    return t;
}

namespace {

bool closure_meets_H(const OmegaSemigroup& sg, const std::vector<ElemId>& fins,
                     const std::vector<OmegaId>& oms) {
    for (OmegaId v : oms)
        if (sg.in_H[v])
            return true;
    // finite-sort closure
    std::vector<ElemId> closure = fins;
    std::sort(closure.begin(), closure.end());
    closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
    for (std::size_t i = 0; i < closure.size(); ++i)
        for (std::size_t j = 0; j < closure.size(); ++j) {
            ElemId m = sg.mul(closure[i], closure[j]);
            if (std::find(closure.begin(), closure.end(), m) == closure.end())
                closure.push_back(m);
        }
    std::vector<OmegaId> omega = oms;
    for (ElemId e : closure)
        omega.push_back(sg.omega_power(e));
    std::size_t base = omega.size();
    for (std::size_t i = 0; i < base; ++i)
        for (ElemId m : closure)
            omega.push_back(sg.mixed(m, omega[i]));
    for (OmegaId v : omega)
        if (sg.in_H[v])
            return true;
    return false;
}

} // namespace

std::vector<GeneratingSet> generating_sets(const OmegaSemigroup& sg, std::uint32_t d) {
    // candidates: subsets of M_f + M_omega of size at most d (a sequence has
    // at most |Sigma| congenial words, so larger sets can never be covered)
    std::vector<std::pair<bool, std::uint32_t>> universe;
    for (ElemId e = 1; e <= sg.nf; ++e)
        universe.emplace_back(false, e);
    for (OmegaId v = 0; v < sg.n_omega(); ++v)
        universe.emplace_back(true, v);

    std::vector<std::vector<std::size_t>> kept;
    std::vector<std::size_t> combo;
    auto test_combo = [&](const std::vector<std::size_t>& pick) {
        std::vector<ElemId> fins;
        std::vector<OmegaId> oms;
        for (std::size_t i : pick) {
            if (universe[i].first)
                oms.push_back(universe[i].second);
            else
                fins.push_back(universe[i].second);
        }
        if (closure_meets_H(sg, fins, oms)) {
            // drop if a kept subset is contained in it
            for (const auto& k : kept) {
                bool subset = std::includes(pick.begin(), pick.end(), k.begin(), k.end());
                if (subset)
                    return;
            }
            kept.push_back(pick);
        }
    };
    // enumerate by size so minimal sets are kept first
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                            std::size_t remaining) {
        if (remaining == 0) {
            test_combo(combo);
            return;
        }
        for (std::size_t i = start; i < universe.size(); ++i) {
            combo.push_back(i);
            rec(i + 1, remaining - 1);
            combo.pop_back();
        }
    };
    for (std::size_t size = 1; size <= d; ++size)
        rec(0, size);

    std::vector<GeneratingSet> out;
    for (const auto& pick : kept) {
        GeneratingSet g;
        for (std::size_t i : pick) {
            if (universe[i].first)
                g.oms.push_back(universe[i].second);
            else
                g.fins.push_back(universe[i].second);
        }
        out.push_back(std::move(g));
    }
    return out;
}

TraceAutomaton build_directed_automaton(const OmegaSemigroup& sg,
                                        const std::vector<SubstClass>& classes,
                                        const Config& cfg) {
    auto ctx = std::make_shared<TraceContext>(sg, classes);
    auto family = generating_sets(sg, ctx->d);
    TraceAutomaton t;
    t.classes = classes;
    t.d = ctx->d;
    t.augmented = false;
    if (family.empty()) {
        // nothing can reach the accepting set: the empty automaton
        t.aut.n_letters = static_cast<std::uint32_t>(classes.size());
        t.aut.n_states = 1;
        t.aut.initial = {0};
        t.aut.finalize();
        t.aut.letter_names = trace_letter_names(classes, ctx->d, false);
        return t;
    }
    auto src = directed_source(ctx, family);
    t.aut = materialize(*src, cfg);
    t.aut.letter_names = trace_letter_names(classes, ctx->d, false);
    return t;
}

BuchiAutomaton relabel_for_finite_S(const TraceAutomaton& t, const SubstitutionSet& set,
                                    const OmegaSemigroup& sg, const Config& cfg) {
    std::vector<std::size_t> class_of_name(set.subs.size());
    for (std::size_t i = 0; i < set.subs.size(); ++i) {
        SubstClass c = class_of(set.subs[i], sg, cfg);
        bool found = false;
        for (std::size_t j = 0; j < t.classes.size() && !found; ++j)
            if (c.equals(t.classes[j])) {
                class_of_name[i] = j;
                found = true;
            }
        if (!found)
            throw DomainError("relabel_for_finite_S: `" + set.names[i] +
                              "` has no class in the automaton's alphabet");
    }
    BuchiAutomaton out;
    std::uint32_t per = t.augmented ? t.d : 1;
    out.n_letters = static_cast<std::uint32_t>(set.subs.size()) * per;
    out.n_states = t.aut.n_states;
    out.initial = t.aut.initial;
    out.accepting = t.aut.accepting;
    out.delta.assign(out.n_states, std::vector<std::vector<std::uint32_t>>(out.n_letters));
    for (std::uint32_t q = 0; q < out.n_states; ++q)
        for (std::size_t i = 0; i < set.subs.size(); ++i)
            for (std::uint32_t sub = 0; sub < per; ++sub)
                out.delta[q][i * per + sub] =
                    t.aut.delta[q][class_of_name[i] * per + sub];
    for (std::size_t i = 0; i < set.subs.size(); ++i) {
        if (!t.augmented) {
            out.letter_names.push_back(set.names[i]);
        } else {
            for (Letter a = 0; a < t.d; ++a)
                out.letter_names.push_back("(" + set.names[i] + "," + std::to_string(a) + ")");
        }
    }
    return out;
}

namespace {

// distinct substitutions of the sequence become the class alphabet; the
// trace word indexes them
struct TraceWord {
    std::vector<SubstClass> classes;
    Word pre, period; // letters are class indices (x d + letter when augmented)
};

TraceWord trace_word_of(const DirectiveSequence& s, const OmegaSemigroup& sg, bool augmented,
                        const Config& cfg) {
    TraceWord t;
    std::vector<Substitution> distinct;
    auto index_of = [&](const Substitution& sub) {
        for (std::size_t i = 0; i < distinct.size(); ++i)
            if (distinct[i] == sub)
                return i;
        distinct.push_back(sub);
        t.classes.push_back(class_of(sub, sg, cfg));
        return distinct.size() - 1;
    };
    std::uint32_t d = s.d();
    for (std::size_t n = 0; n < s.pre_len(); ++n) {
        std::size_t ci = index_of(s.at(n));
        t.pre.push_back(static_cast<Letter>(augmented ? ci * d + s.letter_at(n) : ci));
    }
    for (std::size_t n = s.pre_len(); n < s.pre_len() + s.period_len(); ++n) {
        std::size_t ci = index_of(s.at(n));
        t.period.push_back(static_cast<Letter>(augmented ? ci * d + s.letter_at(n) : ci));
    }
    return t;
}

} // namespace

bool decide_up(const DirectiveSequence& s, const OmegaSemigroup& sg, DecideMode mode,
               const Config& cfg) {
    s.validate();
    if (s.period.empty())
        throw DomainError("decide_up: empty period");
    if (mode == DecideMode::GeneratedWithAugmentation && !s.augmented())
        throw DomainError("decide_up: generated mode needs a letter augmentation");

    bool augmented = mode == DecideMode::GeneratedWithAugmentation;
    TraceWord tw = trace_word_of(s, sg, augmented, cfg);
    auto ctx = std::make_shared<TraceContext>(sg, tw.classes);
    std::shared_ptr<BuchiSource> src;
    if (augmented) {
        src = generated_source(ctx);
    } else {
        auto family = generating_sets(sg, ctx->d);
        if (family.empty())
            return false;
        src = directed_source(ctx, family);
    }
    return up_member(*src, tw.pre, tw.period);
}

bool decide_up(const DirectiveSequence& s, const BuchiAutomaton& a, DecideMode mode,
               const Config& cfg) {
    OmegaSemigroup sg = build_semigroup(a, cfg);
    return decide_up(s, sg, mode, cfg);
}

bool weakly_primitive_up(const DirectiveSequence& s) {
    s.validate();
    if (s.period.empty())
        throw DomainError("weakly_primitive_up: empty period");
    const std::uint32_t d = s.d();
    auto mat_mul = [&](const std::vector<std::vector<bool>>& a,
                       const std::vector<std::vector<bool>>& b) {
        std::vector<std::vector<bool>> c(d, std::vector<bool>(d, false));
        for (std::uint32_t i = 0; i < d; ++i)
            for (std::uint32_t k = 0; k < d; ++k)
                if (a[i][k])
                    for (std::uint32_t j = 0; j < d; ++j)
                        if (b[k][j])
                            c[i][j] = true;
        return c;
    };
    auto all_ones = [&](const std::vector<std::vector<bool>>& m) {
        for (auto& row : m)
            for (bool v : row)
                if (!v)
                    return false;
        return true;
    };
    std::size_t horizon = s.pre_len() + s.period_len();
    for (std::size_t n0 = 0; n0 < horizon; ++n0) {
        std::vector<std::vector<bool>> prod = s.at(n0).incidence();
        std::set<std::pair<std::size_t, std::vector<std::vector<bool>>>> seen;
        std::size_t n = n0 + 1;
        bool ok = all_ones(prod);
        while (!ok) {
            std::size_t phase = n < s.pre_len()
                                    ? n
                                    : s.pre_len() + (n - s.pre_len()) % s.period_len();
            auto key = std::make_pair(phase, prod);
            if (seen.count(key))
                break; // looped without reaching a positive composition
            seen.insert(key);
            prod = mat_mul(prod, s.at(n).incidence());
            ok = all_ones(prod);
            ++n;
        }
        if (!ok)
            return false;
    }
    return true;
}

} // namespace sadic
