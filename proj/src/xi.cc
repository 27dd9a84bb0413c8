#include "sadic/xi.hh"

#include <algorithm>
#include <map>
#include <variant>

#include "sadic/dfa.hh"
#include "sadic/error.hh"

namespace sadic {

Morphism canonical_morphism(const OmegaSemigroup& s) {
    return Morphism{s.letter_elem};
}

std::size_t morphism_space_size(const OmegaSemigroup& s, std::uint32_t d, const Config& cfg) {
    std::size_t n = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        if (n > cfg.morphism_space_cap / std::max<std::size_t>(1, s.nf))
            throw GuardError("morphism space |M_f|^d exceeds the configured cap");
        n *= s.nf;
    }
    if (n > cfg.morphism_space_cap)
        throw GuardError("morphism space |M_f|^d exceeds the configured cap");
    return n;
}

Morphism morphism_at(const OmegaSemigroup& s, std::uint32_t d, std::size_t index) {
    Morphism h;
    h.img.resize(d);
    for (std::uint32_t i = 0; i < d; ++i) {
        h.img[i] = static_cast<ElemId>(1 + index % s.nf);
        index /= s.nf;
    }
    return h;
}

namespace {

ElemId eval_word(const OmegaSemigroup& s, const Morphism& h, const Word& w) {
    ElemId m = kOne;
    for (Letter a : w)
        m = s.mul(m, h.img.at(a));
    return m;
}

} // namespace

struct SubstClass::Impl {
    const OmegaSemigroup* sg = nullptr;
    std::uint32_t d = 0;
    Config cfg;

    // either a concrete representative or a composition of two classes
    std::optional<Substitution> concrete;
    std::shared_ptr<Impl> outer, inner;

    mutable std::mutex mu;
    mutable std::map<std::vector<ElemId>, std::vector<SegList>> rows; // morphism -> per-letter
    mutable std::vector<std::vector<std::pair<Letter, bool>>> intro;  // per-letter, cached
    mutable std::vector<std::uint32_t> key; // forced-table serialization
    mutable std::map<std::vector<ElemId>, std::vector<ElemId>> compose_memo;

    const std::vector<SegList>& row_block(const Morphism& h) const;
    std::vector<SegList> compute_rows(const Morphism& h) const;
};

namespace {

SegList concrete_row(const OmegaSemigroup& s, const Morphism& h, const Word& image) {
    SegList out;
    for (auto& [b, v] : first_occurrence_factorization(image))
        out.emplace_back(b, eval_word(s, h, v));
    return out;
}

// the merge-and-rename composition of segment rows
SegList composed_row(const OmegaSemigroup& s, const Morphism& h,
                     const SubstClass::Impl& outer, const SubstClass::Impl& inner, Letter a);

} // namespace

const std::vector<SegList>& SubstClass::Impl::row_block(const Morphism& h) const {
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = rows.find(h.img);
        if (it != rows.end())
            return it->second;
    }
    std::vector<SegList> block = compute_rows(h);
    std::lock_guard<std::mutex> lock(mu);
    return rows.emplace(h.img, std::move(block)).first->second;
}

std::vector<SegList> SubstClass::Impl::compute_rows(const Morphism& h) const {
    std::vector<SegList> block(d);
    for (Letter a = 0; a < d; ++a) {
        if (concrete)
            block[a] = concrete_row(*sg, h, concrete->image(a));
        else
            block[a] = composed_row(*sg, h, *outer, *inner, a);
    }
    return block;
}

namespace {

SegList composed_row(const OmegaSemigroup& s, const Morphism& h,
                     const SubstClass::Impl& outer, const SubstClass::Impl& inner, Letter a) {
    // g = h o sigma, where sigma is the outer representative
    Morphism g;
    {
        auto key = h.img;
        {
            std::lock_guard<std::mutex> lock(outer.mu);
            auto it = outer.compose_memo.find(key);
            if (it != outer.compose_memo.end())
                g.img = it->second;
        }
        if (g.img.empty()) {
            g.img.resize(outer.d);
            const auto& ob = outer.row_block(h);
            for (Letter b = 0; b < outer.d; ++b) {
                ElemId m = kOne;
                for (auto& [c, x] : ob[b])
                    m = s.mul(s.mul(m, h.img[c]), x);
                g.img[b] = m;
            }
            std::lock_guard<std::mutex> lock(outer.mu);
            outer.compose_memo.emplace(key, g.img);
        }
    }

    const SegList inner_row = inner.row_block(g)[a]; // pairs (b_i, g(v_i))
    const auto& outer_block = outer.row_block(h);

    SegList list;
    for (auto& [b, gv] : inner_row) {
        const SegList& orow = outer_block[b];
        for (std::size_t j = 0; j < orow.size(); ++j) {
            ElemId x = orow[j].second;
            if (j + 1 == orow.size())
                x = s.mul(x, gv); // h(t_i) = h(w_{i,k_i}) * h(sigma(v_i))
            list.emplace_back(orow[j].first, x);
        }
    }
    // eliminate duplicate letters: fold entry j into entry j-1
    while (true) {
        std::size_t dup = list.size();
        std::vector<bool> present(inner.d, false);
        for (std::size_t j = 0; j < list.size(); ++j) {
            Letter c = list[j].first;
            if (present[c]) {
                dup = j;
                break;
            }
            present[c] = true;
        }
        if (dup == list.size())
            break;
        ElemId merged = s.mul(s.mul(list[dup - 1].second, h.img[list[dup].first]),
                              list[dup].second);
        list[dup - 1].second = merged;
        list.erase(list.begin() + static_cast<std::ptrdiff_t>(dup));
    }
    return list;
}

} // namespace

std::uint32_t SubstClass::d() const {
    return impl_->d;
}

const OmegaSemigroup& SubstClass::semigroup() const {
    return *impl_->sg;
}

SegList SubstClass::row(Letter a, const Morphism& h) const {
    return impl_->row_block(h)[a];
}

const std::vector<std::pair<Letter, bool>>& SubstClass::introduces(Letter a) const {
    {
        std::lock_guard<std::mutex> lock(impl_->mu);
        if (!impl_->intro.empty())
            return impl_->intro[a];
    }
    // any morphism into M_f determines the shape: a block is empty iff its
    // value is the adjoined identity
    Morphism h = canonical_morphism(*impl_->sg);
    const auto& block = impl_->row_block(h);
    std::vector<std::vector<std::pair<Letter, bool>>> intro(impl_->d);
    for (Letter b = 0; b < impl_->d; ++b)
        for (auto& [c, x] : block[b])
            intro[b].emplace_back(c, x != kOne);
    std::lock_guard<std::mutex> lock(impl_->mu);
    if (impl_->intro.empty())
        impl_->intro = std::move(intro);
    return impl_->intro[a];
}

Letter SubstClass::head(Letter a) const {
    return introduces(a).front().first;
}

bool SubstClass::expanding(Letter a) const {
    const auto& in = introduces(a);
    return in.size() > 1 || in.front().second;
}

ElemId SubstClass::tail(Letter a, const Morphism& h) const {
    const OmegaSemigroup& s = *impl_->sg;
    SegList r = row(a, h);
    ElemId m = r.front().second; // h(v_1)
    for (std::size_t i = 1; i < r.size(); ++i)
        m = s.mul(s.mul(m, h.img[r[i].first]), r[i].second);
    return m;
}

Morphism SubstClass::compose_morphism(const Morphism& h) const {
    const OmegaSemigroup& s = *impl_->sg;
    {
        std::lock_guard<std::mutex> lock(impl_->mu);
        auto it = impl_->compose_memo.find(h.img);
        if (it != impl_->compose_memo.end())
            return Morphism{it->second};
    }
    Morphism g;
    g.img.resize(impl_->d);
    const auto& block = impl_->row_block(h);
    for (Letter a = 0; a < impl_->d; ++a) {
        ElemId m = kOne;
        for (auto& [c, x] : block[a])
            m = s.mul(s.mul(m, h.img[c]), x);
        g.img[a] = m;
    }
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->compose_memo.emplace(h.img, g.img);
    return g;
}

const std::vector<std::uint32_t>& SubstClass::force_key() const {
    {
        std::lock_guard<std::mutex> lock(impl_->mu);
        if (!impl_->key.empty())
            return impl_->key;
    }
    const OmegaSemigroup& s = *impl_->sg;
    std::size_t total = morphism_space_size(s, impl_->d, impl_->cfg);
    std::vector<std::uint32_t> key;
    for (std::size_t i = 0; i < total; ++i) {
        Morphism h = morphism_at(s, impl_->d, i);
        const auto& block = impl_->row_block(h);
        for (Letter a = 0; a < impl_->d; ++a) {
            key.push_back(static_cast<std::uint32_t>(block[a].size()));
            for (auto& [c, x] : block[a]) {
                key.push_back(c);
                key.push_back(x);
            }
        }
    }
    std::lock_guard<std::mutex> lock(impl_->mu);
    if (impl_->key.empty())
        impl_->key = std::move(key);
    return impl_->key;
}

bool SubstClass::equals(const SubstClass& o) const {
    if (impl_ == o.impl_)
        return true;
    if (impl_->sg != o.impl_->sg || impl_->d != o.impl_->d)
        return false;
    return force_key() == o.force_key();
}

bool SubstClass::equals_on(const SubstClass& o, const std::vector<Morphism>& hs) const {
    if (impl_ == o.impl_)
        return true;
    for (const Morphism& h : hs)
        if (impl_->row_block(h) != o.impl_->row_block(h))
            return false;
    return true;
}

SubstClass class_of(const Substitution& sigma, const OmegaSemigroup& s, const Config& cfg) {
    if (sigma.d != s.base.n_letters)
        throw DomainError("class_of: substitution alphabet does not match the automaton");
    SubstClass c;
    c.impl_ = std::make_shared<SubstClass::Impl>();
    c.impl_->sg = &s;
    c.impl_->d = sigma.d;
    c.impl_->cfg = cfg;
    c.impl_->concrete = sigma;
    return c;
}

SubstClass compose_classes(const SubstClass& xi, const SubstClass& zeta) {
    if (xi.impl_->sg != zeta.impl_->sg)
        throw DomainError("compose_classes: classes over different semigroups");
    SubstClass c;
    c.impl_ = std::make_shared<SubstClass::Impl>();
    c.impl_->sg = xi.impl_->sg;
    c.impl_->d = xi.impl_->d;
    c.impl_->cfg = xi.impl_->cfg;
    c.impl_->outer = xi.impl_;
    c.impl_->inner = zeta.impl_;
    return c;
}

std::vector<Morphism> reachable_morphisms(const OmegaSemigroup& s,
                                          const std::vector<SubstClass>& classes,
                                          const Config& cfg) {
    std::vector<Morphism> out = {canonical_morphism(s)};
    std::map<std::vector<ElemId>, bool> seen;
    seen[out.front().img] = true;
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const SubstClass& c : classes) {
            Morphism g = c.compose_morphism(out[i]);
            if (!seen.count(g.img)) {
                if (out.size() >= cfg.morphism_space_cap)
                    throw GuardError("reachable_morphisms: cap exceeded");
                seen[g.img] = true;
                out.push_back(std::move(g));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Word rows over all morphisms; extension by a letter acts on the last block.
struct WordClass {
    std::vector<SegList> rows; // per morphism, odometer order
    Word rep;
};

} // namespace

std::vector<std::pair<SubstClass, Substitution>> enumerate_classes(const OmegaSemigroup& s,
                                                                   std::uint32_t d,
                                                                   const Config& cfg) {
    const std::size_t nh = morphism_space_size(s, d, cfg);
    std::vector<Morphism> hs;
    hs.reserve(nh);
    for (std::size_t i = 0; i < nh; ++i)
        hs.push_back(morphism_at(s, d, i));

    auto key_of = [&](const std::vector<SegList>& rows) {
        std::vector<std::uint32_t> key;
        for (const SegList& r : rows) {
            key.push_back(static_cast<std::uint32_t>(r.size()));
            for (auto& [c, x] : r) {
                key.push_back(c);
                key.push_back(x);
            }
        }
        return key;
    };

    // close word rows under extension by one letter
    std::map<std::vector<std::uint32_t>, std::size_t> index;
    std::vector<WordClass> wcs;
    for (Letter c = 0; c < d; ++c) {
        WordClass wc;
        wc.rows.assign(nh, SegList{{c, kOne}});
        wc.rep = {c};
        auto k = key_of(wc.rows);
        if (!index.count(k)) {
            index.emplace(std::move(k), wcs.size());
            wcs.push_back(std::move(wc));
        }
    }
    for (std::size_t i = 0; i < wcs.size(); ++i) {
        for (Letter c = 0; c < d; ++c) {
            WordClass ext;
            ext.rows.resize(nh);
            for (std::size_t hi = 0; hi < nh; ++hi) {
                SegList r = wcs[i].rows[hi];
                bool present = false;
                for (auto& [b, x] : r)
                    present |= (b == c);
                if (present)
                    r.back().second = s.mul(r.back().second, hs[hi].img[c]);
                else
                    r.emplace_back(c, kOne);
                ext.rows[hi] = std::move(r);
            }
            auto k = key_of(ext.rows);
            if (!index.count(k)) {
                if (wcs.size() >= cfg.class_enum_cap)
                    throw GuardError("enumerate_classes: word-row closure cap exceeded");
                ext.rep = wcs[i].rep;
                ext.rep.push_back(c);
                index.emplace(std::move(k), wcs.size());
                wcs.push_back(std::move(ext));
            }
        }
    }

    // every d-tuple of word rows is a realizable segments table; recover each
    // witness image through the DFA pipeline of the effectiveness lemma
    std::size_t n_classes = 1;
    for (std::uint32_t a = 0; a < d; ++a) {
        if (n_classes > cfg.class_enum_cap / wcs.size() + 1)
            throw GuardError("enumerate_classes: class count cap exceeded");
        n_classes *= wcs.size();
    }
    if (n_classes > cfg.class_enum_cap)
        throw GuardError("enumerate_classes: class count cap exceeded");

    auto witness_for = [&](const WordClass& wc) {
        Dfa acc;
        bool first = true;
        for (std::size_t hi = 0; hi < nh; ++hi) {
            const SegList& r = wc.rows[hi];
            std::vector<std::pair<Letter, Dfa>> parts;
            std::vector<bool> allowed(d, false);
            for (auto& [b, x] : r) {
                allowed[b] = true;
                parts.emplace_back(b, preimage_dfa(s.table, hs[hi].img, x, allowed, cfg));
            }
            Dfa lah = concat_with_markers(parts, cfg);
            acc = first ? lah : intersect(acc, lah, cfg);
            first = false;
        }
        auto w = witness(acc);
        if (!w)
            throw DomainError("enumerate_classes: BFS row closure produced an unrealized row");
        return *w;
    };
    std::vector<Word> images(wcs.size());
    for (std::size_t i = 0; i < wcs.size(); ++i)
        images[i] = witness_for(wcs[i]);

    std::vector<std::pair<SubstClass, Substitution>> out;
    std::vector<std::size_t> pick(d, 0);
    while (true) {
        std::vector<Word> im(d);
        for (std::uint32_t a = 0; a < d; ++a)
            im[a] = images[pick[a]];
        Substitution sub(d, std::move(im));
        out.emplace_back(class_of(sub, s, cfg), sub);
        std::uint32_t pos = 0;
        while (pos < d) {
            if (++pick[pos] < wcs.size())
                break;
            pick[pos] = 0;
            ++pos;
        }
        if (pos == d)
            break;
    }
    return out;
}

Trace trace_of(const std::vector<Substitution>& pre, const std::vector<Substitution>& period,
               const OmegaSemigroup& s, const std::optional<std::vector<Letter>>& letters_pre,
               const std::optional<std::vector<Letter>>& letters_period, const Config& cfg) {
    if (period.empty())
        throw DomainError("trace_of: empty period");
    std::vector<SubstClass> distinct;
    auto canonical = [&](const Substitution& sub) {
        SubstClass c = class_of(sub, s, cfg);
        for (const SubstClass& seen : distinct) {
            bool eq = cfg.xi_reachable_only
                          ? c.equals_on(seen, reachable_morphisms(s, {c, seen}, cfg))
                          : c.equals(seen);
            if (eq)
                return seen;
        }
        distinct.push_back(c);
        return c;
    };
    Trace t;
    for (const Substitution& sub : pre)
        t.pre.push_back(canonical(sub));
    for (const Substitution& sub : period)
        t.period.push_back(canonical(sub));
    t.letters_pre = letters_pre;
    t.letters_period = letters_period;
    return t;
}

std::vector<std::size_t> phi_classes(const std::function<OmegaId(const Morphism&)>& alpha_value,
                                     const OmegaSemigroup& s,
                                     const std::vector<SubstClass>& classes) {
    std::vector<std::size_t> out;
    Morphism hL = canonical_morphism(s);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        Morphism g = classes[i].compose_morphism(hL);
        if (s.in_H[alpha_value(g)])
            out.push_back(i);
    }
    return out;
}

std::function<OmegaId(const Morphism&)> up_alpha_values(const OmegaSemigroup& s, Word u, Word v) {
    if (v.empty())
        throw DomainError("up_alpha_values: empty period");
    return [&s, u = std::move(u), v = std::move(v)](const Morphism& h) {
        ElemId pu = eval_word(s, h, u);
        ElemId pv = eval_word(s, h, v);
        return s.mixed(pu, s.omega_power(pv));
    };
}

} // namespace sadic
