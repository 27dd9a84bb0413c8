#include "sadic/morphic.hh"

#include <algorithm>
#include <map>

#include "sadic/error.hh"

namespace sadic {

OmegaValue ov_concat(const OmegaSemigroup& s, const OmegaValue& a, const OmegaValue& b) {
    using K = OmegaValue::Kind;
    if (a.kind == K::Bottom)
        return OmegaValue::bottom();
    if (a.kind == K::Infinite)
        return a;
    switch (b.kind) {
    case K::Bottom:
        return OmegaValue::bottom();
    case K::Finite:
        return OmegaValue::finite(s.mul(a.fin, b.fin));
    case K::Infinite:
        return OmegaValue::infinite(s.mixed(a.fin, b.inf));
    }
    return OmegaValue::bottom();
}

namespace {

// Letters whose sigma^omega is a finite word: saturation from the fixed
// letters, adding letters whose whole image is already terminal.
std::vector<bool> terminal_letters(const std::function<const std::vector<std::pair<Letter, bool>>&(Letter)>& intro,
                                   std::uint32_t d) {
    std::vector<bool> fin(d, false);
    for (Letter a = 0; a < d; ++a) {
        const auto& in = intro(a);
        if (in.size() == 1 && in[0].first == a && !in[0].second)
            fin[a] = true;
    }
    for (std::uint32_t round = 0; round < d; ++round) {
        bool changed = false;
        for (Letter a = 0; a < d; ++a) {
            if (fin[a])
                continue;
            bool all = true;
            for (auto& [c, flag] : intro(a))
                all &= fin[c];
            if (all) {
                fin[a] = true;
                changed = true;
            }
        }
        if (!changed)
            break;
    }
    return fin;
}

std::vector<bool> terminal_letters_of_class(const SubstClass& xi) {
    return terminal_letters([&](Letter a) -> const std::vector<std::pair<Letter, bool>>& {
        return xi.introduces(a);
    }, xi.d());
}

} // namespace

SigmaOmegaResult sigma_omega_prefix(const Substitution& sigma, const Word& u, std::size_t k,
                                    std::size_t budget) {
    const std::uint32_t d = sigma.d;
    // concrete terminal letters
    std::vector<std::vector<std::pair<Letter, bool>>> intro(d);
    for (Letter a = 0; a < d; ++a)
        for (auto& [b, v] : first_occurrence_factorization(sigma.image(a)))
            intro[a].emplace_back(b, !v.empty());
    std::vector<bool> fin = terminal_letters(
        [&](Letter a) -> const std::vector<std::pair<Letter, bool>>& { return intro[a]; }, d);

    auto settle = [&](const Word& w) { // sigma^d(w) for all-terminal w
        Word out = w;
        for (std::uint32_t i = 0; i < d; ++i)
            out = sadic::apply(sigma, out);
        return out;
    };

    SigmaOmegaResult res;
    if (u.empty()) {
        res.kind = SigmaOmegaResult::Kind::Finite;
        res.up = {Word{}, Word{}};
        return res;
    }
    bool all_fin = true;
    for (Letter a : u)
        all_fin &= fin[a];
    if (all_fin) {
        res.kind = SigmaOmegaResult::Kind::Finite;
        res.word = settle(u);
        res.up = {res.word, Word{}};
        if (res.word.size() > budget)
            throw GuardError("sigma_omega_prefix: budget exceeded");
        return res;
    }

    // split u at its first non-terminal letter; everything after is absorbed
    std::size_t split = 0;
    while (fin[u[split]])
        ++split;
    Word head_part = settle(Word(u.begin(), u.begin() + split));
    Letter b0 = u[split];

    // successor chain on non-terminal letters
    auto succ_and_prefix = [&](Letter b) {
        const Word& im = sigma.image(b);
        std::size_t i = 0;
        while (fin[im[i]])
            ++i;
        return std::make_pair(im[i], settle(Word(im.begin(), im.begin() + i)));
    };
    std::vector<Letter> path = {b0};
    std::vector<Word> contrib; // settled prefix words along the chain
    std::map<Letter, std::size_t> pos = {{b0, 0}};
    std::size_t cycle_start;
    while (true) {
        auto [nxt, pref] = succ_and_prefix(path.back());
        contrib.push_back(pref);
        auto it = pos.find(nxt);
        if (it != pos.end()) {
            cycle_start = it->second;
            break;
        }
        pos.emplace(nxt, path.size());
        path.push_back(nxt);
    }
    // contrib[t] sits between path[t] and its successor
    Word stem = head_part;
    for (std::size_t t = 0; t < cycle_start; ++t)
        stem.insert(stem.end(), contrib[t].begin(), contrib[t].end());
    Word cycle_word;
    for (std::size_t t = cycle_start; t < path.size(); ++t)
        cycle_word.insert(cycle_word.end(), contrib[t].begin(), contrib[t].end());

    if (cycle_word.empty() && path.size() - cycle_start > 1) {
        res.kind = SigmaOmegaResult::Kind::Divergent;
        return res;
    }
    res.kind = SigmaOmegaResult::Kind::Infinite;
    if (cycle_word.empty()) {
        // head fixpoint: iterate the letter; prefixes are monotone
        Letter dd = path[cycle_start];
        Word w = {dd};
        while (w.size() < k) {
            if (w.size() > budget)
                throw GuardError("sigma_omega_prefix: budget exceeded");
            w = sadic::apply(sigma, w);
        }
        Word out = stem;
        out.insert(out.end(), w.begin(), w.end());
        out.resize(std::min(out.size(), k));
        res.word = std::move(out);
        // certify the tail as ultimately periodic when the expansion past
        // the head settles: sigma(dd) = dd . u with u all-terminal
        const Word& im = sigma.image(dd);
        Word tail_part(im.begin() + 1, im.end());
        bool tail_fin = true;
        for (Letter c : tail_part)
            tail_fin &= fin[c];
        if (tail_fin && !tail_part.empty()) {
            // dd u sigma(u) ... sigma^d(u) (sigma^d(u))^omega
            Word pre = stem;
            pre.push_back(dd);
            Word cur = tail_part;
            for (std::uint32_t i = 0; i < d; ++i) {
                pre.insert(pre.end(), cur.begin(), cur.end());
                cur = sadic::apply(sigma, cur);
            }
            res.up = {pre, cur};
        }
        return res;
    }
    // the chain loops through a non-trivial prefix: ultimately periodic
    Word per = cycle_word;
    res.up = {stem, per};
    Word out = stem;
    while (out.size() < k) {
        if (out.size() > budget)
            throw GuardError("sigma_omega_prefix: budget exceeded");
        out.insert(out.end(), per.begin(), per.end());
    }
    out.resize(k);
    res.word = std::move(out);
    return res;
}

namespace {

struct ChainData {
    ElemId prefix; // g-value of the terminal prefix of the image
    Letter succ;   // first non-terminal letter of the image
};

} // namespace

OmegaValue h_sigma_omega(const SubstClass& xi, const Morphism& h, Letter a) {
    const OmegaSemigroup& s = xi.semigroup();
    const std::uint32_t d = xi.d();
    std::vector<bool> fin = terminal_letters_of_class(xi);

    // g = h o sigma^d
    Morphism g = h;
    for (std::uint32_t i = 0; i < d; ++i)
        g = xi.compose_morphism(g);

    if (fin[a])
        return OmegaValue::finite(g.img[a]);

    auto chain_at = [&](Letter b) {
        const auto& in = xi.introduces(b);
        SegList r = xi.row(b, g);
        ChainData c{kOne, 0};
        for (std::size_t i = 0; i < in.size(); ++i) {
            if (!fin[in[i].first]) {
                c.succ = in[i].first;
                return c;
            }
            c.prefix = s.mul(s.mul(c.prefix, g.img[in[i].first]), r[i].second);
        }
        throw DomainError("h_sigma_omega: non-terminal letter with all-terminal image");
    };

    std::vector<Letter> path = {a};
    std::vector<ChainData> data;
    std::map<Letter, std::size_t> pos = {{a, 0}};
    std::size_t cycle_start;
    while (true) {
        ChainData c = chain_at(path.back());
        data.push_back(c);
        auto it = pos.find(c.succ);
        if (it != pos.end()) {
            cycle_start = it->second;
            break;
        }
        pos.emplace(c.succ, path.size());
        path.push_back(c.succ);
    }

    ElemId cycle_prod = kOne;
    for (std::size_t t = cycle_start; t < path.size(); ++t)
        cycle_prod = s.mul(cycle_prod, data[t].prefix);

    OmegaValue cycle_value;
    if (cycle_prod == kOne) {
        if (path.size() - cycle_start > 1) {
            cycle_value = OmegaValue::bottom(); // pure head cycle
        } else {
            // right-expansion at the head fixpoint: sigma(dd) = dd . u
            Letter dd = path[cycle_start];
            std::map<std::vector<ElemId>, std::size_t> seen;
            std::vector<ElemId> factors;
            Morphism hn = h;
            std::size_t preperiod, period;
            while (true) {
                auto it = seen.find(hn.img);
                if (it != seen.end()) {
                    preperiod = it->second;
                    period = factors.size() - preperiod;
                    break;
                }
                seen.emplace(hn.img, factors.size());
                factors.push_back(xi.tail(dd, hn));
                hn = xi.compose_morphism(hn);
            }
            ElemId pre = h.img[dd];
            for (std::size_t i = 0; i < preperiod; ++i)
                pre = s.mul(pre, factors[i]);
            ElemId per = kOne;
            for (std::size_t i = preperiod; i < preperiod + period; ++i)
                per = s.mul(per, factors[i]);
            cycle_value = OmegaValue::infinite(s.mixed(pre, s.omega_power(per)));
        }
    } else {
        // left-expansion: the looped prefix word repeats forever, rotated to
        // start at the cycle entry
        cycle_value = OmegaValue::infinite(s.omega_power(cycle_prod));
    }

    OmegaValue val = cycle_value;
    for (std::size_t t = cycle_start; t-- > 0;)
        val = ov_concat(s, OmegaValue::finite(data[t].prefix), val);
    return val;
}

OmegaValue h_pi_sigma_omega(const SubstClass& xi, const SubstClass& zeta, const Morphism& h,
                            Letter a) {
    return h_sigma_omega(xi, zeta.compose_morphism(h), a);
}

MorphicDfa morphic_language_dfa(const SubstClass& xi, const SubstClass& zeta,
                                const OmegaSemigroup& s) {
    const std::uint32_t d = xi.d();
    Morphism hL = canonical_morphism(s);
    MorphicDfa out;
    for (Letter a = 0; a < d; ++a)
        out.letter_value.push_back(h_pi_sigma_omega(xi, zeta, hL, a));

    // states are accumulated values; bottom is an explicit sink
    std::vector<OmegaValue> states = {OmegaValue::finite(kOne)};
    auto intern = [&](const OmegaValue& v) {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i] == v)
                return static_cast<std::uint32_t>(i);
        states.push_back(v);
        return static_cast<std::uint32_t>(states.size() - 1);
    };
    Dfa& dfa = out.dfa;
    dfa.n_letters = d;
    dfa.initial = 0;
    for (std::uint32_t q = 0; q < states.size(); ++q) {
        std::vector<std::uint32_t> row(d);
        OmegaValue cur = states[q];
        for (Letter a = 0; a < d; ++a)
            row[a] = intern(ov_concat(s, cur, out.letter_value[a]));
        dfa.delta.push_back(std::move(row));
    }
    dfa.n_states = static_cast<std::uint32_t>(states.size());
    dfa.accepting.assign(dfa.n_states, false);
    for (std::uint32_t q = 0; q < dfa.n_states; ++q)
        dfa.accepting[q] =
            states[q].kind == OmegaValue::Kind::Infinite && s.in_H[states[q].inf];
    return out;
}

std::vector<OmegaId> fixed_point_images(const SubstClass& xi, const Morphism& h) {
    const OmegaSemigroup& s = xi.semigroup();
    const std::uint32_t d = xi.d();
    std::vector<ElemId> fin_gens;
    std::vector<OmegaId> inf_gens;
    for (Letter a = 0; a < d; ++a) {
        if (xi.head(a) != a)
            continue;
        OmegaValue v = h_sigma_omega(xi, h, a);
        if (v.kind == OmegaValue::Kind::Finite)
            fin_gens.push_back(v.fin);
        else if (v.kind == OmegaValue::Kind::Infinite)
            inf_gens.push_back(v.inf);
    }
    // finite-sort closure under product
    std::vector<ElemId> closure = fin_gens;
    std::sort(closure.begin(), closure.end());
    closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
    for (std::size_t i = 0; i < closure.size(); ++i)
        for (std::size_t j = 0; j < closure.size(); ++j) {
            ElemId m = s.mul(closure[i], closure[j]);
            if (std::find(closure.begin(), closure.end(), m) == closure.end())
                closure.push_back(m);
        }
    // omega-sort: infinite generators, omega powers of finite products, and
    // their mixed products by finite prefixes
    std::vector<OmegaId> omega = inf_gens;
    for (ElemId e : closure)
        omega.push_back(s.omega_power(e));
    std::size_t base = omega.size();
    for (std::size_t i = 0; i < base; ++i)
        for (ElemId m : closure)
            omega.push_back(s.mixed(m, omega[i]));
    std::sort(omega.begin(), omega.end());
    omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
    return omega;
}

} // namespace sadic
