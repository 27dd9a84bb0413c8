#include "sadic/semigroup.hh"

#include <algorithm>
#include <map>

#include "sadic/error.hh"

namespace sadic {

Profile profile_product(const Profile& a, const Profile& b) {
    Profile out;
    out.n = a.n;
    out.cells.assign(static_cast<std::size_t>(a.n) * a.n, kNone);
    for (std::uint32_t q = 0; q < a.n; ++q)
        for (std::uint32_t p = 0; p < a.n; ++p) {
            std::uint8_t x = a.at(q, p);
            if (x == kNone)
                continue;
            const std::uint8_t* brow = &b.cells[p * b.n];
            std::uint8_t* orow = &out.cells[q * out.n];
            for (std::uint32_t r = 0; r < a.n; ++r) {
                std::uint8_t y = brow[r];
                if (y == kNone)
                    continue;
                std::uint8_t v = (x == kPathAcc || y == kPathAcc) ? kPathAcc : kPath;
                if (v > orow[r])
                    orow[r] = v;
            }
        }
    return out;
}

ElemId OmegaSemigroup::eval(const Word& w) const {
    ElemId m = kOne;
    for (Letter a : w)
        m = mul(m, letter_elem.at(a));
    return m;
}

OmegaId OmegaSemigroup::omega_power(ElemId m) const {
    if (m == kOne)
        throw DomainError("omega_power: undefined on the adjoined identity");
    return omega_power_tbl[m - 1];
}

OmegaId OmegaSemigroup::up_value(const Word& u, const Word& v) const {
    if (v.empty())
        throw DomainError("up_value: empty period");
    ElemId pv = eval(v);
    return mixed(eval(u), omega_power(pv));
}

bool OmegaSemigroup::accepts_up(const Word& u, const Word& v) const {
    return in_H[up_value(u, v)];
}

std::pair<bool, std::uint32_t> OmegaSemigroup::up_product(const std::vector<ElemId>& pre,
                                                          const std::vector<ElemId>& per) const {
    ElemId p = kOne;
    for (ElemId m : pre)
        p = mul(p, m);
    ElemId q = kOne;
    for (ElemId m : per)
        q = mul(q, m);
    if (q == kOne) // period contributes nothing: the word's support is finite
        return {false, p};
    return {true, mixed(p, omega_power(q))};
}

namespace {

// q has an accepting run on w^omega iff some p reachable from q carries an
// accepting self-loop in some power of profile(w).
OmegaId compute_omega_power(const Profile& m, std::uint32_t n,
                            std::map<StateSet, OmegaId>& omega_index,
                            std::vector<StateSet>& omega_elems) {
    // distinct powers m^1, m^2, ...
    std::vector<Profile> powers;
    Profile cur = m;
    while (std::find(powers.begin(), powers.end(), cur) == powers.end()) {
        powers.push_back(cur);
        cur = profile_product(cur, m);
    }
    StateSet loop = 0;
    for (std::uint32_t p = 0; p < n; ++p)
        for (const Profile& pw : powers)
            if (pw.at(p, p) == kPathAcc) {
                loop |= StateSet{1} << p;
                break;
            }
    // reachability through any number of m-steps (including zero)
    StateSet vec = 0;
    for (std::uint32_t q = 0; q < n; ++q) {
        if (loop & (StateSet{1} << q)) {
            vec |= StateSet{1} << q;
            continue;
        }
        bool ok = false;
        for (const Profile& pw : powers) {
            for (std::uint32_t p = 0; p < n && !ok; ++p)
                if (pw.at(q, p) != kNone && (loop & (StateSet{1} << p)))
                    ok = true;
            if (ok)
                break;
        }
        if (ok)
            vec |= StateSet{1} << q;
    }
    auto it = omega_index.find(vec);
    if (it != omega_index.end())
        return it->second;
    OmegaId id = static_cast<OmegaId>(omega_elems.size());
    omega_index.emplace(vec, id);
    omega_elems.push_back(vec);
    return id;
}

StateSet mixed_vec(const Profile& m, StateSet v, std::uint32_t n) {
    StateSet out = 0;
    for (std::uint32_t q = 0; q < n; ++q) {
        const std::uint8_t* row = &m.cells[q * n];
        for (std::uint32_t p = 0; p < n; ++p)
            if (row[p] != kNone && (v & (StateSet{1} << p))) {
                out |= StateSet{1} << q;
                break;
            }
    }
    return out;
}

} // namespace

OmegaSemigroup build_semigroup(const BuchiAutomaton& a, const Config& cfg) {
    if (a.n_states == 0 || a.n_states > 64)
        throw DomainError("build_semigroup: base automaton must have 1..64 states");
    OmegaSemigroup s;
    s.base = a;
    s.base.finalize();
    const std::uint32_t n = a.n_states;

    std::map<Profile, ElemId> index;
    auto intern = [&](const Profile& p) {
        auto it = index.find(p);
        if (it != index.end())
            return it->second;
        if (s.profiles.size() >= cfg.semigroup_cap)
            throw GuardError("build_semigroup: closure cap exceeded");
        ElemId id = static_cast<ElemId>(s.profiles.size() + 1);
        index.emplace(p, id);
        s.profiles.push_back(p);
        return id;
    };

    for (std::uint32_t c = 0; c < a.n_letters; ++c) {
        Profile p;
        p.n = n;
        p.cells.assign(static_cast<std::size_t>(n) * n, kNone);
        for (std::uint32_t q = 0; q < n; ++q)
            for (std::uint32_t t : s.base.delta[q][c])
                p.at(q, t) = s.base.accepting[t] ? kPathAcc : kPath;
        s.letter_elem.push_back(intern(p));
    }

    // product closure: only pairs with at least one new factor per round
    std::size_t frontier = 0;
    while (frontier < s.profiles.size()) {
        std::size_t upto = s.profiles.size();
        for (std::size_t i = 0; i < upto; ++i)
            for (std::size_t j = (i >= frontier ? 0 : frontier); j < upto; ++j)
                (void)intern(profile_product(s.profiles[i], s.profiles[j]));
        frontier = upto;
    }

    s.nf = static_cast<std::uint32_t>(s.profiles.size());
    s.table.product.assign(s.nf + 1, std::vector<ElemId>(s.nf + 1));
    for (ElemId i = 0; i <= s.nf; ++i) {
        s.table.product[0][i] = i;
        s.table.product[i][0] = i;
    }
    for (ElemId i = 1; i <= s.nf; ++i)
        for (ElemId j = 1; j <= s.nf; ++j)
            s.table.product[i][j] = index.at(profile_product(s.profiles[i - 1], s.profiles[j - 1]));
    s.idempotent.assign(s.nf + 1, false);
    s.idempotent[0] = true;
    for (ElemId i = 1; i <= s.nf; ++i)
        s.idempotent[i] = s.table.product[i][i] == i;

    // omega sort: omega powers of every element, closed under mixed products
    std::map<StateSet, OmegaId> omega_index;
    s.omega_power_tbl.resize(s.nf);
    for (ElemId i = 1; i <= s.nf; ++i)
        s.omega_power_tbl[i - 1] = compute_omega_power(s.profiles[i - 1], n, omega_index,
                                                       s.omega_elems);
    for (std::size_t v = 0; v < s.omega_elems.size(); ++v)
        for (ElemId i = 1; i <= s.nf; ++i) {
            StateSet w = mixed_vec(s.profiles[i - 1], s.omega_elems[v], n);
            if (!omega_index.count(w)) {
                OmegaId id = static_cast<OmegaId>(s.omega_elems.size());
                omega_index.emplace(w, id);
                s.omega_elems.push_back(w);
            }
        }
    s.mixed_tbl.assign(s.nf + 1, std::vector<OmegaId>(s.omega_elems.size()));
    for (std::size_t v = 0; v < s.omega_elems.size(); ++v) {
        s.mixed_tbl[0][v] = static_cast<OmegaId>(v);
        for (ElemId i = 1; i <= s.nf; ++i)
            s.mixed_tbl[i][v] = omega_index.at(mixed_vec(s.profiles[i - 1], s.omega_elems[v], n));
    }
    StateSet init = 0;
    for (std::uint32_t q : s.base.initial)
        init |= StateSet{1} << q;
    s.in_H.resize(s.omega_elems.size());
    for (std::size_t v = 0; v < s.omega_elems.size(); ++v)
        s.in_H[v] = (s.omega_elems[v] & init) != 0;
    return s;
}

InfiniteProductSource::InfiniteProductSource(const OmegaSemigroup& s, ElemId x)
    : sg_(s), omega_sort_(false), fin_target_(x) {
    if (x > s.nf)
        throw DomainError("infinite-product automaton: element outside the semigroup");
}

InfiniteProductSource::InfiniteProductSource(const OmegaSemigroup& s, OmegaId x, bool)
    : sg_(s), omega_sort_(true), om_target_(x) {
    if (x >= s.n_omega())
        throw DomainError("infinite-product automaton: omega element outside the semigroup");
}

std::vector<std::uint32_t> InfiniteProductSource::initial_states() {
    if (!omega_sort_)
        return {kOne}; // reading mode with accumulated 1_M
    std::vector<std::uint32_t> init = {kOne}; // pre(1_M)
    for (ElemId e = 1; e <= sg_.nf; ++e)
        if (sg_.omega_power(e) == om_target_)
            init.push_back(blk_state(e, kOne, false));
    return init;
}

void InfiniteProductSource::successors(std::uint32_t state, std::uint32_t letter,
                                       std::vector<std::uint32_t>& out) {
    out.clear();
    const ElemId n = letter;
    if (!omega_sort_) {
        const std::uint32_t frozen = sg_.nf + 1;
        if (state == frozen) {
            if (n == kOne)
                out.push_back(frozen);
            return;
        }
        ElemId m = state;
        out.push_back(sg_.mul(m, n));
        if (n == kOne && m == fin_target_)
            out.push_back(frozen);
        return;
    }
    if (state <= sg_.nf) { // pre(p)
        ElemId p = state;
        ElemId pn = sg_.mul(p, n);
        out.push_back(pn);
        // close the prefix at product p*n and pick the block element
        for (ElemId e = 1; e <= sg_.nf; ++e)
            if (sg_.mixed(pn, sg_.omega_power(e)) == om_target_)
                out.push_back(blk_state(e, kOne, false));
        return;
    }
    std::uint32_t rel = state - (sg_.nf + 1);
    bool flag = rel & 1;
    (void)flag;
    ElemId c = (rel >> 1) % (sg_.nf + 1);
    ElemId e = (rel >> 1) / (sg_.nf + 1) + 1;
    ElemId cn = sg_.mul(c, n);
    out.push_back(blk_state(e, cn, false));
    if (cn == e)
        out.push_back(blk_state(e, kOne, true));
}

bool InfiniteProductSource::is_accepting(std::uint32_t state) {
    if (!omega_sort_)
        return state == sg_.nf + 1;
    if (state <= sg_.nf)
        return false;
    return (state - (sg_.nf + 1)) & 1;
}

BuchiAutomaton build_Ax_finite(const OmegaSemigroup& s, ElemId x, const Config& cfg) {
    InfiniteProductSource src(s, x);
    BuchiAutomaton b = materialize(src, cfg);
    b.letter_names.clear();
    b.letter_names.push_back("1");
    for (ElemId e = 1; e <= s.nf; ++e)
        b.letter_names.push_back("m" + std::to_string(e));
    return b;
}

BuchiAutomaton build_Ax_omega(const OmegaSemigroup& s, OmegaId x, const Config& cfg) {
    InfiniteProductSource src(s, x, true);
    BuchiAutomaton b = materialize(src, cfg);
    b.letter_names.clear();
    b.letter_names.push_back("1");
    for (ElemId e = 1; e <= s.nf; ++e)
        b.letter_names.push_back("m" + std::to_string(e));
    return b;
}

} // namespace sadic
