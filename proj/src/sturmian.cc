#include "sadic/sturmian.hh"

#include <algorithm>

#include "sadic/error.hh"

namespace sadic {

std::uint32_t ContinuedFraction::digit(std::size_t n) const {
    if (n == 0)
        throw DomainError("continued fraction digits are 1-based");
    if (n <= digits.size())
        return digits[n - 1];
    if (periodic_tail.empty())
        throw PrecisionError("continued fraction digits exhausted at index " + std::to_string(n));
    return periodic_tail[(n - digits.size() - 1) % periodic_tail.size()];
}

std::size_t ContinuedFraction::available() const {
    return periodic_tail.empty() ? digits.size() : SIZE_MAX;
}

ContinuedFraction ContinuedFraction::fibonacci_slope() {
    return ContinuedFraction{{2}, {1}};
}

std::vector<std::pair<BigInt, BigInt>> convergents(const ContinuedFraction& cf, std::size_t n) {
    std::vector<std::pair<BigInt, BigInt>> out;
    out.emplace_back(BigInt(0), BigInt(1)); // p_0/q_0
    if (n == 0)
        return out;
    out.emplace_back(BigInt(1), BigInt(static_cast<std::int64_t>(cf.digit(1))));
    for (std::size_t k = 2; k <= n; ++k) {
        BigInt a(static_cast<std::int64_t>(cf.digit(k)));
        out.emplace_back(a * out[k - 1].first + out[k - 2].first,
                         a * out[k - 1].second + out[k - 2].second);
    }
    return out;
}

EtaArith::EtaArith(ContinuedFraction cf) : cf_(std::move(cf)) {
    conv_ = convergents(cf_, std::min<std::size_t>(cf_.available(), 2));
}

void EtaArith::ensure(std::size_t n) {
    while (conv_.size() <= n) {
        std::size_t k = conv_.size();
        BigInt a(static_cast<std::int64_t>(cf_.digit(k))); // throws when exhausted
        if (k == 1)
            conv_.emplace_back(BigInt(1), a);
        else
            conv_.emplace_back(a * conv_[k - 1].first + conv_[k - 2].first,
                               a * conv_[k - 1].second + conv_[k - 2].second);
    }
}

EtaLinear EtaArith::theta(std::int64_t n) {
    if (n < -1)
        throw DomainError("theta: index below -1");
    if (n == -1)
        return {BigInt(-1), BigInt(0)};
    ensure(static_cast<std::size_t>(n));
    return {-conv_[static_cast<std::size_t>(n)].first, conv_[static_cast<std::size_t>(n)].second};
}

int EtaArith::sign(const EtaLinear& x) {
    if (x.b.is_zero())
        return x.a.sign();
    // bracket eta strictly between consecutive convergents and evaluate the
    // linear form at both ends
    for (std::size_t k = 0;; ++k) {
        ensure(k + 1);
        const auto& [pk, qk] = conv_[k];
        const auto& [pk1, qk1] = conv_[k + 1];
        int s1 = (x.a * qk + x.b * pk).sign();
        int s2 = (x.a * qk1 + x.b * pk1).sign();
        if (s1 != 0 && s1 == s2)
            return s1;
        if (k + 2 > cf_.available())
            throw PrecisionError("sign undecided before the digit supply ran out");
    }
}

BigInt EtaArith::floor_val(const EtaLinear& x, const BigInt& den) {
    if (den.sign() <= 0)
        throw DomainError("floor_val: denominator must be positive");
    if (x.b.is_zero())
        return BigInt::floordiv(x.a, den);
    for (std::size_t k = 0;; ++k) {
        ensure(k + 1);
        const auto& [pk, qk] = conv_[k];
        const auto& [pk1, qk1] = conv_[k + 1];
        // floor of (a + b p/q)/den = floor((a q + b p) / (den q))
        BigInt f1 = BigInt::floordiv(x.a * qk + x.b * pk, den * qk);
        BigInt f2 = BigInt::floordiv(x.a * qk1 + x.b * pk1, den * qk1);
        if (f1 == f2)
            return f1;
        if (k + 2 > cf_.available())
            throw PrecisionError("floor undecided before the digit supply ran out");
    }
}

namespace {

EtaLinear scale(const EtaLinear& x, const BigInt& m) {
    return {x.a * m, x.b * m};
}

EtaLinear sub(const EtaLinear& x, const EtaLinear& y) {
    return {x.a - y.a, x.b - y.b};
}

} // namespace

std::vector<std::uint32_t> ostrowski_encode(EtaArith& eta, const BigInt& chi_num,
                                            const BigInt& chi_den, std::size_t n_digits) {
    if (chi_den.sign() <= 0)
        throw DomainError("ostrowski_encode: denominator must be positive");
    // work over the fixed denominator chi_den: chi, the thetas, and the
    // feasibility bounds all become integer pairs (a, b)
    auto th = [&](std::int64_t n) { return scale(eta.theta(n), chi_den); };

    // remaining-tail bounds at step n in a given restriction state
    auto upper = [&](std::size_t n, bool restricted) {
        BigInt an(static_cast<std::int64_t>(eta.cf().digit(n)));
        std::int64_t sn = static_cast<std::int64_t>(n);
        if (n % 2 == 1) // theta_{n-1} > 0
            return restricted ? sub(scale(th(sn - 1), an - BigInt(1)), th(sn))
                              : scale(th(sn - 2), BigInt(-1));
        return scale(th(sn - 1), BigInt(-1));
    };
    auto lower = [&](std::size_t n, bool restricted) {
        BigInt an(static_cast<std::int64_t>(eta.cf().digit(n)));
        std::int64_t sn = static_cast<std::int64_t>(n);
        if (n % 2 == 0) // theta_{n-1} < 0
            return restricted ? sub(scale(th(sn - 1), an - BigInt(1)), th(sn))
                              : scale(th(sn - 2), BigInt(-1));
        return scale(th(sn - 1), BigInt(-1));
    };

    EtaLinear r{chi_num, BigInt(0)}; // chi over chi_den
    {
        // chi must lie in [-eta, 1-eta]
        if (eta.sign(sub(r, lower(1, true))) < 0 || eta.sign(sub(upper(1, true), r)) < 0)
            throw DomainError("ostrowski_encode: chi outside [-eta, 1-eta]");
    }
    std::vector<std::uint32_t> out;
    bool restricted = true; // rule (i): b_1 < a_1
    for (std::size_t n = 1; n <= n_digits; ++n) {
        std::uint32_t an = eta.cf().digit(n);
        std::uint32_t cap = restricted ? an - 1 : an;
        if (n == 1)
            cap = an - 1;
        EtaLinear thn = th(static_cast<std::int64_t>(n) - 1);
        bool placed = false;
        for (std::uint32_t b = 0; b <= cap && !placed; ++b) {
            EtaLinear rest = sub(r, scale(thn, BigInt(b)));
            bool next_restricted = b > 0;
            if (eta.sign(sub(rest, lower(n + 1, next_restricted))) >= 0 &&
                eta.sign(sub(upper(n + 1, next_restricted), rest)) >= 0) {
                out.push_back(b);
                r = rest;
                restricted = next_restricted;
                placed = true;
            }
        }
        if (!placed)
            throw DomainError("ostrowski_encode: no feasible digit at position " +
                              std::to_string(n));
    }
    return out;
}

EtaLinear ostrowski_decode(EtaArith& eta, const std::vector<std::uint32_t>& digits) {
    if (!ostrowski_digits_valid(eta.cf(), digits))
        throw DomainError("ostrowski_decode: digit rules violated");
    EtaLinear sum{BigInt(0), BigInt(0)};
    for (std::size_t n = 1; n <= digits.size(); ++n) {
        EtaLinear t = eta.theta(static_cast<std::int64_t>(n) - 1);
        sum.a = sum.a + t.a * BigInt(static_cast<std::int64_t>(digits[n - 1]));
        sum.b = sum.b + t.b * BigInt(static_cast<std::int64_t>(digits[n - 1]));
    }
    return sum;
}

bool ostrowski_digits_valid(const ContinuedFraction& cf,
                            const std::vector<std::uint32_t>& digits) {
    for (std::size_t n = 1; n <= digits.size(); ++n) {
        std::uint32_t b = digits[n - 1], a = cf.digit(n);
        if (n == 1 && b >= a)
            return false;
        if (n >= 2 && b > a)
            return false;
        if (n >= 2 && digits[n - 1] == a && digits[n - 2] != 0)
            return false; // rule (iii)
    }
    return true;
}

bool eta_within(EtaArith& eta, const EtaLinear& x, const BigInt& chi_num, const BigInt& chi_den,
                const BigInt& tol_num, const BigInt& tol_den) {
    // |x - chi| <= tol  <=>  both (x - chi) - tol <= 0 and (x - chi) + tol >= 0,
    // all scaled by chi_den * tol_den > 0
    EtaLinear diff{x.a * chi_den - chi_num, x.b * chi_den};
    EtaLinear hi{diff.a * tol_den - tol_num * chi_den, diff.b * tol_den};
    EtaLinear lo{diff.a * tol_den + tol_num * chi_den, diff.b * tol_den};
    return eta.sign(hi) <= 0 && eta.sign(lo) >= 0;
}

Letter sturmian_letter(EtaArith& eta, const BigInt& chi_num, const BigInt& chi_den,
                       std::uint64_t n, bool ceiling) {
    if (chi_den.sign() <= 0)
        throw DomainError("sturmian_letter: denominator must be positive");
    auto point = [&](std::uint64_t k) {
        return EtaLinear{chi_num, chi_den * BigInt(static_cast<std::int64_t>(k))};
    };
    auto fl = [&](const EtaLinear& x) {
        if (!ceiling)
            return eta.floor_val(x, chi_den);
        EtaLinear neg{-x.a, -x.b};
        return -eta.floor_val(neg, chi_den);
    };
    BigInt v = fl(point(n + 2)) - fl(point(n + 1));
    std::int64_t letter = v.to_i64();
    if (letter != 0 && letter != 1)
        throw DomainError("sturmian_letter: floor difference outside {0,1}");
    return static_cast<Letter>(letter);
}

Word characteristic_word(EtaArith& eta, std::size_t len) {
    Word out;
    for (std::size_t n = 0; n < len; ++n)
        out.push_back(sturmian_letter(eta, BigInt(0), BigInt(1), n));
    return out;
}

SubstitutionSet ar_generators(std::uint32_t d) {
    SubstitutionSet set;
    for (std::uint32_t a = 0; a < d; ++a)
        set.alphabet.names.push_back(std::to_string(a));
    for (std::uint32_t i = 0; i < d; ++i) {
        set.names.push_back("lambda" + std::to_string(i));
        set.subs.push_back(Substitution::lambda(d, i));
    }
    for (std::uint32_t i = 0; i < d; ++i) {
        set.names.push_back("rho" + std::to_string(i));
        set.subs.push_back(Substitution::rho(d, i));
    }
    return set;
}

DirectiveSequence SturmianDirective::to_sequence() const {
    DirectiveSequence s;
    std::size_t usable = letters.size();
    s.pre.assign(subs.begin(), subs.begin() + usable);
    s.letters_pre = letters;
    s.letters_period = std::vector<Letter>{};
    return s;
}

SturmianDirective directive_from_expansions(const ContinuedFraction& cf,
                                            const std::vector<std::uint32_t>& b_digits) {
    // reindex: eta = [0; a_1 + 1, a_2, ...], so a_1 = digit(1) - 1
    auto a_of = [&](std::size_t n) {
        std::uint32_t c = cf.digit(n);
        if (n == 1) {
            if (c == 0)
                throw DomainError("directive_from_expansions: digit a_1 must be positive");
            return c - 1;
        }
        return c;
    };
    SturmianDirective out;
    Substitution l0 = Substitution::lambda(2, 0), l1 = Substitution::lambda(2, 1);
    Substitution r0 = Substitution::rho(2, 0), r1 = Substitution::rho(2, 1);
    auto push = [&](const Substitution& s, const std::string& name, std::uint32_t count) {
        for (std::uint32_t i = 0; i < count; ++i) {
            out.subs.push_back(s);
            out.names.push_back(name);
        }
    };
    for (std::size_t n = 1; n <= b_digits.size(); ++n) {
        std::uint32_t a = a_of(n), b = b_digits[n - 1];
        if (b > a)
            throw DomainError("directive_from_expansions: digit rule violated at position " +
                              std::to_string(n));
        if (n % 2 == 1) {
            push(l0, "lambda0", b);
            push(r0, "rho0", a - b);
        } else {
            push(l1, "lambda1", b);
            push(r1, "rho1", a - b);
        }
    }
    // forced congenial letters: a_n is the index of the first left-proper
    // term strictly after position n
    std::size_t last_lambda = SIZE_MAX;
    std::vector<Letter> rev;
    std::optional<Letter> pending;
    for (std::size_t n = out.subs.size(); n-- > 0;) {
        if (pending)
            rev.push_back(*pending);
        const Substitution& s = out.subs[n];
        if (s.left_proper()) {
            pending = s.head(0);
            if (last_lambda == SIZE_MAX)
                last_lambda = n;
        }
    }
    (void)last_lambda;
    std::reverse(rev.begin(), rev.end());
    // rev holds a_0 .. a_{last_lambda - 1}
    out.letters = std::move(rev);
    return out;
}

BuchiAutomaton weak_primitivity_automaton(std::uint32_t d) {
    if (d < 2)
        throw DomainError("weak_primitivity_automaton: need d >= 2");
    // letters: lambda_0..lambda_{d-1} then rho_0..rho_{d-1}
    // conditions 0..d-1: lambda_i or rho_i occurs; condition d: any lambda
    BuchiAutomaton a;
    a.n_letters = 2 * d;
    for (std::uint32_t i = 0; i < d; ++i)
        a.letter_names.push_back("lambda" + std::to_string(i));
    for (std::uint32_t i = 0; i < d; ++i)
        a.letter_names.push_back("rho" + std::to_string(i));
    a.n_states = 2 * (d + 1); // (awaiting j, just-wrapped flag)
    a.initial = {0};
    a.delta.assign(a.n_states, std::vector<std::vector<std::uint32_t>>(a.n_letters));
    a.accepting.assign(a.n_states, false);
    auto state = [&](std::uint32_t j, bool flag) { return j * 2 + (flag ? 1u : 0u); };
    for (std::uint32_t j = 0; j <= d; ++j)
        for (bool flag : {false, true}) {
            a.accepting[state(j, flag)] = flag;
            for (std::uint32_t c = 0; c < 2 * d; ++c) {
                bool satisfied = j < d ? (c == j || c == d + j) : (c < d);
                std::uint32_t nj = satisfied ? j + 1 : j;
                bool wrap = nj == d + 1;
                a.add_transition(state(j, flag), c, state(wrap ? 0 : nj, wrap));
            }
        }
    a.finalize();
    return a;
}

BuchiAutomaton build_ar_acceptance_automaton(const BuchiAutomaton& a, std::uint32_t d,
                                             const Config& cfg) {
    if (a.n_letters != d)
        throw DomainError("ar automaton: language alphabet must match d");
    OmegaSemigroup sg = build_semigroup(a, cfg);
    SubstitutionSet set = ar_generators(d);
    std::vector<SubstClass> distinct;
    for (const Substitution& sub : set.subs) {
        SubstClass c = class_of(sub, sg, cfg);
        bool seen = false;
        for (const SubstClass& x : distinct)
            seen |= x.equals(c);
        if (!seen)
            distinct.push_back(c);
    }
    TraceAutomaton directed = build_directed_automaton(sg, distinct, cfg);
    BuchiAutomaton relabeled = relabel_for_finite_S(directed, set, sg, cfg);
    BuchiAutomaton wp = weak_primitivity_automaton(d);
    BuchiAutomaton out = buchi_intersect(wp, relabeled, cfg);
    out.letter_names = wp.letter_names;
    return out;
}

namespace {

struct PqBlock {
    Substitution block;
    Letter carried;
    std::size_t start, end; // inclusive positions of the block
};

std::vector<PqBlock> segment_blocks(const std::vector<Substitution>& subs,
                                    const std::vector<Letter>& letters,
                                    std::size_t max_blocks) {
    if (subs.size() < letters.size())
        throw DomainError("partial_quotients: more letters than substitutions");
    std::vector<PqBlock> out;
    std::size_t pos = 0;
    while (out.size() < max_blocks) {
        if (pos >= letters.size())
            break; // prefix exhausted
        Substitution block = subs[pos];
        std::size_t end = pos;
        while (!block.positive()) {
            ++end;
            if (end >= subs.size())
                throw GuardError("partial_quotients: no positive block closes within the "
                                 "prefix (weak primitivity not visible at this horizon)");
            block = compose(block, subs[end]);
        }
        if (end >= letters.size())
            break; // carried letter not determined by the prefix
        out.push_back({block, letters[end], pos, end});
        pos = end + 1;
    }
    return out;
}

} // namespace

std::vector<std::pair<Substitution, Letter>> partial_quotients(
    const std::vector<Substitution>& subs, const std::vector<Letter>& letters,
    std::size_t max_blocks) {
    std::vector<std::pair<Substitution, Letter>> out;
    for (const PqBlock& b : segment_blocks(subs, letters, max_blocks))
        out.emplace_back(b.block, b.carried);
    return out;
}

namespace {

struct LrSampler {
    std::mt19937_64 rng;
    SubstitutionSet set = ar_generators(2);

    explicit LrSampler(std::uint64_t seed) : rng(seed) {}

    // random weakly primitive period over {lambda0, lambda1, rho0, rho1}
    // containing at least one lambda
    std::vector<std::size_t> random_period() {
        std::uniform_int_distribution<std::size_t> len(2, 5), pick(0, 3);
        while (true) {
            std::vector<std::size_t> period;
            bool has0 = false, has1 = false, has_lambda = false;
            for (std::size_t i = 0, n = len(rng); i < n; ++i) {
                std::size_t c = pick(rng);
                period.push_back(c);
                has_lambda |= c < 2;
                has0 |= (c == 0 || c == 2);
                has1 |= (c == 1 || c == 3);
            }
            if (has0 && has1 && has_lambda)
                return period;
        }
    }

    DirectiveSequence make(const std::vector<Substitution>& pre,
                           const std::vector<std::size_t>& period) {
        DirectiveSequence s;
        s.pre = pre;
        for (std::size_t c : period)
            s.period.push_back(set.subs[c]);
        return s;
    }

    std::string render(const DirectiveSequence& s) {
        auto name_of = [&](const Substitution& sub) {
            for (std::size_t i = 0; i < set.subs.size(); ++i)
                if (set.subs[i] == sub)
                    return set.names[i];
            return std::string("?");
        };
        std::string out;
        for (const Substitution& sub : s.pre)
            out += name_of(sub) + " ";
        out += ";";
        for (const Substitution& sub : s.period)
            out += " " + name_of(sub);
        return out;
    }
};

} // namespace

PqAgreementReport agreement_experiment(const BuchiAutomaton& a, std::uint32_t max_N,
                                       std::size_t trials, std::uint64_t seed,
                                       const Config& cfg) {
    OmegaSemigroup sg = build_semigroup(a, cfg);
    PqAgreementReport report;
    for (std::uint32_t N = 0; N <= max_N; ++N) {
        LrSampler sampler(seed + N * 1000003);
        PqAgreementRow row;
        row.N = N;
        row.trials = trials;
        for (std::size_t t = 0; t < trials; ++t) {
            DirectiveSequence s1 = sampler.make({}, sampler.random_period());
            DirectiveSequence s2;
            if (N == 0) {
                s2 = sampler.make({}, sampler.random_period());
            } else {
                // unroll s1 far enough to cover N blocks plus the lambda that
                // pins the last carried letter, then splice a fresh tail
                DirectiveSequence aug = congenial_augmentations(s1).front();
                std::vector<Substitution> flat;
                std::vector<Letter> flat_letters;
                std::size_t horizon = 8 * (N + 2) * aug.period.size() + aug.pre.size();
                for (std::size_t n = 0; n < horizon; ++n) {
                    flat.push_back(aug.at(n));
                    flat_letters.push_back(aug.letter_at(n));
                }
                auto pq = segment_blocks(flat, flat_letters, N);
                if (pq.size() < N) {
                    --t;
                    continue;
                }
                // cut after the first left-proper term past the N-th block
                std::size_t cut = pq.back().end + 1;
                while (cut < flat.size() && !flat[cut].left_proper())
                    ++cut;
                if (cut >= flat.size()) {
                    --t;
                    continue;
                }
                ++cut; // include the lambda
                s2.pre.assign(flat.begin(), flat.begin() + cut);
                for (std::size_t c : sampler.random_period())
                    s2.period.push_back(sampler.set.subs[c]);
            }
            bool v1 = decide_up(s1, sg, DecideMode::Directed, cfg);
            bool v2 = decide_up(s2, sg, DecideMode::Directed, cfg);
            if (v1 == v2) {
                ++row.agreements;
            } else if (row.example_disagreement.empty()) {
                row.example_disagreement =
                    sampler.render(s1) + "  vs  " + sampler.render(s2);
            }
        }
        report.rows.push_back(row);
        if (!report.minimal_full_agreement && row.agreements == row.trials)
            report.minimal_full_agreement = N;
    }
    return report;
}

} // namespace sadic
