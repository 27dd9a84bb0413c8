#include "sadic/cli.hh"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "sadic/adic.hh"
#include "sadic/json_io.hh"
#include "sadic/morphic.hh"
#include "sadic/sturmian.hh"

namespace sadic {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open `" + path + "`");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write `" + path + "`");
    out << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(),
                                                  suffix) == 0;
}

Config load_config(const std::string& path, std::uint64_t seed_flag) {
    Config cfg;
    if (!path.empty()) {
        nlohmann::json j = nlohmann::json::parse(slurp(path), nullptr, false);
        if (j.is_discarded())
            throw ParseError("config: malformed JSON in `" + path + "`");
        if (j.contains("semigroup_cap"))
            cfg.semigroup_cap = j["semigroup_cap"].get<std::size_t>();
        if (j.contains("dfa_state_cap"))
            cfg.dfa_state_cap = j["dfa_state_cap"].get<std::size_t>();
        if (j.contains("buchi_state_cap"))
            cfg.buchi_state_cap = j["buchi_state_cap"].get<std::size_t>();
        if (j.contains("prefix_budget"))
            cfg.prefix_budget = j["prefix_budget"].get<std::size_t>();
        if (j.contains("morphism_space_cap"))
            cfg.morphism_space_cap = j["morphism_space_cap"].get<std::size_t>();
        if (j.contains("class_enum_cap"))
            cfg.class_enum_cap = j["class_enum_cap"].get<std::size_t>();
        if (j.contains("xi_reachable_only"))
            cfg.xi_reachable_only = j["xi_reachable_only"].get<bool>();
        if (j.contains("seed"))
            cfg.seed = j["seed"].get<std::uint64_t>();
    }
    auto env = [](const char* name, std::size_t& slot) {
        if (const char* v = std::getenv(name))
            slot = std::stoull(v);
    };
    env("SADIC_SEMIGROUP_CAP", cfg.semigroup_cap);
    env("SADIC_DFA_STATE_CAP", cfg.dfa_state_cap);
    env("SADIC_BUCHI_STATE_CAP", cfg.buchi_state_cap);
    env("SADIC_PREFIX_BUDGET", cfg.prefix_budget);
    env("SADIC_MORPHISM_SPACE_CAP", cfg.morphism_space_cap);
    env("SADIC_CLASS_ENUM_CAP", cfg.class_enum_cap);
    if (seed_flag)
        cfg.seed = seed_flag;
    return cfg;
}

BuchiAutomaton load_language(const std::string& path) {
    return to_buchi(parse_automaton_json(slurp(path)));
}

// letters by name against the automaton alphabet; unspaced single-character
// tokens may be concatenated
Word parse_word(const std::string& text, const std::vector<std::string>& names) {
    Word out;
    std::istringstream in(text);
    std::string tok;
    auto letter_of = [&](const std::string& t) -> std::optional<Letter> {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == t)
                return static_cast<Letter>(i);
        return std::nullopt;
    };
    while (in >> tok) {
        if (auto l = letter_of(tok)) {
            out.push_back(*l);
            continue;
        }
        for (char c : tok) {
            auto l = letter_of(std::string(1, c));
            if (!l)
                throw ParseError("unknown letter `" + std::string(1, c) + "`");
            out.push_back(*l);
        }
    }
    return out;
}

// remap a parsed substitution onto the automaton's letter order
Substitution align_substitution(const Substitution& sub, const NamedAlphabet& sub_alpha,
                                const std::vector<std::string>& aut_names) {
    std::vector<Word> images(aut_names.size());
    std::vector<Letter> to_aut(sub_alpha.size());
    for (std::size_t i = 0; i < sub_alpha.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < aut_names.size(); ++j)
            if (aut_names[j] == sub_alpha.names[i]) {
                to_aut[i] = static_cast<Letter>(j);
                found = true;
            }
        if (!found)
            throw ParseError("substitution letter `" + sub_alpha.names[i] +
                             "` is not in the automaton alphabet");
    }
    std::vector<bool> covered(aut_names.size(), false);
    for (std::size_t i = 0; i < sub_alpha.size(); ++i) {
        Word img;
        for (Letter a : sub.image(static_cast<Letter>(i)))
            img.push_back(to_aut[a]);
        images[to_aut[i]] = std::move(img);
        covered[to_aut[i]] = true;
    }
    for (std::size_t j = 0; j < aut_names.size(); ++j)
        if (!covered[j])
            throw ParseError("automaton letter `" + aut_names[j] + "` has no substitution rule");
    return Substitution(static_cast<std::uint32_t>(aut_names.size()), std::move(images));
}

Substitution load_substitution(const std::string& path, const std::vector<std::string>& names) {
    auto [sub, alpha] = parse_substitution(slurp(path));
    return align_substitution(sub, alpha, names);
}

// named substitutions: file sections plus the built-in generators
struct Bindings {
    std::vector<std::string> names;
    std::vector<Substitution> subs;

    const Substitution& resolve(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name)
                return subs[i];
        throw ParseError("unbound substitution name `" + name + "`");
    }
};

Bindings make_bindings(const std::string& set_path, const std::vector<std::string>& aut_names) {
    Bindings b;
    std::uint32_t d = static_cast<std::uint32_t>(aut_names.size());
    if (!set_path.empty()) {
        SubstitutionSet set = parse_substitution_set(slurp(set_path));
        for (std::size_t i = 0; i < set.names.size(); ++i) {
            b.names.push_back(set.names[i]);
            b.subs.push_back(align_substitution(set.subs[i], set.alphabet, aut_names));
        }
    }
    auto add_builtin = [&](const std::string& name, Substitution sub) {
        for (const std::string& n : b.names)
            if (n == name)
                return; // file bindings shadow the builtins
        b.names.push_back(name);
        b.subs.push_back(std::move(sub));
    };
    if (d == 2)
        add_builtin("sigma_fib", Substitution::fibonacci());
    add_builtin("identity", Substitution::identity(d));
    for (std::uint32_t i = 0; i < d; ++i) {
        add_builtin("lambda" + std::to_string(i), Substitution::lambda(d, i));
        add_builtin("rho" + std::to_string(i), Substitution::rho(d, i));
    }
    return b;
}

// "pre; period" with whitespace-separated entries
std::pair<std::vector<std::string>, std::vector<std::string>> parse_up_text(
    const std::string& text) {
    std::size_t semi = text.find(';');
    if (semi == std::string::npos)
        throw ParseError("expected `pre; period` (the `;` may lead)");
    auto tokens = [](const std::string& part) {
        std::vector<std::string> out;
        std::istringstream in(part);
        std::string t;
        while (in >> t)
            out.push_back(t);
        return out;
    };
    return {tokens(text.substr(0, semi)), tokens(text.substr(semi + 1))};
}

std::vector<std::uint32_t> parse_digit_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::string cur;
    auto flush = [&]() {
        if (!cur.empty()) {
            out.push_back(static_cast<std::uint32_t>(std::stoul(cur)));
            cur.clear();
        }
    };
    for (char c : text) {
        if (c == ',' || c == ' ')
            flush();
        else if (c >= '0' && c <= '9')
            cur += c;
        else
            throw ParseError("bad digit list");
    }
    flush();
    return out;
}

void emit_buchi(const BuchiAutomaton& aut, const std::string& path, std::ostream& out) {
    if (path.empty())
        return;
    if (ends_with(path, ".dot"))
        spill(path, buchi_to_dot(aut));
    else
        spill(path, buchi_to_json(aut));
    out << "emitted " << path << "\n";
}

int cmd_classes(const std::string& aut_path, const Config& cfg, std::ostream& out) {
    BuchiAutomaton a = load_language(aut_path);
    OmegaSemigroup sg = build_semigroup(a, cfg);
    auto classes = enumerate_classes(sg, a.n_letters, cfg);
    out << "semigroup: |M_f| = " << sg.nf << ", omega sort = " << sg.n_omega() << "\n";
    out << "classes: " << classes.size() << "\n";
    NamedAlphabet alpha;
    alpha.names = a.letter_names;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        out << "[class " << i << "] witness:\n";
        std::string dsl = substitution_to_dsl(classes[i].second, &alpha);
        std::istringstream lines(dsl);
        std::string line;
        while (std::getline(lines, line))
            out << "  " << line << "\n";
    }
    if (classes.size() <= 40) {
        out << "composition table (row * column):\n";
        for (std::size_t i = 0; i < classes.size(); ++i) {
            out << " ";
            for (std::size_t j = 0; j < classes.size(); ++j) {
                SubstClass prod = compose_classes(classes[i].first, classes[j].first);
                std::size_t k = 0;
                while (k < classes.size() && !prod.equals(classes[k].first))
                    ++k;
                out << " " << k;
            }
            out << "\n";
        }
    }
    return 0;
}

int cmd_member_morphic(const std::string& aut_path, const std::string& subst_path,
                       const std::string& outer_path, const std::string& word_text,
                       const Config& cfg, std::ostream& out) {
    BuchiAutomaton a = load_language(aut_path);
    OmegaSemigroup sg = build_semigroup(a, cfg);
    Substitution sigma = load_substitution(subst_path, a.letter_names);
    Substitution pi = outer_path.empty() ? Substitution::identity(a.n_letters)
                                         : load_substitution(outer_path, a.letter_names);
    Word u = parse_word(word_text, a.letter_names);
    if (u.empty())
        throw ParseError("member-morphic: the word must be non-empty");
    MorphicDfa m = morphic_language_dfa(class_of(sigma, sg, cfg), class_of(pi, sg, cfg), sg);
    bool acc = m.dfa.accepts(u);
    out << (acc ? "ACCEPTED" : "REJECTED") << "\n";
    return acc ? 0 : 1;
}

int cmd_morphic_lang(const std::string& aut_path, const std::string& subst_path,
                     const std::string& outer_path, const std::string& emit, const Config& cfg,
                     std::ostream& out) {
    BuchiAutomaton a = load_language(aut_path);
    OmegaSemigroup sg = build_semigroup(a, cfg);
    Substitution sigma = load_substitution(subst_path, a.letter_names);
    Substitution pi = outer_path.empty() ? Substitution::identity(a.n_letters)
                                         : load_substitution(outer_path, a.letter_names);
    MorphicDfa m = morphic_language_dfa(class_of(sigma, sg, cfg), class_of(pi, sg, cfg), sg);
    std::size_t n_acc = 0;
    for (bool f : m.dfa.accepting)
        n_acc += f;
    out << "dfa: " << m.dfa.n_states << " states, " << n_acc << " accepting\n";
    if (!emit.empty()) {
        if (ends_with(emit, ".dot"))
            spill(emit, dfa_to_dot(m.dfa, &a.letter_names));
        else
            spill(emit, dfa_to_json(m.dfa, a.letter_names));
        out << "emitted " << emit << "\n";
    }
    return 0;
}

int cmd_fixed_points(const std::string& aut_path, const std::string& subst_path,
                     const Config& cfg, std::ostream& out) {
    BuchiAutomaton a = load_language(aut_path);
    OmegaSemigroup sg = build_semigroup(a, cfg);
    Substitution sigma = load_substitution(subst_path, a.letter_names);
    auto images = fixed_point_images(class_of(sigma, sg, cfg), canonical_morphism(sg));
    out << "fixed-point images: " << images.size() << "\n";
    bool any_accepted = false;
    for (OmegaId v : images) {
        bool in = sg.in_H[v];
        any_accepted |= in;
        out << "  omega-value " << v << ": " << (in ? "accepted" : "rejected") << "\n";
    }
    if (!images.empty())
        out << (any_accepted ? "some fixed point is accepted"
                             : "no fixed point is accepted")
            << "\n";
    return images.empty() || !any_accepted ? 1 : 0;
}

int cmd_trace_automaton(const std::string& aut_path, const std::string& set_path,
                        const std::string& mode, const std::string& emit, const Config& cfg,
                        std::ostream& out) {
    BuchiAutomaton a = load_language(aut_path);
    OmegaSemigroup sg = build_semigroup(a, cfg);
    SubstitutionSet set = parse_substitution_set(slurp(set_path));
    SubstitutionSet aligned;
    aligned.alphabet.names = a.letter_names;
    aligned.names = set.names;
    for (const Substitution& sub : set.subs)
        aligned.subs.push_back(align_substitution(sub, set.alphabet, a.letter_names));

    std::vector<SubstClass> distinct;
    for (const Substitution& sub : aligned.subs) {
        SubstClass c = class_of(sub, sg, cfg);
        bool seen = false;
        for (const SubstClass& x : distinct)
            seen |= x.equals(c);
        if (!seen)
            distinct.push_back(c);
    }
    out << "distinct classes among the set: " << distinct.size() << "\n";
    TraceAutomaton t = mode == "generated" ? build_generated_automaton(sg, distinct, cfg)
                                           : build_directed_automaton(sg, distinct, cfg);
    BuchiAutomaton relabeled = relabel_for_finite_S(t, aligned, sg, cfg);
    out << "trace automaton: " << t.aut.n_states << " states over " << t.aut.n_letters
        << " class letters; relabeled: " << relabeled.n_states << " states over "
        << relabeled.n_letters << " letters\n";
    emit_buchi(relabeled, emit, out);
    return 0;
}

int cmd_decide(const std::string& aut_path, const std::string& set_path,
               const std::string& directive, const std::string& letters, const std::string& mode,
               const Config& cfg, std::ostream& out) {
    BuchiAutomaton a = load_language(aut_path);
    Bindings b = make_bindings(set_path, a.letter_names);
    auto [pre_names, per_names] = parse_up_text(directive);
    if (per_names.empty())
        throw ParseError("decide: the period must be non-empty");
    DirectiveSequence s;
    for (const std::string& n : pre_names)
        s.pre.push_back(b.resolve(n));
    for (const std::string& n : per_names)
        s.period.push_back(b.resolve(n));

    bool generated = mode == "generated" || (mode.empty() && !letters.empty());
    if (generated) {
        if (letters.empty())
            throw ParseError("decide: generated mode needs --letters");
        auto [lp, lq] = parse_up_text(letters);
        auto to_letters = [&](const std::vector<std::string>& toks) {
            std::vector<Letter> ls;
            for (const std::string& t : toks) {
                Word w = parse_word(t, a.letter_names);
                ls.insert(ls.end(), w.begin(), w.end());
            }
            return ls;
        };
        s.letters_pre = to_letters(lp);
        s.letters_period = to_letters(lq);
        if (s.letters_pre->size() != s.pre.size() ||
            s.letters_period->size() != s.period.size())
            throw ParseError("decide: --letters shape must match --directive");
        if (!is_congenial(s)) {
            out << "NOT-CONGENIAL\n";
            return 1;
        }
        bool acc = decide_up(s, a, DecideMode::GeneratedWithAugmentation, cfg);
        out << (acc ? "ACCEPTED" : "REJECTED") << "\n";
        return acc ? 0 : 1;
    }
    bool acc = decide_up(s, a, DecideMode::Directed, cfg);
    out << (acc ? "ACCEPTED" : "REJECTED") << "\n";
    return acc ? 0 : 1;
}

int cmd_sturmian(const std::string& sub, const std::string& cf_text, const std::string& cf_period,
                 const std::string& ostrowski, const std::string& chi, std::size_t len,
                 std::ostream& out) {
    ContinuedFraction cf;
    cf.digits = parse_digit_list(cf_text);
    if (!cf_period.empty())
        cf.periodic_tail = parse_digit_list(cf_period);
    for (std::uint32_t d : cf.digits)
        if (d == 0)
            throw ParseError("sturmian: continued fraction digits must be positive");
    for (std::uint32_t d : cf.periodic_tail)
        if (d == 0)
            throw ParseError("sturmian: continued fraction digits must be positive");
    if (cf.digits.empty())
        throw ParseError("sturmian: --cf is required");

    if (sub == "directive") {
        std::vector<std::uint32_t> b;
        if (!ostrowski.empty()) {
            b = parse_digit_list(ostrowski);
        } else {
            // characteristic-like all-left choice
            std::size_t n = len ? len : cf.digits.size();
            for (std::size_t i = 1; i <= n && i <= cf.available(); ++i)
                b.push_back(i == 1 ? cf.digit(1) - 1 : cf.digit(i));
        }
        SturmianDirective dir = directive_from_expansions(cf, b);
        std::size_t limit = len ? std::min(len, dir.names.size()) : dir.names.size();
        for (std::size_t i = 0; i < limit; ++i)
            out << dir.names[i] << (i + 1 < limit ? " " : "");
        out << "\n";
        out << "congenial letters:";
        for (std::size_t i = 0; i < std::min(limit, dir.letters.size()); ++i)
            out << " " << dir.letters[i];
        out << "\n";
        return 0;
    }
    if (sub == "prefix") {
        EtaArith eta(cf);
        std::size_t n = len ? len : 32;
        BigInt num(0), den(1);
        if (!chi.empty()) {
            std::size_t slash = chi.find('/');
            if (slash == std::string::npos) {
                num = BigInt::from_string(chi);
            } else {
                num = BigInt::from_string(chi.substr(0, slash));
                den = BigInt::from_string(chi.substr(slash + 1));
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            out << sturmian_letter(eta, num, den, i);
        out << "\n";
        return 0;
    }
    throw ParseError("sturmian: unknown subcommand `" + sub + "`");
}

int cmd_ar_automaton(const std::string& aut_path, std::uint32_t d, const std::string& emit,
                     const Config& cfg, std::ostream& out) {
    BuchiAutomaton a = load_language(aut_path);
    BuchiAutomaton ar = build_ar_acceptance_automaton(a, d, cfg);
    out << "ar automaton: " << ar.n_states << " states over " << ar.n_letters << " letters\n";
    emit_buchi(ar, emit, out);
    return 0;
}

int cmd_pq_experiment(const std::string& aut_path, std::uint32_t N, std::size_t trials,
                      std::uint64_t seed, bool as_json, const Config& cfg, std::ostream& out) {
    BuchiAutomaton a = load_language(aut_path);
    PqAgreementReport report = agreement_experiment(a, N, trials, seed, cfg);
    if (as_json) {
        nlohmann::json j;
        j["rows"] = nlohmann::json::array();
        for (const auto& row : report.rows)
            j["rows"].push_back({{"N", row.N},
                                 {"trials", row.trials},
                                 {"agreements", row.agreements},
                                 {"example_disagreement", row.example_disagreement}});
        if (report.minimal_full_agreement)
            j["minimal_full_agreement"] = *report.minimal_full_agreement;
        out << j.dump(2) << "\n";
    } else {
        for (const auto& row : report.rows) {
            out << "N=" << row.N << " trials=" << row.trials << " agreements=" << row.agreements;
            if (!row.example_disagreement.empty())
                out << "  disagreement: " << row.example_disagreement;
            out << "\n";
        }
        if (report.minimal_full_agreement)
            out << "minimal N with full agreement: " << *report.minimal_full_agreement << "\n";
        else
            out << "no N with full agreement in range\n";
    }
    return 0;
}

} // namespace

std::size_t run_selfcheck(std::size_t cases, std::uint64_t seed, std::ostream& out) {
    std::mt19937_64 rng(seed);
    std::vector<Substitution> pool = {Substitution::fibonacci(), Substitution::lambda(2, 0),
                                      Substitution::lambda(2, 1), Substitution::rho(2, 0),
                                      Substitution::rho(2, 1)};
    std::size_t discrepancies = 0, comparisons = 0, done = 0;
    while (done < cases) {
        // small random automaton with a modest profile monoid
        BuchiAutomaton a;
        {
            std::uniform_int_distribution<std::uint32_t> nd(1, 3), qd(0, 2);
            std::uniform_real_distribution<double> pd(0, 1);
            a.n_letters = 2;
            a.letter_names = {"0", "1"};
            a.n_states = nd(rng);
            a.initial = {0};
            a.delta.assign(a.n_states, std::vector<std::vector<std::uint32_t>>(2));
            for (std::uint32_t q = 0; q < a.n_states; ++q)
                for (std::uint32_t c = 0; c < 2; ++c) {
                    if (pd(rng) < 0.9)
                        a.add_transition(q, c, qd(rng) % a.n_states);
                    if (pd(rng) < 0.1)
                        a.add_transition(q, c, qd(rng) % a.n_states);
                }
            for (std::uint32_t q = 0; q < a.n_states; ++q)
                a.accepting.push_back(pd(rng) < 0.4);
            a.finalize();
        }
        OmegaSemigroup sg = build_semigroup(a);
        if (sg.nf > 20)
            continue;

        std::uniform_int_distribution<std::size_t> pl(0, 2), ql(1, 3), pk(0, pool.size() - 1);
        DirectiveSequence s;
        for (std::size_t i = 0, n = pl(rng); i < n; ++i)
            s.pre.push_back(pool[pk(rng)]);
        for (std::size_t i = 0, n = ql(rng); i < n; ++i)
            s.period.push_back(pool[pk(rng)]);

        bool any_generated = false;
        for (DirectiveSequence& aug : congenial_augmentations(s)) {
            bool via_b = decide_up(aug, sg, DecideMode::GeneratedWithAugmentation);
            any_generated |= via_b;
            // the generated word's exact value must agree
            GeneratedValue gv = generated_value(aug, sg);
            bool via_value = gv.is_omega && sg.in_H[gv.id];
            ++comparisons;
            if (via_b != via_value)
                ++discrepancies;
        }
        if (weakly_primitive_up(s)) {
            bool via_c = decide_up(s, sg, DecideMode::Directed);
            ++comparisons;
            if (via_c != any_generated)
                ++discrepancies;
        }
        ++done;
    }
    out << "selfcheck: " << done << " cases, " << comparisons << " comparisons, "
        << discrepancies << " discrepancies\n";
    return discrepancies;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"deciding omega-regular membership of morphic and S-adic words"};
    app.require_subcommand(1);

    std::string aut_path, set_path, subst_path, outer_path, word_text, emit, directive, letters;
    std::string mode, config_path, cf_text, cf_period, ostrowski, chi, sturmian_sub;
    std::uint32_t d = 2, bigN = 3;
    std::size_t len = 0, trials = 100, cases = 25;
    std::uint64_t seed = 0;
    bool as_json = false;

    app.add_option("--config", config_path, "JSON file with guard overrides")->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized commands");

    auto* c_classes = app.add_subcommand("classes", "enumerate substitution classes");
    c_classes->add_option("--automaton", aut_path)->required();

    auto* c_member = app.add_subcommand("member-morphic", "is pi(sigma^omega(u)) accepted?");
    c_member->add_option("--automaton", aut_path)->required();
    c_member->add_option("--subst", subst_path)->required();
    c_member->add_option("--outer", outer_path);
    c_member->add_option("--word", word_text)->required();

    auto* c_mlang = app.add_subcommand("morphic-lang", "DFA of accepted seeds u");
    c_mlang->add_option("--automaton", aut_path)->required();
    c_mlang->add_option("--subst", subst_path)->required();
    c_mlang->add_option("--outer", outer_path);
    c_mlang->add_option("--emit", emit);

    auto* c_fixed = app.add_subcommand("fixed-points", "values of fixed points of sigma");
    c_fixed->add_option("--automaton", aut_path)->required();
    c_fixed->add_option("--subst", subst_path)->required();

    auto* c_trace = app.add_subcommand("trace-automaton", "generated/directed trace automaton");
    c_trace->add_option("--automaton", aut_path)->required();
    c_trace->add_option("--subst-set", set_path)->required();
    c_trace->add_option("--mode", mode)->check(CLI::IsMember({"generated", "directed"}))
        ->required();
    c_trace->add_option("--emit", emit);

    auto* c_decide = app.add_subcommand("decide", "membership for an up directive sequence");
    c_decide->add_option("--automaton", aut_path)->required();
    c_decide->add_option("--subst-set", set_path);
    c_decide->add_option("--directive", directive)->required();
    c_decide->add_option("--letters", letters);
    c_decide->add_option("--mode", mode)->check(CLI::IsMember({"generated", "directed"}));

    auto* c_sturmian = app.add_subcommand("sturmian", "directive/prefix from expansions");
    c_sturmian->add_option("what", sturmian_sub)->check(CLI::IsMember({"directive", "prefix"}))
        ->required();
    c_sturmian->add_option("--cf", cf_text)->required();
    c_sturmian->add_option("--cf-period", cf_period);
    c_sturmian->add_option("--ostrowski", ostrowski);
    c_sturmian->add_option("--chi", chi);
    c_sturmian->add_option("--len", len);

    auto* c_ar = app.add_subcommand("ar-automaton", "Arnoux-Rauzy acceptance automaton");
    c_ar->add_option("--automaton", aut_path)->required();
    c_ar->add_option("--d", d);
    c_ar->add_option("--emit", emit);

    auto* c_pq = app.add_subcommand("pq-experiment", "partial-quotient agreement experiment");
    c_pq->add_option("--automaton", aut_path)->required();
    c_pq->add_option("--N", bigN);
    c_pq->add_option("--trials", trials);
    c_pq->add_flag("--json", as_json);

    auto* c_self = app.add_subcommand("selfcheck", "cross-pipeline equivalence suite");
    c_self->add_option("--trials", cases);

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return 2;
    }

    try {
        Config cfg = load_config(config_path, seed);
        if (c_classes->parsed())
            return cmd_classes(aut_path, cfg, out);
        if (c_member->parsed())
            return cmd_member_morphic(aut_path, subst_path, outer_path, word_text, cfg, out);
        if (c_mlang->parsed())
            return cmd_morphic_lang(aut_path, subst_path, outer_path, emit, cfg, out);
        if (c_fixed->parsed())
            return cmd_fixed_points(aut_path, subst_path, cfg, out);
        if (c_trace->parsed())
            return cmd_trace_automaton(aut_path, set_path, mode, emit, cfg, out);
        if (c_decide->parsed())
            return cmd_decide(aut_path, set_path, directive, letters, mode, cfg, out);
        if (c_sturmian->parsed())
            return cmd_sturmian(sturmian_sub, cf_text, cf_period, ostrowski, chi, len, out);
        if (c_ar->parsed())
            return cmd_ar_automaton(aut_path, d, emit, cfg, out);
        if (c_pq->parsed())
            return cmd_pq_experiment(aut_path, bigN, trials, cfg.seed ? cfg.seed : 7, as_json,
                                     cfg, out);
        if (c_self->parsed()) {
            std::size_t bad = run_selfcheck(cases, cfg.seed ? cfg.seed : 1, out);
            return bad == 0 ? 0 : 1;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const GuardError& e) {
        err << "guard: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        err << "precision: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

} // namespace sadic
