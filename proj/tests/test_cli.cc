#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "sadic/cli.hh"
#include "sadic/json_io.hh"
#include "test_util.hh"

using namespace sadic;
using namespace sadic::testutil;

namespace {

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content) {
        path = std::string("cli_test_") + name;
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

struct CliResult {
    int code;
    std::string out, err;
};

CliResult cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string inf1s_json() {
    return buchi_to_json(inf_many_ones());
}

} // namespace

TEST_CASE("decide: the fibonacci expansion") {
    TempFile aut("inf1s.json", inf1s_json());
    auto r = cli({"decide", "--automaton", aut.path, "--directive", "; sigma_fib", "--letters",
                  "; 0"});
    CHECK(r.code == 0);
    CHECK(r.out == "ACCEPTED\n");

    auto bad = cli({"decide", "--automaton", aut.path, "--directive", "; sigma_fib", "--letters",
                    "; 1"});
    CHECK(bad.code == 1);
    CHECK(bad.out == "NOT-CONGENIAL\n");

    auto directed = cli({"decide", "--automaton", aut.path, "--directive", "; lambda0 lambda1"});
    CHECK(directed.code == 0);
    CHECK(directed.out == "ACCEPTED\n");

    auto rejected = cli({"decide", "--automaton", aut.path, "--directive", "; rho0"});
    CHECK(rejected.code == 1);
    CHECK(rejected.out == "REJECTED\n");
}

TEST_CASE("decide: named sets shadow builtins and unbound names fail") {
    TempFile aut("inf1s2.json", inf1s_json());
    TempFile set("set.sub", "[mine]\n0 -> 01\n1 -> 0\n");
    auto r = cli({"decide", "--automaton", aut.path, "--subst-set", set.path, "--directive",
                  "; mine", "--letters", "; 0"});
    CHECK(r.code == 0);
    auto missing = cli({"decide", "--automaton", aut.path, "--directive", "; nope"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("unbound") != std::string::npos);
}

TEST_CASE("member-morphic and morphic-lang") {
    TempFile aut("inf1s3.json", inf1s_json());
    TempFile fib("fib.sub", "0 -> 01\n1 -> 0\n");
    auto r = cli({"member-morphic", "--automaton", aut.path, "--subst", fib.path, "--word", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "ACCEPTED\n");

    TempFile swap("swap.sub", "0 -> 1\n1 -> 0\n");
    auto rej = cli({"member-morphic", "--automaton", aut.path, "--subst", swap.path, "--word",
                    "01"});
    CHECK(rej.code == 1);

    auto lang = cli({"morphic-lang", "--automaton", aut.path, "--subst", fib.path, "--emit",
                     "cli_test_out.json"});
    CHECK(lang.code == 0);
    CHECK(lang.out.find("dfa:") != std::string::npos);
    std::ifstream emitted("cli_test_out.json");
    REQUIRE(emitted.good());
    std::stringstream ss;
    ss << emitted.rdbuf();
    ParsedAutomaton parsed = parse_automaton_json(ss.str());
    CHECK(std::holds_alternative<Dfa>(parsed));
    std::remove("cli_test_out.json");
}

TEST_CASE("fixed-points") {
    TempFile aut("inf1s4.json", inf1s_json());
    TempFile fib("fib2.sub", "0 -> 01\n1 -> 0\n");
    auto r = cli({"fixed-points", "--automaton", aut.path, "--subst", fib.path});
    CHECK(r.code == 0); // alpha_fib is accepted
    CHECK(r.out.find("fixed-point images: 1") != std::string::npos);
    CHECK(r.out.find("accepted") != std::string::npos);

    TempFile swap("swap2.sub", "0 -> 1\n1 -> 0\n");
    auto none = cli({"fixed-points", "--automaton", aut.path, "--subst", swap.path});
    CHECK(none.code == 1);
    CHECK(none.out.find("fixed-point images: 0") != std::string::npos);
}

TEST_CASE("classes on the one-state automaton") {
    TempFile aut("triv.json", buchi_to_json(all_accepting()));
    auto r = cli({"classes", "--automaton", aut.path});
    CHECK(r.code == 0);
    CHECK(r.out.find("classes: 144") != std::string::npos);
    CHECK(r.out.find("witness") != std::string::npos);
}

TEST_CASE("trace-automaton emits a loadable automaton") {
    TempFile aut("inf1s5.json", inf1s_json());
    TempFile set("gens.sub",
                 "[l0]\n0 -> 0\n1 -> 01\n\n[l1]\n0 -> 10\n1 -> 1\n");
    auto r = cli({"trace-automaton", "--automaton", aut.path, "--subst-set", set.path, "--mode",
                  "generated", "--emit", "cli_test_trace.json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("trace automaton:") != std::string::npos);
    std::ifstream emitted("cli_test_trace.json");
    REQUIRE(emitted.good());
    std::stringstream ss;
    ss << emitted.rdbuf();
    auto parsed = parse_automaton_json(ss.str());
    CHECK(std::holds_alternative<BuchiAutomaton>(parsed));
    std::remove("cli_test_trace.json");

    auto rdir = cli({"trace-automaton", "--automaton", aut.path, "--subst-set", set.path,
                     "--mode", "directed"});
    CHECK(rdir.code == 0);
}

TEST_CASE("sturmian directive and prefix") {
    auto r = cli({"sturmian", "directive", "--cf", "2,1,1,1,1,1", "--len", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("lambda0 lambda1 lambda0 lambda1 lambda0 lambda1") != std::string::npos);

    auto p = cli({"sturmian", "prefix", "--cf", "2", "--cf-period", "1", "--len", "8"});
    CHECK(p.code == 0);
    CHECK(p.out == "01001010\n");

    auto bad = cli({"sturmian", "prefix", "--cf", "0,1"});
    CHECK(bad.code == 2);
}

TEST_CASE("ar-automaton and pq-experiment") {
    TempFile aut("inf1s6.json", inf1s_json());
    auto r = cli({"ar-automaton", "--automaton", aut.path, "--d", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("ar automaton:") != std::string::npos);

    TempFile flz("flz.json", buchi_to_json(first_letter_zero()));
    auto pq = cli({"pq-experiment", "--automaton", flz.path, "--N", "2", "--trials", "10",
                   "--seed", "3"});
    CHECK(pq.code == 0);
    CHECK(pq.out.find("N=0") != std::string::npos);
    CHECK(pq.out.find("minimal N with full agreement") != std::string::npos);
}

TEST_CASE("selfcheck runs clean") {
    auto r = cli({"selfcheck", "--trials", "8", "--seed", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0 discrepancies") != std::string::npos);
}

TEST_CASE("determinism: identical invocations give identical bytes") {
    TempFile aut("inf1s7.json", inf1s_json());
    auto a = cli({"pq-experiment", "--automaton", aut.path, "--N", "1", "--trials", "6", "--seed",
                  "9"});
    auto b = cli({"pq-experiment", "--automaton", aut.path, "--N", "1", "--trials", "6", "--seed",
                  "9"});
    CHECK(a.out == b.out);
    auto c = cli({"selfcheck", "--trials", "5", "--seed", "2"});
    auto d = cli({"selfcheck", "--trials", "5", "--seed", "2"});
    CHECK(c.out == d.out);
}

TEST_CASE("bad inputs exit with code 2") {
    auto r = cli({"decide", "--automaton", "does_not_exist.json", "--directive", "; x"});
    CHECK(r.code == 2);
    TempFile junk("junk.json", "{\"alphabet\": [\"0\"]}");
    auto r2 = cli({"classes", "--automaton", junk.path});
    CHECK(r2.code == 2);
    auto r3 = cli({"bogus-subcommand"});
    CHECK(r3.code == 2);
}

TEST_CASE("config file guard overrides are honored") {
    TempFile aut("inf1s8.json", inf1s_json());
    TempFile cfg("tight.json", "{\"semigroup_cap\": 1}");
    auto r = cli({"--config", cfg.path, "classes", "--automaton", aut.path});
    CHECK(r.code == 2);
    CHECK(r.err.find("guard") != std::string::npos);
}

TEST_CASE("dot emission") {
    TempFile aut("inf1s9.json", inf1s_json());
    TempFile set("gens2.sub", "[l0]\n0 -> 0\n1 -> 01\n\n[l1]\n0 -> 10\n1 -> 1\n");
    auto r = cli({"trace-automaton", "--automaton", aut.path, "--subst-set", set.path, "--mode",
                  "directed", "--emit", "cli_test_c.dot"});
    CHECK(r.code == 0);
    std::ifstream emitted("cli_test_c.dot");
    REQUIRE(emitted.good());
    std::stringstream ss;
    ss << emitted.rdbuf();
    CHECK(ss.str().find("digraph") != std::string::npos);
    std::remove("cli_test_c.dot");
}

TEST_CASE("parsers reject garbage without crashing") {
    std::mt19937_64 rng(8888);
    std::uniform_int_distribution<int> len(0, 60), ch(32, 126);
    for (int t = 0; t < 300; ++t) {
        std::string junk;
        for (int i = 0, n = len(rng); i < n; ++i)
            junk += static_cast<char>(ch(rng));
        try {
            parse_automaton_json(junk);
        } catch (const Error&) {
        }
        try {
            parse_substitution(junk);
        } catch (const Error&) {
        }
        try {
            parse_substitution_set(junk);
        } catch (const Error&) {
        }
    }
    CHECK(true); // reaching here means no crash
}
