#include "sadic/json_io.hh"

#include <json.hpp>

#include "sadic/error.hh"

namespace sadic {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ParseError("automaton JSON: malformed document");
    return j;
}

std::uint32_t letter_of(const json& x, const std::vector<std::string>& names) {
    if (x.is_number_unsigned() || x.is_number_integer()) {
        std::int64_t v = x.get<std::int64_t>();
        if (v < 0 || static_cast<std::size_t>(v) >= names.size())
            throw ParseError("automaton JSON: letter index out of range");
        return static_cast<std::uint32_t>(v);
    }
    if (x.is_string()) {
        const std::string s = x.get<std::string>();
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == s)
                return static_cast<std::uint32_t>(i);
        throw ParseError("automaton JSON: unknown letter name `" + s + "`");
    }
    throw ParseError("automaton JSON: letter must be an index or a name");
}

} // namespace

ParsedAutomaton parse_automaton_json(const std::string& text) {
    json j = parse_or_throw(text);
    if (!j.contains("alphabet") || !j["alphabet"].is_array())
        throw ParseError("automaton JSON: missing alphabet");
    std::vector<std::string> names;
    for (const auto& x : j["alphabet"]) {
        if (!x.is_string())
            throw ParseError("automaton JSON: alphabet entries must be strings");
        names.push_back(x.get<std::string>());
    }
    if (names.empty())
        throw ParseError("automaton JSON: empty alphabet");
    if (!j.contains("states"))
        throw ParseError("automaton JSON: missing state count");
    std::uint32_t n = j["states"].get<std::uint32_t>();
    if (n == 0)
        throw ParseError("automaton JSON: need at least one state");
    if (!j.contains("acceptance") || !j["acceptance"].is_object())
        throw ParseError("automaton JSON: missing acceptance block");
    const json& acc = j["acceptance"];

    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> trans;
    if (j.contains("transitions"))
        for (const auto& t : j["transitions"]) {
            if (!t.is_array() || t.size() != 3)
                throw ParseError("automaton JSON: transition must be [from, letter, to]");
            std::uint32_t from = t[0].get<std::uint32_t>();
            std::uint32_t to = t[2].get<std::uint32_t>();
            if (from >= n || to >= n)
                throw ParseError("automaton JSON: transition state out of range");
            trans.emplace_back(from, letter_of(t[1], names), to);
        }

    std::vector<std::uint32_t> initial;
    if (j.contains("initial"))
        for (const auto& q : j["initial"]) {
            std::uint32_t v = q.get<std::uint32_t>();
            if (v >= n)
                throw ParseError("automaton JSON: initial state out of range");
            initial.push_back(v);
        }
    if (initial.empty())
        throw ParseError("automaton JSON: missing initial states");

    if (acc.contains("buchi")) {
        BuchiAutomaton b;
        b.n_letters = static_cast<std::uint32_t>(names.size());
        b.letter_names = names;
        b.n_states = n;
        b.initial = initial;
        b.delta.assign(n, std::vector<std::vector<std::uint32_t>>(b.n_letters));
        for (auto [from, a, to] : trans)
            b.delta[from][a].push_back(to);
        b.accepting.assign(n, false);
        for (const auto& q : acc["buchi"]) {
            std::uint32_t v = q.get<std::uint32_t>();
            if (v >= n)
                throw ParseError("automaton JSON: accepting state out of range");
            b.accepting[v] = true;
        }
        b.finalize();
        return b;
    }
    if (acc.contains("parity")) {
        ParityAutomaton p;
        p.n_letters = static_cast<std::uint32_t>(names.size());
        p.letter_names = names;
        p.n_states = n;
        if (initial.size() != 1)
            throw ParseError("automaton JSON: parity automata have one initial state");
        p.initial = initial[0];
        p.delta.assign(n, std::vector<std::uint32_t>(p.n_letters, UINT32_MAX));
        for (auto [from, a, to] : trans) {
            if (p.delta[from][a] != UINT32_MAX)
                throw ParseError("automaton JSON: parity transitions must be deterministic");
            p.delta[from][a] = to;
        }
        for (std::uint32_t q = 0; q < n; ++q)
            for (std::uint32_t a = 0; a < p.n_letters; ++a)
                if (p.delta[q][a] == UINT32_MAX)
                    throw ParseError("automaton JSON: parity transitions must be total");
        p.index.assign(n, 0);
        const json& idx = acc["parity"];
        for (auto it = idx.begin(); it != idx.end(); ++it) {
            std::uint32_t q = static_cast<std::uint32_t>(std::stoul(it.key()));
            if (q >= n)
                throw ParseError("automaton JSON: parity index state out of range");
            p.index[q] = it.value().get<std::uint32_t>();
        }
        return p;
    }
    if (acc.contains("finite")) {
        Dfa d;
        d.n_letters = static_cast<std::uint32_t>(names.size());
        d.n_states = n;
        if (initial.size() != 1)
            throw ParseError("automaton JSON: finite-word automata have one initial state");
        d.initial = initial[0];
        d.delta.assign(n, std::vector<std::uint32_t>(d.n_letters, UINT32_MAX));
        for (auto [from, a, to] : trans) {
            if (d.delta[from][a] != UINT32_MAX)
                throw ParseError("automaton JSON: finite-word transitions must be deterministic");
            d.delta[from][a] = to;
        }
        for (std::uint32_t q = 0; q < n; ++q)
            for (std::uint32_t a = 0; a < d.n_letters; ++a)
                if (d.delta[q][a] == UINT32_MAX)
                    throw ParseError("automaton JSON: finite-word transitions must be total");
        d.accepting.assign(n, false);
        for (const auto& q : acc["finite"]) {
            std::uint32_t v = q.get<std::uint32_t>();
            if (v >= n)
                throw ParseError("automaton JSON: accepting state out of range");
            d.accepting[v] = true;
        }
        return d;
    }
    throw ParseError("automaton JSON: acceptance must be buchi, parity, or finite");
}

BuchiAutomaton to_buchi(const ParsedAutomaton& a) {
    if (std::holds_alternative<BuchiAutomaton>(a))
        return std::get<BuchiAutomaton>(a);
    if (std::holds_alternative<ParityAutomaton>(a))
        return parity_to_buchi(std::get<ParityAutomaton>(a));
    throw DomainError("to_buchi: finite-word automata have no omega semantics");
}

namespace {

json alphabet_json(std::uint32_t n_letters, const std::vector<std::string>& names) {
    json alpha = json::array();
    for (std::uint32_t c = 0; c < n_letters; ++c)
        alpha.push_back(names.empty() ? std::to_string(c) : names[c]);
    return alpha;
}

} // namespace

std::string buchi_to_json(const BuchiAutomaton& a) {
    json j;
    j["alphabet"] = alphabet_json(a.n_letters, a.letter_names);
    j["states"] = a.n_states;
    j["initial"] = a.initial;
    json trans = json::array();
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        for (std::uint32_t c = 0; c < a.n_letters; ++c)
            for (std::uint32_t t : a.delta[q][c])
                trans.push_back(json::array({q, c, t}));
    j["transitions"] = std::move(trans);
    json acc = json::array();
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        if (a.accepting[q])
            acc.push_back(q);
    j["acceptance"] = {{"buchi", std::move(acc)}};
    return j.dump(2) + "\n";
}

std::string parity_to_json(const ParityAutomaton& a) {
    json j;
    j["alphabet"] = alphabet_json(a.n_letters, a.letter_names);
    j["states"] = a.n_states;
    j["initial"] = json::array({a.initial});
    json trans = json::array();
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        for (std::uint32_t c = 0; c < a.n_letters; ++c)
            trans.push_back(json::array({q, c, a.delta[q][c]}));
    j["transitions"] = std::move(trans);
    json idx = json::object();
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        idx[std::to_string(q)] = a.index[q];
    j["acceptance"] = {{"parity", std::move(idx)}};
    return j.dump(2) + "\n";
}

std::string dfa_to_json(const Dfa& a, const std::vector<std::string>& letter_names) {
    json j;
    j["alphabet"] = alphabet_json(a.n_letters, letter_names);
    j["states"] = a.n_states;
    j["initial"] = json::array({a.initial});
    json trans = json::array();
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        for (std::uint32_t c = 0; c < a.n_letters; ++c)
            trans.push_back(json::array({q, c, a.delta[q][c]}));
    j["transitions"] = std::move(trans);
    json acc = json::array();
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        if (a.accepting[q])
            acc.push_back(q);
    j["acceptance"] = {{"finite", std::move(acc)}};
    return j.dump(2) + "\n";
}

} // namespace sadic
