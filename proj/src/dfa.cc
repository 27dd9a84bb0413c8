#include "sadic/dfa.hh"

#include <deque>
#include <map>
#include <sstream>

#include "sadic/error.hh"

namespace sadic {

bool Dfa::accepts(const Word& w) const {
    return accepting[run(w)];
}

std::uint32_t Dfa::run(const Word& w) const {
    std::uint32_t q = initial;
    for (Letter a : w) {
        if (a >= n_letters)
            throw DomainError("Dfa: letter outside alphabet");
        q = delta[q][a];
    }
    return q;
}

Dfa preimage_dfa(const MonoidTable& monoid,
                 const std::vector<ElemId>& letter_image,
                 ElemId x,
                 const std::vector<bool>& allowed,
                 const Config& cfg) {
    if (x >= monoid.size())
        throw DomainError("preimage_dfa: target element not in the monoid");
    const std::uint32_t L = static_cast<std::uint32_t>(letter_image.size());
    // States: reachable monoid elements plus a dead sink for disallowed letters.
    std::map<ElemId, std::uint32_t> index;
    std::vector<ElemId> states;
    auto intern = [&](ElemId e) {
        auto it = index.find(e);
        if (it != index.end())
            return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(states.size());
        if (states.size() >= cfg.dfa_state_cap)
            throw GuardError("preimage_dfa: state cap exceeded");
        index.emplace(e, id);
        states.push_back(e);
        return id;
    };
    intern(kOne);
    std::vector<std::vector<std::uint32_t>> delta;
    for (std::uint32_t q = 0; q < states.size(); ++q) {
        std::vector<std::uint32_t> row(L, 0);
        for (std::uint32_t a = 0; a < L; ++a) {
            if (!allowed[a]) {
                row[a] = UINT32_MAX; // patched to the sink below
                continue;
            }
            row[a] = intern(monoid.mul(states[q], letter_image[a]));
        }
        delta.push_back(std::move(row));
    }
    std::uint32_t sink = static_cast<std::uint32_t>(states.size());
    delta.push_back(std::vector<std::uint32_t>(L, sink));
    for (auto& row : delta)
        for (auto& t : row)
            if (t == UINT32_MAX)
                t = sink;

    Dfa out;
    out.n_letters = L;
    out.n_states = sink + 1;
    out.initial = 0;
    out.delta = std::move(delta);
    out.accepting.assign(out.n_states, false);
    auto it = index.find(x);
    if (it != index.end())
        out.accepting[it->second] = true;
    return out;
}

namespace {

struct Nfa {
    std::uint32_t n_letters = 0;
    std::uint32_t n_states = 0;
    std::vector<std::uint32_t> initial;
    // transitions[q][a] = target list
    std::vector<std::vector<std::vector<std::uint32_t>>> delta;
    std::vector<bool> accepting;
};

Dfa determinize(const Nfa& nfa, const Config& cfg) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> index;
    std::vector<std::vector<std::uint32_t>> sets;
    auto intern = [&](std::vector<std::uint32_t> s) {
        auto it = index.find(s);
        if (it != index.end())
            return it->second;
        if (sets.size() >= cfg.dfa_state_cap)
            throw GuardError("determinize: state cap exceeded");
        std::uint32_t id = static_cast<std::uint32_t>(sets.size());
        index.emplace(s, id);
        sets.push_back(std::move(s));
        return id;
    };
    std::vector<std::uint32_t> init = nfa.initial;
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    intern(std::move(init));

    Dfa out;
    out.n_letters = nfa.n_letters;
    out.initial = 0;
    for (std::uint32_t q = 0; q < sets.size(); ++q) {
        std::vector<std::uint32_t> row(nfa.n_letters);
        for (std::uint32_t a = 0; a < nfa.n_letters; ++a) {
            std::vector<std::uint32_t> next;
            for (std::uint32_t s : sets[q])
                for (std::uint32_t t : nfa.delta[s][a])
                    next.push_back(t);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            row[a] = intern(std::move(next));
        }
        out.delta.push_back(std::move(row));
    }
    out.n_states = static_cast<std::uint32_t>(sets.size());
    out.accepting.assign(out.n_states, false);
    for (std::uint32_t q = 0; q < out.n_states; ++q)
        for (std::uint32_t s : sets[q])
            if (nfa.accepting[s])
                out.accepting[q] = true;
    return out;
}

} // namespace

Dfa concat_with_markers(const std::vector<std::pair<Letter, Dfa>>& parts, const Config& cfg) {
    if (parts.empty())
        throw DomainError("concat_with_markers: empty parts list");
    const std::uint32_t L = parts.front().second.n_letters;
    for (const auto& [b, d] : parts) {
        if (d.n_letters != L)
            throw DomainError("concat_with_markers: alphabet mismatch");
        if (b >= L)
            throw DomainError("concat_with_markers: marker letter outside alphabet");
    }

    Nfa nfa;
    nfa.n_letters = L;
    std::vector<std::uint32_t> offset(parts.size());
    std::uint32_t n = 1; // state 0 = fresh start
    for (std::size_t i = 0; i < parts.size(); ++i) {
        offset[i] = n;
        n += parts[i].second.n_states;
    }
    nfa.n_states = n;
    nfa.delta.assign(n, std::vector<std::vector<std::uint32_t>>(L));
    nfa.accepting.assign(n, false);
    nfa.initial = {0};

    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Dfa& d = parts[i].second;
        for (std::uint32_t q = 0; q < d.n_states; ++q)
            for (std::uint32_t a = 0; a < L; ++a)
                nfa.delta[offset[i] + q][a].push_back(offset[i] + d.delta[q][a]);
    }
    // Bridges: reading the marker b_{i} jumps from an accepting state of part
    // i-1 (or the start, for i = 0) to the initial state of part i.
    for (std::size_t i = 0; i < parts.size(); ++i) {
        Letter b = parts[i].first;
        std::uint32_t target = offset[i] + parts[i].second.initial;
        if (i == 0) {
            nfa.delta[0][b].push_back(target);
        } else {
            const Dfa& prev = parts[i - 1].second;
            for (std::uint32_t q = 0; q < prev.n_states; ++q)
                if (prev.accepting[q])
                    nfa.delta[offset[i - 1] + q][b].push_back(target);
        }
    }
    const Dfa& last = parts.back().second;
    for (std::uint32_t q = 0; q < last.n_states; ++q)
        if (last.accepting[q])
            nfa.accepting[offset.back() + q] = true;

    return determinize(nfa, cfg);
}

Dfa intersect(const Dfa& a, const Dfa& b, const Config& cfg) {
    if (a.n_letters != b.n_letters)
        throw DomainError("intersect: alphabet mismatch");
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> states;
    auto intern = [&](std::uint32_t p, std::uint32_t q) {
        auto key = std::make_pair(p, q);
        auto it = index.find(key);
        if (it != index.end())
            return it->second;
        if (states.size() >= cfg.dfa_state_cap)
            throw GuardError("intersect: state cap exceeded");
        std::uint32_t id = static_cast<std::uint32_t>(states.size());
        index.emplace(key, id);
        states.push_back(key);
        return id;
    };
    intern(a.initial, b.initial);
    Dfa out;
    out.n_letters = a.n_letters;
    out.initial = 0;
    for (std::uint32_t s = 0; s < states.size(); ++s) {
        auto [p, q] = states[s];
        std::vector<std::uint32_t> row(a.n_letters);
        for (std::uint32_t c = 0; c < a.n_letters; ++c)
            row[c] = intern(a.delta[p][c], b.delta[q][c]);
        out.delta.push_back(std::move(row));
    }
    out.n_states = static_cast<std::uint32_t>(states.size());
    out.accepting.assign(out.n_states, false);
    for (std::uint32_t s = 0; s < out.n_states; ++s)
        out.accepting[s] = a.accepting[states[s].first] && b.accepting[states[s].second];
    return out;
}

bool is_empty(const Dfa& a) {
    return !witness(a).has_value();
}

std::optional<Word> witness(const Dfa& a) {
    // BFS expanding letters in index order: the first accepting state dequeued
    // closes the lexicographically least shortest word.
    std::vector<bool> seen(a.n_states, false);
    std::vector<std::pair<std::uint32_t, Letter>> parent(a.n_states); // (state, letter)
    std::deque<std::uint32_t> queue;
    seen[a.initial] = true;
    parent[a.initial] = {a.initial, UINT32_MAX};
    queue.push_back(a.initial);
    while (!queue.empty()) {
        std::uint32_t q = queue.front();
        queue.pop_front();
        if (a.accepting[q]) {
            Word w;
            std::uint32_t cur = q;
            while (parent[cur].second != UINT32_MAX) {
                w.push_back(parent[cur].second);
                cur = parent[cur].first;
            }
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (std::uint32_t c = 0; c < a.n_letters; ++c) {
            std::uint32_t t = a.delta[q][c];
            if (!seen[t]) {
                seen[t] = true;
                parent[t] = {q, c};
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

std::string dfa_to_dot(const Dfa& a, const std::vector<std::string>* letter_names) {
    std::ostringstream os;
    os << "digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  init [shape=point];\n  init -> s" << a.initial << ";\n";
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        if (a.accepting[q])
            os << "  s" << q << " [shape=doublecircle];\n";
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        for (std::uint32_t c = 0; c < a.n_letters; ++c) {
            os << "  s" << q << " -> s" << a.delta[q][c] << " [label=\"";
            if (letter_names)
                os << letter_names->at(c);
            else
                os << c;
            os << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

} // namespace sadic
