#include "sadic/buchi.hh"

#include <algorithm>
#include <map>
#include <sstream>

#include "sadic/error.hh"

namespace sadic {

void BuchiAutomaton::add_transition(std::uint32_t from, std::uint32_t letter, std::uint32_t to) {
    if (from >= n_states || to >= n_states)
        throw DomainError("BuchiAutomaton: transition references an undeclared state");
    if (letter >= n_letters)
        throw DomainError("BuchiAutomaton: transition references an undeclared letter");
    if (delta.size() != n_states)
        delta.assign(n_states, std::vector<std::vector<std::uint32_t>>(n_letters));
    delta[from][letter].push_back(to);
}

void BuchiAutomaton::finalize() {
    if (delta.size() != n_states)
        delta.assign(n_states, std::vector<std::vector<std::uint32_t>>(n_letters));
    for (auto& per_state : delta)
        for (auto& targets : per_state) {
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        }
    if (accepting.size() != n_states)
        accepting.resize(n_states, false);
}

BuchiAutomaton parity_to_buchi(const ParityAutomaton& p) {
    // Copy 0 runs the parity automaton; jumping to copy (q, c) commits to
    // limsup = c: indices stay <= c and index c recurs (those states accept).
    std::vector<std::uint32_t> evens;
    for (std::uint32_t c = 0;; c += 2) {
        bool any = false;
        for (std::uint32_t q = 0; q < p.n_states; ++q)
            if (p.index[q] >= c)
                any = true;
        if (!any)
            break;
        evens.push_back(c);
        std::uint32_t maxidx = 0;
        for (std::uint32_t q = 0; q < p.n_states; ++q)
            maxidx = std::max(maxidx, p.index[q]);
        if (c >= maxidx)
            break;
    }

    BuchiAutomaton b;
    b.n_letters = p.n_letters;
    b.letter_names = p.letter_names;
    b.n_states = p.n_states * (1 + static_cast<std::uint32_t>(evens.size()));
    b.initial = {p.initial};
    b.delta.assign(b.n_states, std::vector<std::vector<std::uint32_t>>(b.n_letters));
    b.accepting.assign(b.n_states, false);
    auto copy_state = [&](std::size_t ci, std::uint32_t q) {
        return static_cast<std::uint32_t>(p.n_states * (ci + 1) + q);
    };
    for (std::uint32_t q = 0; q < p.n_states; ++q) {
        for (std::uint32_t a = 0; a < p.n_letters; ++a) {
            std::uint32_t t = p.delta[q][a];
            b.delta[q][a].push_back(t);
            for (std::size_t ci = 0; ci < evens.size(); ++ci) {
                if (p.index[t] <= evens[ci]) {
                    b.delta[q][a].push_back(copy_state(ci, t));
                    b.delta[copy_state(ci, q)][a].push_back(copy_state(ci, t));
                }
            }
        }
        for (std::size_t ci = 0; ci < evens.size(); ++ci)
            if (p.index[q] == evens[ci])
                b.accepting[copy_state(ci, q)] = true;
    }
    b.finalize();
    return b;
}

BuchiAutomaton materialize(BuchiSource& src, const Config& cfg) {
    BuchiAutomaton out;
    out.n_letters = src.alphabet_size();
    std::map<std::uint32_t, std::uint32_t> remap;
    std::vector<std::uint32_t> order;
    auto intern = [&](std::uint32_t s) {
        auto it = remap.find(s);
        if (it != remap.end())
            return it->second;
        if (order.size() >= cfg.buchi_state_cap)
            throw GuardError("materialize: state cap exceeded");
        std::uint32_t id = static_cast<std::uint32_t>(order.size());
        remap.emplace(s, id);
        order.push_back(s);
        return id;
    };
    for (std::uint32_t s : src.initial_states())
        out.initial.push_back(intern(s));

    std::vector<std::vector<std::vector<std::uint32_t>>> delta;
    std::vector<std::uint32_t> succ;
    for (std::uint32_t q = 0; q < order.size(); ++q) {
        std::vector<std::vector<std::uint32_t>> per_state(out.n_letters);
        for (std::uint32_t a = 0; a < out.n_letters; ++a) {
            src.successors(order[q], a, succ);
            for (std::uint32_t t : succ)
                per_state[a].push_back(intern(t));
            std::sort(per_state[a].begin(), per_state[a].end());
            per_state[a].erase(std::unique(per_state[a].begin(), per_state[a].end()),
                               per_state[a].end());
        }
        delta.push_back(std::move(per_state));
    }
    out.n_states = static_cast<std::uint32_t>(order.size());
    out.delta = std::move(delta);
    out.accepting.assign(out.n_states, false);
    for (std::uint32_t q = 0; q < out.n_states; ++q)
        out.accepting[q] = src.is_accepting(order[q]);
    return out;
}

namespace {

// Iterative Tarjan over an explicit adjacency list; returns the SCC id per
// vertex and whether the SCC has an internal edge (non-trivial or self-loop).
struct SccResult {
    std::vector<std::uint32_t> comp;
    std::vector<bool> has_cycle;
};

SccResult scc_decompose(std::size_t n, const std::vector<std::vector<std::uint32_t>>& adj) {
    SccResult res;
    res.comp.assign(n, UINT32_MAX);
    std::vector<std::uint32_t> low(n, 0), idx(n, UINT32_MAX), stack;
    std::vector<bool> on_stack(n, false);
    std::uint32_t counter = 0, comps = 0;

    struct Frame {
        std::uint32_t v;
        std::size_t child;
    };
    std::vector<Frame> frames;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (idx[root] != UINT32_MAX)
            continue;
        frames.push_back({root, 0});
        idx[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < adj[f.v].size()) {
                std::uint32_t w = adj[f.v][f.child++];
                if (idx[w] == UINT32_MAX) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
            } else {
                if (low[f.v] == idx[f.v]) {
                    std::uint32_t c = comps++;
                    while (true) {
                        std::uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        res.comp[w] = c;
                        if (w == f.v)
                            break;
                    }
                }
                std::uint32_t v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
    res.has_cycle.assign(comps, false);
    std::vector<std::uint32_t> size(comps, 0);
    for (std::uint32_t v = 0; v < n; ++v)
        ++size[res.comp[v]];
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t w : adj[v])
            if (res.comp[v] == res.comp[w] && (size[res.comp[v]] > 1 || v == w))
                res.has_cycle[res.comp[v]] = true;
    return res;
}

} // namespace

bool up_member(BuchiSource& src, const Word& pre, const Word& period) {
    if (period.empty())
        throw DomainError("up_member: empty period");
    const std::size_t plen = pre.size(), tlen = pre.size() + period.size();
    auto letter_at = [&](std::size_t pos) { return pos < plen ? pre[pos] : period[pos - plen]; };
    auto next_pos = [&](std::size_t pos) { return pos + 1 < tlen ? pos + 1 : plen; };

    // Product of the source with the lasso positions, explored on the fly.
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> verts; // (state, pos)
    auto intern = [&](std::uint32_t s, std::uint32_t pos) {
        auto key = std::make_pair(s, pos);
        auto it = index.find(key);
        if (it != index.end())
            return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(verts.size());
        index.emplace(key, id);
        verts.push_back(key);
        return id;
    };
    for (std::uint32_t s : src.initial_states())
        intern(s, 0);
    std::vector<std::vector<std::uint32_t>> adj;
    std::vector<std::uint32_t> succ;
    for (std::uint32_t v = 0; v < verts.size(); ++v) {
        auto [s, pos] = verts[v];
        src.successors(s, letter_at(pos), succ);
        std::vector<std::uint32_t> targets;
        for (std::uint32_t t : succ)
            targets.push_back(intern(t, static_cast<std::uint32_t>(next_pos(pos))));
        adj.push_back(std::move(targets));
    }

    SccResult scc = scc_decompose(verts.size(), adj);
    for (std::uint32_t v = 0; v < verts.size(); ++v)
        if (scc.has_cycle[scc.comp[v]] && src.is_accepting(verts[v].first))
            return true; // every explored vertex is reachable from an initial one
    return false;
}

bool accepts_up_direct(const BuchiAutomaton& a, const Word& u, const Word& v) {
    ExplicitSource src(a);
    return up_member(src, u, v);
}

BuchiAutomaton buchi_union(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    if (a.n_letters != b.n_letters)
        throw DomainError("buchi_union: alphabet mismatch");
    BuchiAutomaton out;
    out.n_letters = a.n_letters;
    out.letter_names = a.letter_names.empty() ? b.letter_names : a.letter_names;
    out.n_states = a.n_states + b.n_states;
    out.delta.assign(out.n_states, std::vector<std::vector<std::uint32_t>>(out.n_letters));
    out.accepting.assign(out.n_states, false);
    for (std::uint32_t q = 0; q < a.n_states; ++q) {
        out.accepting[q] = a.accepting[q];
        for (std::uint32_t c = 0; c < a.n_letters; ++c)
            out.delta[q][c] = a.delta[q][c];
    }
    for (std::uint32_t q = 0; q < b.n_states; ++q) {
        out.accepting[a.n_states + q] = b.accepting[q];
        for (std::uint32_t c = 0; c < b.n_letters; ++c)
            for (std::uint32_t t : b.delta[q][c])
                out.delta[a.n_states + q][c].push_back(a.n_states + t);
    }
    for (std::uint32_t q : a.initial)
        out.initial.push_back(q);
    for (std::uint32_t q : b.initial)
        out.initial.push_back(a.n_states + q);
    return out;
}

BuchiAutomaton buchi_intersect(const BuchiAutomaton& a, const BuchiAutomaton& b,
                               const Config& cfg) {
    if (a.n_letters != b.n_letters)
        throw DomainError("buchi_intersect: alphabet mismatch");
    // (p, q, phase): phase 0 waits for a-acceptance, phase 1 for b-acceptance;
    // completing both marks an accepting state.
    struct St {
        std::uint32_t p, q, phase;
        bool mark;
        bool operator<(const St& o) const {
            return std::tie(p, q, phase, mark) < std::tie(o.p, o.q, o.phase, o.mark);
        }
    };
    std::map<St, std::uint32_t> index;
    std::vector<St> states;
    auto intern = [&](St s) {
        auto it = index.find(s);
        if (it != index.end())
            return it->second;
        if (states.size() >= cfg.buchi_state_cap)
            throw GuardError("buchi_intersect: state cap exceeded");
        std::uint32_t id = static_cast<std::uint32_t>(states.size());
        index.emplace(s, id);
        states.push_back(s);
        return id;
    };
    BuchiAutomaton out;
    out.n_letters = a.n_letters;
    out.letter_names = a.letter_names.empty() ? b.letter_names : a.letter_names;
    for (std::uint32_t p : a.initial)
        for (std::uint32_t q : b.initial)
            out.initial.push_back(intern({p, q, 0, false}));
    std::vector<std::vector<std::vector<std::uint32_t>>> delta;
    for (std::uint32_t s = 0; s < states.size(); ++s) {
        St st = states[s];
        std::vector<std::vector<std::uint32_t>> per_state(out.n_letters);
        for (std::uint32_t c = 0; c < out.n_letters; ++c) {
            for (std::uint32_t tp : a.delta[st.p][c])
                for (std::uint32_t tq : b.delta[st.q][c]) {
                    std::uint32_t phase = st.phase;
                    bool mark = false;
                    if (phase == 0 && a.accepting[tp])
                        phase = 1;
                    if (phase == 1 && b.accepting[tq]) {
                        phase = 0;
                        mark = true;
                    }
                    per_state[c].push_back(intern({tp, tq, phase, mark}));
                }
            std::sort(per_state[c].begin(), per_state[c].end());
            per_state[c].erase(std::unique(per_state[c].begin(), per_state[c].end()),
                               per_state[c].end());
        }
        delta.push_back(std::move(per_state));
    }
    out.n_states = static_cast<std::uint32_t>(states.size());
    out.delta = std::move(delta);
    out.accepting.assign(out.n_states, false);
    for (std::uint32_t s = 0; s < out.n_states; ++s)
        out.accepting[s] = states[s].mark;
    return out;
}

bool buchi_is_empty(const BuchiAutomaton& a) {
    std::vector<std::vector<std::uint32_t>> adj(a.n_states);
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        for (std::uint32_t c = 0; c < a.n_letters; ++c)
            for (std::uint32_t t : a.delta[q][c])
                adj[q].push_back(t);
    // restrict to states reachable from the initial set
    std::vector<bool> reach(a.n_states, false);
    std::vector<std::uint32_t> stack(a.initial);
    for (std::uint32_t q : a.initial)
        reach[q] = true;
    while (!stack.empty()) {
        std::uint32_t q = stack.back();
        stack.pop_back();
        for (std::uint32_t t : adj[q])
            if (!reach[t]) {
                reach[t] = true;
                stack.push_back(t);
            }
    }
    std::vector<std::vector<std::uint32_t>> radj(a.n_states);
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        if (reach[q])
            for (std::uint32_t t : adj[q])
                if (reach[t])
                    radj[q].push_back(t);
    SccResult scc = scc_decompose(a.n_states, radj);
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        if (reach[q] && a.accepting[q] && scc.has_cycle[scc.comp[q]])
            return false;
    return true;
}

std::string buchi_to_dot(const BuchiAutomaton& a) {
    std::ostringstream os;
    os << "digraph buchi {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (std::size_t i = 0; i < a.initial.size(); ++i) {
        os << "  init" << i << " [shape=point];\n";
        os << "  init" << i << " -> s" << a.initial[i] << ";\n";
    }
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        if (a.accepting[q])
            os << "  s" << q << " [shape=doublecircle];\n";
    for (std::uint32_t q = 0; q < a.n_states; ++q)
        for (std::uint32_t c = 0; c < a.n_letters; ++c)
            for (std::uint32_t t : a.delta[q][c]) {
                os << "  s" << q << " -> s" << t << " [label=\"";
                if (!a.letter_names.empty())
                    os << a.letter_names[c];
                else
                    os << c;
                os << "\"];\n";
            }
    os << "}\n";
    return os.str();
}

} // namespace sadic
