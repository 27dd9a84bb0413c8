#include "sadic/words.hh"

#include <algorithm>
#include <sstream>

namespace sadic {

std::string word_to_string(const Word& w, const std::vector<std::string>* names) {
    std::string out;
    for (Letter a : w) {
        if (names)
            out += names->at(a);
        else
            out += std::to_string(a);
    }
    if (w.empty())
        out = "eps";
    return out;
}

Substitution::Substitution(std::uint32_t d_, std::vector<Word> images_)
    : d(d_), images(std::move(images_)) {
    if (d == 0)
        throw DomainError("substitution: alphabet must be non-empty");
    if (images.size() != d)
        throw DomainError("substitution: need one image per letter");
    for (const Word& w : images) {
        if (w.empty())
            throw DomainError("substitution: images must be non-empty (non-erasing)");
        for (Letter a : w)
            if (a >= d)
                throw DomainError("substitution: image letter outside alphabet");
    }
}

Substitution Substitution::identity(std::uint32_t d) {
    std::vector<Word> im(d);
    for (std::uint32_t a = 0; a < d; ++a)
        im[a] = {a};
    return Substitution(d, std::move(im));
}

Substitution Substitution::fibonacci() {
    return Substitution(2, {{0, 1}, {0}});
}

Substitution Substitution::lambda(std::uint32_t d, Letter i) {
    std::vector<Word> im(d);
    for (std::uint32_t j = 0; j < d; ++j)
        im[j] = (j == i) ? Word{i} : Word{i, j};
    return Substitution(d, std::move(im));
}

Substitution Substitution::rho(std::uint32_t d, Letter i) {
    std::vector<Word> im(d);
    for (std::uint32_t j = 0; j < d; ++j)
        im[j] = (j == i) ? Word{i} : Word{j, i};
    return Substitution(d, std::move(im));
}

bool Substitution::is_identity() const {
    for (std::uint32_t a = 0; a < d; ++a)
        if (images[a] != Word{a})
            return false;
    return true;
}

bool Substitution::positive() const {
    for (std::uint32_t a = 0; a < d; ++a) {
        std::vector<bool> seen(d, false);
        for (Letter b : images[a])
            seen[b] = true;
        for (std::uint32_t b = 0; b < d; ++b)
            if (!seen[b])
                return false;
    }
    return true;
}

bool Substitution::left_proper() const {
    for (std::uint32_t a = 1; a < d; ++a)
        if (head(a) != head(0))
            return false;
    return true;
}

std::vector<std::vector<bool>> Substitution::incidence() const {
    std::vector<std::vector<bool>> occ(d, std::vector<bool>(d, false));
    for (std::uint32_t c = 0; c < d; ++c)
        for (Letter b : images[c])
            occ[b][c] = true;
    return occ;
}

Word apply(const Substitution& sigma, const Word& w) {
    Word out;
    std::size_t total = 0;
    for (Letter a : w) {
        if (a >= sigma.d)
            throw DomainError("apply: letter outside the substitution's alphabet");
        total += sigma.images[a].size();
    }
    out.reserve(total);
    for (Letter a : w)
        out.insert(out.end(), sigma.images[a].begin(), sigma.images[a].end());
    return out;
}

Substitution compose(const Substitution& sigma, const Substitution& mu) {
    if (sigma.d != mu.d)
        throw DomainError("compose: alphabet mismatch");
    std::vector<Word> im(sigma.d);
    for (std::uint32_t a = 0; a < sigma.d; ++a)
        im[a] = apply(sigma, mu.images[a]);
    return Substitution(sigma.d, std::move(im));
}

Substitution compose_then(const Substitution& sigma, const Substitution& mu) {
    return compose(mu, sigma);
}

std::vector<std::pair<Letter, Word>> first_occurrence_factorization(const Word& w) {
    if (w.empty())
        throw DomainError("first_occurrence_factorization: empty word");
    std::vector<std::pair<Letter, Word>> parts;
    std::set<Letter> seen;
    for (Letter c : w) {
        if (!seen.count(c)) {
            seen.insert(c);
            parts.emplace_back(c, Word{});
        } else {
            parts.back().second.push_back(c);
        }
    }
    return parts;
}

std::set<Word> factors(const Word& prefix, std::size_t n) {
    if (n > prefix.size())
        throw DomainError("factors: window longer than the prefix");
    std::set<Word> out;
    if (n == 0) {
        out.insert(Word{});
        return out;
    }
    for (std::size_t i = 0; i + n <= prefix.size(); ++i)
        out.insert(Word(prefix.begin() + i, prefix.begin() + i + n));
    return out;
}

LazyWord LazyWord::infinite(std::function<Word(std::size_t)> prefix_fn, std::size_t budget) {
    LazyWord w;
    w.kind_ = Kind::Infinite;
    w.prefix_fn_ = std::move(prefix_fn);
    w.budget_ = budget;
    return w;
}

LazyWord LazyWord::finite(Word w) {
    LazyWord out;
    out.kind_ = Kind::Finite;
    out.finite_word_ = std::move(w);
    return out;
}

LazyWord LazyWord::divergent() {
    return LazyWord{};
}

Word LazyWord::prefix(std::size_t n) const {
    switch (kind_) {
    case Kind::Divergent:
        throw DomainError("LazyWord: prefix query on a divergent word");
    case Kind::Finite: {
        std::size_t k = std::min(n, finite_word_.size());
        return Word(finite_word_.begin(), finite_word_.begin() + k);
    }
    case Kind::Infinite: {
        if (n > budget_)
            throw GuardError("LazyWord: prefix budget exceeded");
        Word w = prefix_fn_(n);
        if (w.size() < n)
            throw DomainError("LazyWord: oracle returned a short prefix");
        w.resize(n);
        return w;
    }
    }
    throw DomainError("LazyWord: unreachable");
}

Letter LazyWord::at(std::size_t i) const {
    if (kind_ == Kind::Finite) {
        if (i >= finite_word_.size())
            throw DomainError("LazyWord: index past the end of a finite word");
        return finite_word_[i];
    }
    return prefix(i + 1).back();
}

std::size_t LazyWord::finite_length() const {
    if (kind_ != Kind::Finite)
        throw DomainError("LazyWord: length of a non-finite word");
    return finite_word_.size();
}

LazyWord LazyWord::concat(const LazyWord& a, const LazyWord& b) {
    if (a.kind_ == Kind::Divergent)
        return divergent();
    if (a.kind_ == Kind::Infinite)
        return a;
    // a finite
    if (b.kind_ == Kind::Divergent)
        return divergent();
    if (b.kind_ == Kind::Finite) {
        Word w = a.finite_word_;
        w.insert(w.end(), b.finite_word_.begin(), b.finite_word_.end());
        return finite(std::move(w));
    }
    Word head = a.finite_word_;
    auto fn = b.prefix_fn_;
    std::size_t budget = b.budget_;
    return infinite(
        [head, fn](std::size_t n) {
            if (n <= head.size())
                return Word(head.begin(), head.begin() + n);
            Word tail = fn(n - head.size());
            Word out = head;
            out.insert(out.end(), tail.begin(), tail.end());
            return out;
        },
        budget + head.size());
}

std::size_t recurrence(const LazyWord& word,
                       const std::function<std::size_t(std::size_t)>& complexity,
                       std::size_t l,
                       std::size_t prefix_budget) {
    if (word.kind() == LazyWord::Kind::Divergent)
        throw DomainError("recurrence: divergent word");
    if (l == 0)
        return 0;

    std::size_t len = std::max<std::size_t>(64, 4 * l);
    while (true) {
        if (len > prefix_budget)
            throw GuardError("recurrence: prefix budget exceeded before the search settled");
        Word prefix = word.prefix(word.kind() == LazyWord::Kind::Finite
                                      ? std::min(len, word.finite_length())
                                      : len);
        std::set<Word> small = factors(prefix, std::min(l, prefix.size()));
        // The prefix must already witness the full set of length-l factors.
        if (small.size() == complexity(l)) {
            for (std::size_t m = l; m + 1 <= prefix.size(); ++m) {
                std::set<Word> big = factors(prefix, m);
                if (big.size() != complexity(m))
                    continue; // not all length-m factors seen yet
                bool all_contain = true;
                for (const Word& f : big) {
                    std::set<Word> inner = factors(f, l);
                    if (inner.size() < complexity(l)) {
                        all_contain = false;
                        break;
                    }
                }
                if (all_contain)
                    return m;
            }
        }
        if (word.kind() == LazyWord::Kind::Finite && len >= word.finite_length())
            throw DomainError("recurrence: finite word exhausted before the search settled");
        len *= 2;
    }
}

std::optional<Letter> NamedAlphabet::find(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return static_cast<Letter>(i);
    return std::nullopt;
}

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct RawRule {
    std::string lhs;
    std::vector<std::string> rhs;
    std::size_t line;
};

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> toks;
    std::istringstream in(s);
    std::string t;
    while (in >> t)
        toks.push_back(t);
    return toks;
}

// Lines `a -> w`; `#` starts a comment. Errors carry 1-based line numbers.
std::vector<RawRule> parse_rules(const std::string& text, std::size_t line0) {
    std::vector<RawRule> rules;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = line0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = strip(line);
        if (line.empty())
            continue;
        std::size_t arrow = line.find("->");
        if (arrow == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected `a -> w`");
        std::string lhs = strip(line.substr(0, arrow));
        std::string rhs = strip(line.substr(arrow + 2));
        if (lhs.empty())
            throw ParseError("line " + std::to_string(lineno) + ": missing letter before `->`");
        if (split_tokens(lhs).size() != 1)
            throw ParseError("line " + std::to_string(lineno) + ": left side must be one letter");
        if (rhs.empty())
            throw ParseError("line " + std::to_string(lineno) +
                             ": empty image (substitutions are non-erasing)");
        rules.push_back({lhs, split_tokens(rhs), lineno});
    }
    return rules;
}

std::pair<Substitution, NamedAlphabet> rules_to_substitution(const std::vector<RawRule>& rules) {
    if (rules.empty())
        throw ParseError("substitution DSL: no rules found");
    std::set<std::string> letter_set;
    for (const RawRule& r : rules)
        letter_set.insert(r.lhs);

    auto explode = [&](const std::string& tok, std::size_t lineno) {
        std::vector<std::string> out;
        if (letter_set.count(tok)) {
            out.push_back(tok);
            return out;
        }
        for (char c : tok) {
            std::string one(1, c);
            if (!letter_set.count(one))
                throw ParseError("line " + std::to_string(lineno) + ": unknown letter `" +
                                 std::string(1, c) + "` in image");
            out.push_back(one);
        }
        return out;
    };

    NamedAlphabet alpha;
    alpha.names.assign(letter_set.begin(), letter_set.end()); // sorted, deterministic

    std::vector<Word> images(alpha.size());
    std::vector<bool> defined(alpha.size(), false);
    for (const RawRule& r : rules) {
        Letter a = *alpha.find(r.lhs);
        if (defined[a])
            throw ParseError("line " + std::to_string(r.line) + ": duplicate rule for `" + r.lhs +
                             "`");
        defined[a] = true;
        Word img;
        for (const std::string& tok : r.rhs)
            for (const std::string& one : explode(tok, r.line))
                img.push_back(*alpha.find(one));
        images[a] = std::move(img);
    }
    for (std::size_t a = 0; a < alpha.size(); ++a)
        if (!defined[a])
            throw ParseError("substitution DSL: letter `" + alpha.names[a] + "` has no rule");
    return {Substitution(alpha.size(), std::move(images)), alpha};
}

} // namespace

std::pair<Substitution, NamedAlphabet> parse_substitution(const std::string& text) {
    return rules_to_substitution(parse_rules(text, 0));
}

SubstitutionSet parse_substitution_set(const std::string& text) {
    // Split into [name] sections first, then reuse the single parser with a
    // shared alphabet across all sections.
    struct Section {
        std::string name;
        std::vector<RawRule> rules;
    };
    std::vector<Section> sections;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::string pending;
    std::size_t pending_start = 0;
    std::string cur_name;
    bool have_section = false;
    auto flush = [&]() {
        if (!have_section)
            return;
        sections.push_back({cur_name, parse_rules(pending, pending_start)});
        pending.clear();
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(line);
        if (!s.empty() && s.front() == '[') {
            if (s.back() != ']')
                throw ParseError("line " + std::to_string(lineno) + ": unterminated [name]");
            flush();
            cur_name = strip(s.substr(1, s.size() - 2));
            if (cur_name.empty())
                throw ParseError("line " + std::to_string(lineno) + ": empty section name");
            have_section = true;
            pending_start = lineno;
            continue;
        }
        if (!have_section && !s.empty() && s.front() != '#')
            throw ParseError("line " + std::to_string(lineno) + ": rule outside any [name] section");
        pending += line;
        pending += '\n';
    }
    flush();
    if (sections.empty())
        throw ParseError("substitution set: no [name] sections found");

    std::set<std::string> letter_set;
    for (const Section& sec : sections)
        for (const RawRule& r : sec.rules)
            letter_set.insert(r.lhs);

    SubstitutionSet out;
    out.alphabet.names.assign(letter_set.begin(), letter_set.end());
    for (const Section& sec : sections) {
        for (const Section& prev : sections)
            if (&prev != &sec && prev.name == sec.name && &prev < &sec)
                throw ParseError("substitution set: duplicate name `" + sec.name + "`");
        // Re-run the single-substitution assembly against the shared alphabet.
        std::vector<Word> images(out.alphabet.size());
        std::vector<bool> defined(out.alphabet.size(), false);
        for (const RawRule& r : sec.rules) {
            Letter a = *out.alphabet.find(r.lhs);
            if (defined[a])
                throw ParseError("line " + std::to_string(r.line) + ": duplicate rule for `" +
                                 r.lhs + "`");
            defined[a] = true;
            Word img;
            for (const std::string& tok : r.rhs) {
                if (out.alphabet.find(tok)) {
                    img.push_back(*out.alphabet.find(tok));
                    continue;
                }
                for (char c : tok) {
                    auto l = out.alphabet.find(std::string(1, c));
                    if (!l)
                        throw ParseError("line " + std::to_string(r.line) + ": unknown letter `" +
                                         std::string(1, c) + "` in image");
                    img.push_back(*l);
                }
            }
            images[a] = std::move(img);
        }
        for (std::size_t a = 0; a < out.alphabet.size(); ++a)
            if (!defined[a])
                throw ParseError("substitution set `" + sec.name + "`: letter `" +
                                 out.alphabet.names[a] + "` has no rule");
        out.names.push_back(sec.name);
        out.subs.emplace_back(out.alphabet.size(), std::move(images));
    }
    return out;
}

std::optional<std::size_t> SubstitutionSet::find(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return i;
    return std::nullopt;
}

std::string substitution_to_dsl(const Substitution& s, const NamedAlphabet* alpha) {
    std::string out;
    for (std::uint32_t a = 0; a < s.d; ++a) {
        out += alpha ? alpha->names.at(a) : std::to_string(a);
        out += " -> ";
        for (Letter b : s.images[a])
            out += alpha ? alpha->names.at(b) : std::to_string(b);
        out += '\n';
    }
    return out;
}

} // namespace sadic
