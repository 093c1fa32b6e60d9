#ifndef EQP_SCENARIO_HPP
#define EQP_SCENARIO_HPP

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/gset.hpp"

namespace eqp {

/// Size guards, overridable per scenario or from the command line.
struct Guards {
    int bell_max = 9;                    // partition enumeration
    int tree_enum_max = 7;               // tree enumeration
    int tree_poset_max = 6;              // full tree poset
    int group_order_max = 512;           // subgroup enumeration
    long long chain_max = 5'000'000;     // chain enumeration
    int weyl_degree_max = 8;             // symmetric-group normalizer scans
    long long iso_nodes_max = 1'000'000; // poset isomorphism search
    int zigzag_chain_poset_max = 1500;   // induced-map legs of the zig-zag

    void set(const std::string& key, long long value) {
        if (key == "bell_max") bell_max = static_cast<int>(value);
        else if (key == "tree_enum_max") tree_enum_max = static_cast<int>(value);
        else if (key == "tree_poset_max") tree_poset_max = static_cast<int>(value);
        else if (key == "group_order_max") group_order_max = static_cast<int>(value);
        else if (key == "chain_max") chain_max = value;
        else if (key == "weyl_degree_max") weyl_degree_max = static_cast<int>(value);
        else if (key == "iso_nodes_max") iso_nodes_max = value;
        else if (key == "zigzag_chain_poset_max") zigzag_chain_poset_max = static_cast<int>(value);
        else throw std::invalid_argument("unknown guard key: " + key);
    }
};

struct ScenarioError : std::runtime_error {
    int line;
    int column;
    ScenarioError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " (line " + std::to_string(l) + ", column " +
                             std::to_string(c) + ")"),
          line(l),
          column(c) {}
};

/// A parsed scenario: the group, the G-set as an orbit sum, the requested
/// checks and guard overrides.
struct Scenario {
    std::string name = "scenario";
    std::string group_spec;
    std::string gset_spec;
    std::vector<std::string> checks;   // empty = all
    Guards guards;
    std::uint64_t seed = 0;
    int samples = 100;

    GroupPtr group;
    GSet gset;
};

namespace detail {

struct ScnLexer {
    const std::string& text;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    void advance() {
        if (pos < text.size()) {
            if (text[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }
    void skip_ws_and_comments() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c)) || c == ';') {
                advance();
            } else {
                break;
            }
        }
    }
    std::string read_key() {
        std::string key;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                text[pos] == '.' || text[pos] == '-')) {
            key.push_back(text[pos]);
            advance();
        }
        return key;
    }
    std::string read_value() {
        skip_ws_and_comments();
        if (pos < text.size() && text[pos] == '"') {
            advance();
            std::string v;
            while (pos < text.size() && text[pos] != '"') {
                v.push_back(text[pos]);
                advance();
            }
            if (pos >= text.size()) throw ScenarioError("unterminated string", line, col);
            advance();
            return v;
        }
        std::string v;
        while (pos < text.size() && text[pos] != ';' && text[pos] != '\n' && text[pos] != '#') {
            v.push_back(text[pos]);
            advance();
        }
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.pop_back();
        return v;
    }
};

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    for (auto& p : out) {
        size_t a = p.find_first_not_of(" \t");
        size_t b = p.find_last_not_of(" \t");
        p = (a == std::string::npos) ? "" : p.substr(a, b - a + 1);
    }
    return out;
}

} // namespace detail

/// Resolve an orbit-sum expression over the group: terms separated by '+',
/// each an integer (that many trivial points), "G/e" (the regular orbit), or
/// "G/(cycles)[,(cycles)]..." (cosets of the subgroup those elements
/// generate).
inline GSet resolve_gset(GroupPtr G, const std::string& spec) {
    std::vector<std::string> terms = detail::split(spec, '+');
    GSet acc;
    bool first = true;
    for (const std::string& term : terms) {
        if (term.empty()) throw std::invalid_argument("gset: empty term in orbit sum");
        GSet part;
        if (term.rfind("G/", 0) == 0) {
            std::string sub = term.substr(2);
            Subgroup H;
            if (sub == "e" || sub == "1") {
                H = trivial_subgroup(*G);
            } else {
                H.parent = G.get();
                H.members.push_back(0);
                for (const std::string& gen : detail::split(sub, ',')) {
                    if (gen.empty()) continue;
                    Perm p = parse_cycles(gen, G->degree);
                    int idx = G->index_of(p);
                    if (idx < 0)
                        throw std::invalid_argument("gset: " + gen +
                                                    " is not an element of the group");
                    H.members.push_back(idx);
                }
                H = subgroup_closure(*G, H.members);
            }
            part = coset_gset(G, H);
        } else {
            int n = 0;
            for (char c : term) {
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    throw std::invalid_argument("gset: bad term '" + term + "'");
                n = n * 10 + (c - '0');
            }
            part = trivial_gset(G, n);
        }
        acc = first ? part : disjoint_union(acc, part);
        first = false;
    }
    if (first) throw std::invalid_argument("gset: empty orbit sum");
    return acc;
}

/// Parse a scenario description: `key = "value"` statements separated by
/// newlines or ';', with '#' comments.  Keys: name, group, gset, checks,
/// guards, seed, samples.
inline Scenario parse_scenario(const std::string& text) {
    Scenario s;
    bool saw_gset = false;
    detail::ScnLexer lex{text};
    while (true) {
        lex.skip_ws_and_comments();
        if (lex.pos >= lex.text.size()) break;
        int kl = lex.line, kc = lex.col;
        std::string key = lex.read_key();
        if (key.empty()) throw ScenarioError("expected a key", kl, kc);
        lex.skip_ws_and_comments();
        if (lex.pos >= lex.text.size() || lex.text[lex.pos] != '=')
            throw ScenarioError("expected '=' after key '" + key + "'", lex.line, lex.col);
        lex.advance();
        std::string value = lex.read_value();
        if (key == "name") {
            s.name = value;
        } else if (key == "group") {
            s.group_spec = value;
        } else if (key == "gset") {
            s.gset_spec = value;
            saw_gset = true;
        } else if (key == "checks") {
            for (const std::string& c : detail::split(value, ','))
                if (!c.empty()) s.checks.push_back(c);
        } else if (key == "guards") {
            for (const std::string& kv : detail::split(value, ',')) {
                if (kv.empty()) continue;
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw ScenarioError("guard entry needs key=value: " + kv, kl, kc);
                try {
                    s.guards.set(kv.substr(0, eq), std::stoll(kv.substr(eq + 1)));
                } catch (const std::invalid_argument& e) {
                    throw ScenarioError(e.what(), kl, kc);
                }
            }
        } else if (key == "seed") {
            s.seed = std::stoull(value);
        } else if (key == "samples") {
            s.samples = std::stoi(value);
        } else {
            throw ScenarioError("unknown key '" + key + "'", kl, kc);
        }
    }
    if (!saw_gset) throw ScenarioError("scenario needs a gset", lex.line, lex.col);
    try {
        s.group = make_group(s.group_spec);
        s.gset = resolve_gset(s.group, s.gset_spec);
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what(), 1, 1);
    }
    if (!s.gset.is_valid_action())
        throw ScenarioError("resolved action is not a homomorphism", 1, 1);
    return s;
}

} // namespace eqp

#endif
