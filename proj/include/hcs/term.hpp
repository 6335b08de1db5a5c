#pragma once

// First-order terms and signatures. Terms are immutable shared trees with a
// cached structural hash; constants are 0-ary function applications.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcs {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    std::string name;
    std::vector<TermPtr> args;  // empty for variables and constants
    bool var = false;
    std::size_t hash = 0;
};

inline std::size_t hash_mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

inline TermPtr make_var(std::string name) {
    auto t = std::make_shared<Term>();
    t->name = std::move(name);
    t->var = true;
    t->hash = hash_mix(0x517cc1b7, std::hash<std::string>{}(t->name));
    return t;
}

inline TermPtr make_app(std::string fn, std::vector<TermPtr> args = {}) {
    auto t = std::make_shared<Term>();
    t->name = std::move(fn);
    t->args = std::move(args);
    std::size_t h = hash_mix(0x2545f491, std::hash<std::string>{}(t->name));
    for (const auto& a : t->args) h = hash_mix(h, a->hash);
    t->hash = h;
    return t;
}

inline TermPtr make_const(std::string c) { return make_app(std::move(c)); }

inline bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->hash != b->hash || a->var != b->var || a->name != b->name) return false;
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i], b->args[i])) return false;
    return true;
}

inline bool ground(const TermPtr& t) {
    if (t->var) return false;
    for (const auto& a : t->args)
        if (!ground(a)) return false;
    return true;
}

// Nesting depth: variables and constants have depth 0.
inline int term_depth(const TermPtr& t) {
    int d = 0;
    for (const auto& a : t->args) d = std::max(d, 1 + term_depth(a));
    return d;
}

inline void print_term(std::ostream& out, const TermPtr& t) {
    out << t->name;
    if (!t->args.empty()) {
        out << "(";
        for (std::size_t i = 0; i < t->args.size(); ++i) {
            if (i) out << ", ";
            print_term(out, t->args[i]);
        }
        out << ")";
    }
}

inline std::string print_term(const TermPtr& t) {
    std::ostringstream ss;
    print_term(ss, t);
    return ss.str();
}

inline void collect_vars(const TermPtr& t, std::vector<std::string>& out) {
    if (t->var) {
        if (std::find(out.begin(), out.end(), t->name) == out.end()) out.push_back(t->name);
        return;
    }
    for (const auto& a : t->args) collect_vars(a, out);
}

// Predicate and function symbols with arities. Constants are 0-ary functions.
// "=" has no built-in semantics; it is parsed as the binary predicate "eq".
struct Signature {
    std::map<std::string, int> predicates;
    std::map<std::string, int> functions;

    void add_predicate(const std::string& name, int arity) {
        check_fresh(predicates, name, arity, "predicate");
        predicates[name] = arity;
    }
    void add_function(const std::string& name, int arity) {
        check_fresh(functions, name, arity, "function");
        functions[name] = arity;
    }
    bool has_predicate(const std::string& name) const { return predicates.count(name) > 0; }
    bool has_function(const std::string& name) const { return functions.count(name) > 0; }

    bool has_constant() const {
        for (const auto& [n, a] : functions)
            if (a == 0) return true;
        return false;
    }

  private:
    static void check_fresh(std::map<std::string, int>& m, const std::string& name, int arity,
                            const char* kind) {
        if (arity < 0) throw std::invalid_argument(std::string(kind) + " arity must be >= 0");
        auto it = m.find(name);
        if (it != m.end() && it->second != arity)
            throw std::invalid_argument(std::string(kind) + " '" + name +
                                        "' redeclared with different arity");
    }
};

// Checks arities of every application in t against sig. Variables are
// unconstrained. Throws on violation.
inline void validate_term(const TermPtr& t, const Signature& sig) {
    if (t->var) return;
    auto it = sig.functions.find(t->name);
    if (it == sig.functions.end())
        throw std::invalid_argument("unknown function symbol '" + t->name + "'");
    if (static_cast<int>(t->args.size()) != it->second)
        throw std::invalid_argument("arity mismatch for '" + t->name + "': expected " +
                                    std::to_string(it->second) + ", got " +
                                    std::to_string(t->args.size()));
    for (const auto& a : t->args) validate_term(a, sig);
}

}  // namespace hcs
