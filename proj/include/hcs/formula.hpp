#pragma once

// Open formulas over a signature, prenex sentences and conjunctions thereof.

#include <cassert>
#include <iosfwd>
#include <optional>

#include "hcs/term.hpp"

namespace hcs {

enum class Conn { Atom, Not, And, Or, Imp, Iff };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    Conn kind = Conn::Atom;
    std::string pred;           // Atom only
    std::vector<TermPtr> args;  // Atom only
    FormulaPtr lhs, rhs;        // Not uses lhs only
};

inline FormulaPtr f_atom(std::string pred, std::vector<TermPtr> args = {}) {
    auto f = std::make_shared<Formula>();
    f->kind = Conn::Atom;
    f->pred = std::move(pred);
    f->args = std::move(args);
    return f;
}
inline FormulaPtr f_not(FormulaPtr a) {
    auto f = std::make_shared<Formula>();
    f->kind = Conn::Not;
    f->lhs = std::move(a);
    return f;
}
inline FormulaPtr f_bin(Conn k, FormulaPtr a, FormulaPtr b) {
    assert(k != Conn::Atom && k != Conn::Not);
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}
inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return f_bin(Conn::And, std::move(a), std::move(b)); }
inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return f_bin(Conn::Or, std::move(a), std::move(b)); }
inline FormulaPtr f_imp(FormulaPtr a, FormulaPtr b) { return f_bin(Conn::Imp, std::move(a), std::move(b)); }
inline FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) { return f_bin(Conn::Iff, std::move(a), std::move(b)); }

// Left fold of a nonempty conjunct list.
inline FormulaPtr f_conj(const std::vector<FormulaPtr>& fs) {
    assert(!fs.empty());
    FormulaPtr acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
    return acc;
}

inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    if (a->kind == Conn::Atom) {
        if (a->pred != b->pred || a->args.size() != b->args.size()) return false;
        for (std::size_t i = 0; i < a->args.size(); ++i)
            if (!term_equal(a->args[i], b->args[i])) return false;
        return true;
    }
    if (a->kind == Conn::Not) return formula_equal(a->lhs, b->lhs);
    return formula_equal(a->lhs, b->lhs) && formula_equal(a->rhs, b->rhs);
}

inline void collect_free_vars(const FormulaPtr& f, std::vector<std::string>& out) {
    if (f->kind == Conn::Atom) {
        for (const auto& t : f->args) collect_vars(t, out);
        return;
    }
    collect_free_vars(f->lhs, out);
    if (f->rhs) collect_free_vars(f->rhs, out);
}

inline std::vector<std::string> free_vars(const FormulaPtr& f) {
    std::vector<std::string> out;
    collect_free_vars(f, out);
    return out;
}

inline void validate_formula(const FormulaPtr& f, const Signature& sig) {
    if (f->kind == Conn::Atom) {
        auto it = sig.predicates.find(f->pred);
        if (it == sig.predicates.end())
            throw std::invalid_argument("unknown predicate '" + f->pred + "'");
        if (static_cast<int>(f->args.size()) != it->second)
            throw std::invalid_argument("arity mismatch for predicate '" + f->pred + "'");
        for (const auto& t : f->args) validate_term(t, sig);
        return;
    }
    validate_formula(f->lhs, sig);
    if (f->rhs) validate_formula(f->rhs, sig);
}

// Printing. Precedence: ~ > & > | > -> > <->. All binary connectives are
// left-folded by the parser; the printer parenthesizes right children of the
// same precedence so that print/parse round-trips structurally.
namespace detail {
inline int prec(Conn k) {
    switch (k) {
        case Conn::Iff: return 1;
        case Conn::Imp: return 2;
        case Conn::Or: return 3;
        case Conn::And: return 4;
        case Conn::Not: return 5;
        case Conn::Atom: return 6;
    }
    return 6;
}
inline const char* conn_text(Conn k) {
    switch (k) {
        case Conn::Iff: return " <-> ";
        case Conn::Imp: return " -> ";
        case Conn::Or: return " | ";
        case Conn::And: return " & ";
        default: return "";
    }
}
inline void print_formula_rec(std::ostream& out, const FormulaPtr& f, int parent_prec) {
    int p = prec(f->kind);
    switch (f->kind) {
        case Conn::Atom:
            if ((f->pred == "eq" || f->pred == "lt") && f->args.size() == 2) {
                bool paren = parent_prec > 0;
                if (paren) out << "(";
                print_term(out, f->args[0]);
                out << (f->pred == "eq" ? " = " : " < ");
                print_term(out, f->args[1]);
                if (paren) out << ")";
            } else {
                out << f->pred;
                if (!f->args.empty()) {
                    out << "(";
                    for (std::size_t i = 0; i < f->args.size(); ++i) {
                        if (i) out << ", ";
                        print_term(out, f->args[i]);
                    }
                    out << ")";
                }
            }
            return;
        case Conn::Not:
            out << "~";
            print_formula_rec(out, f->lhs, p);
            return;
        default: {
            bool paren = p < parent_prec;
            if (paren) out << "(";
            print_formula_rec(out, f->lhs, p);
            out << conn_text(f->kind);
            print_formula_rec(out, f->rhs, p + 1);
            if (paren) out << ")";
            return;
        }
    }
}
}  // namespace detail

inline void print_formula(std::ostream& out, const FormulaPtr& f) {
    detail::print_formula_rec(out, f, 0);
}

inline std::string print_formula(const FormulaPtr& f) {
    std::ostringstream ss;
    print_formula(ss, f);
    return ss.str();
}

enum class Quant { Forall, Exists };

struct PrenexSentence {
    std::vector<std::pair<Quant, std::string>> prefix;
    FormulaPtr matrix;
};

using ConjunctionOfPrenex = std::vector<PrenexSentence>;

// All-universal prefix; the quantifier tag is implicit.
struct UniversalSentence {
    std::vector<std::string> vars;
    FormulaPtr matrix;
};

inline void validate_sentence(const PrenexSentence& s, const Signature& sig) {
    validate_formula(s.matrix, sig);
    std::vector<std::string> bound;
    for (const auto& [q, v] : s.prefix) {
        if (std::find(bound.begin(), bound.end(), v) != bound.end())
            throw std::invalid_argument("duplicate prefix variable '" + v + "'");
        bound.push_back(v);
    }
    for (const auto& v : free_vars(s.matrix))
        if (std::find(bound.begin(), bound.end(), v) == bound.end())
            throw std::invalid_argument("unbound variable '" + v + "'");
}

inline void print_sentence(std::ostream& out, const PrenexSentence& s) {
    for (const auto& [q, v] : s.prefix)
        out << (q == Quant::Forall ? "forall " : "exists ") << v << " . ";
    print_formula(out, s.matrix);
}

inline std::string print_sentence(const PrenexSentence& s) {
    std::ostringstream ss;
    print_sentence(ss, s);
    return ss.str();
}

inline std::string print_sentences(const ConjunctionOfPrenex& cs) {
    std::ostringstream ss;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) ss << "\n";
        print_sentence(ss, cs[i]);
    }
    return ss.str();
}

inline bool sentence_equal(const PrenexSentence& a, const PrenexSentence& b) {
    return a.prefix == b.prefix && formula_equal(a.matrix, b.matrix);
}

inline PrenexSentence to_prenex(const UniversalSentence& u) {
    PrenexSentence s;
    for (const auto& v : u.vars) s.prefix.emplace_back(Quant::Forall, v);
    s.matrix = u.matrix;
    return s;
}

}  // namespace hcs
