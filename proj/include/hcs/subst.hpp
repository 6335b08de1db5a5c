#pragma once

// Simultaneous substitution on terms and formulas. A map may bind variable
// names as well as constant names; free occurrences of either are replaced in
// one pass, so repeated symbols receive the same replacement.

#include <map>

#include "hcs/formula.hpp"

namespace hcs {

using SubstMap = std::map<std::string, TermPtr>;

inline TermPtr substitute(const TermPtr& t, const SubstMap& m) {
    if (m.empty()) return t;
    if (t->var) {
        auto it = m.find(t->name);
        return it == m.end() ? t : it->second;
    }
    if (t->args.empty()) {
        auto it = m.find(t->name);
        return it == m.end() ? t : it->second;
    }
    bool changed = false;
    std::vector<TermPtr> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args) {
        TermPtr s = substitute(a, m);
        changed |= s.get() != a.get();
        args.push_back(std::move(s));
    }
    return changed ? make_app(t->name, std::move(args)) : t;
}

inline FormulaPtr substitute(const FormulaPtr& f, const SubstMap& m) {
    if (m.empty()) return f;
    if (f->kind == Conn::Atom) {
        bool changed = false;
        std::vector<TermPtr> args;
        args.reserve(f->args.size());
        for (const auto& t : f->args) {
            TermPtr s = substitute(t, m);
            changed |= s.get() != t.get();
            args.push_back(std::move(s));
        }
        return changed ? f_atom(f->pred, std::move(args)) : f;
    }
    FormulaPtr l = substitute(f->lhs, m);
    FormulaPtr r = f->rhs ? substitute(f->rhs, m) : nullptr;
    if (l.get() == f->lhs.get() && r.get() == (f->rhs ? f->rhs.get() : nullptr)) return f;
    if (f->kind == Conn::Not) return f_not(std::move(l));
    return f_bin(f->kind, std::move(l), std::move(r));
}

// Checks that replacement terms respect the signature.
inline void validate_subst(const SubstMap& m, const Signature& sig) {
    for (const auto& [k, t] : m) validate_term(t, sig);
}

}  // namespace hcs
