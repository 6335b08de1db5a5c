#pragma once

// Dense linear orderings with a between-point Skolem function f(x,y).
//
// dlo_solve interprets every subterm of an instance as an exact dyadic
// rational: 0 and 1 keep their values, variables get fresh integers >= 2 by
// first occurrence, and f(a,b) sits at the midpoint of v(a),v(b) when
// v(a) < v(b), else above both. Atom truth values are read off the order. No
// SAT call is made anywhere on this path.

#include "hcs/hcs_solve.hpp"

namespace hcs {

// Exact dyadic rational num / 2^exp, kept normalized (num odd or exp == 0).
struct Dyadic {
    long long num = 0;
    int exp = 0;

    static Dyadic from_int(long long v) { return {v, 0}; }

    void normalize() {
        while (exp > 0 && num % 2 == 0) {
            num /= 2;
            --exp;
        }
    }
    static Dyadic mid(const Dyadic& a, const Dyadic& b) {
        int e = std::max(a.exp, b.exp);
        long long an = a.num << (e - a.exp);
        long long bn = b.num << (e - b.exp);
        Dyadic r{an + bn, e + 1};
        r.normalize();
        return r;
    }
    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.num == b.num && a.exp == b.exp;
    }
    friend bool operator<(const Dyadic& a, const Dyadic& b) {
        int e = std::max(a.exp, b.exp);
        return (a.num << (e - a.exp)) < (b.num << (e - b.exp));
    }
    std::string str() const {
        return exp == 0 ? std::to_string(num)
                        : (std::to_string(num) + "/2^" + std::to_string(exp));
    }
};

inline Signature dlo_signature() {
    Signature sig;
    sig.add_predicate("lt", 2);
    sig.add_predicate("eq", 2);
    sig.add_function("0", 0);
    sig.add_function("1", 0);
    sig.add_function("f", 2);
    return sig;
}

namespace detail {
inline FormulaPtr dlo_matrix(bool guarded) {
    TermPtr x = make_var("x"), y = make_var("y"), z = make_var("z");
    TermPtr zero = make_const("0"), one = make_const("1");
    TermPtr fxy = make_app("f", {x, y});
    auto lt = [](TermPtr a, TermPtr b) { return f_atom("lt", {std::move(a), std::move(b)}); };
    auto eq = [](TermPtr a, TermPtr b) { return f_atom("eq", {std::move(a), std::move(b)}); };

    std::vector<FormulaPtr> cs;
    cs.push_back(lt(zero, one));
    cs.push_back(f_not(lt(x, x)));
    cs.push_back(f_or(f_or(lt(x, y), eq(x, y)), lt(y, x)));
    cs.push_back(f_imp(f_and(lt(x, y), lt(y, z)), lt(x, z)));
    FormulaPtr density = f_and(lt(x, fxy), lt(fxy, y));
    cs.push_back(guarded ? f_imp(lt(x, y), density) : density);
    // identity and equality axioms for eq and lt
    cs.push_back(eq(x, x));
    cs.push_back(f_imp(eq(x, y), eq(y, x)));
    cs.push_back(f_imp(f_and(eq(x, y), eq(y, z)), eq(x, z)));
    cs.push_back(f_imp(eq(x, y), f_iff(lt(x, z), lt(y, z))));
    cs.push_back(f_imp(eq(x, y), f_iff(lt(z, x), lt(z, y))));
    return f_conj(cs);
}
}  // namespace detail

// The shipped theory uses the guarded between-point axiom
// lt(x,y) -> (lt(x,f(x,y)) & lt(f(x,y),y)); the unguarded form is refutable
// at x = y together with irreflexivity and transitivity instances and is kept
// as a negative fixture.
inline UniversalSentence dlo_theory(bool guarded = true) {
    return {{"x", "y", "z"}, detail::dlo_matrix(guarded)};
}

struct DloInterpretation {
    std::vector<std::pair<TermPtr, Dyadic>> values;  // first-interpretation order

    const Dyadic* find(const TermPtr& t) const {
        for (const auto& [u, v] : values)
            if (term_equal(u, t)) return &v;
        return nullptr;
    }
    bool used(const Dyadic& v) const {
        for (const auto& [u, w] : values)
            if (w == v) return true;
        return false;
    }
};

struct DloSolution {
    std::shared_ptr<HcsInstance> instance;
    Assignment assignment;
    DloInterpretation interp;
};

namespace detail {

inline void dlo_check_term(const TermPtr& t) {
    if (t->var) return;
    if (t->args.empty()) {
        if (t->name != "0" && t->name != "1")
            throw std::invalid_argument("term outside the DLO signature: constant '" + t->name +
                                        "'");
        return;
    }
    if (t->name != "f" || t->args.size() != 2)
        throw std::invalid_argument("term outside the DLO signature: '" + t->name + "'");
    for (const auto& a : t->args) dlo_check_term(a);
}

// Innermost-first interpretation of t and its subterms.
inline void dlo_interpret(const TermPtr& t, DloInterpretation& interp, long long& next_int) {
    if (interp.find(t)) return;
    for (const auto& a : t->args) dlo_interpret(a, interp, next_int);
    Dyadic v;
    if (t->var) {
        v = Dyadic::from_int(next_int++);
    } else if (t->args.empty()) {
        v = Dyadic::from_int(t->name == "0" ? 0 : 1);
    } else {
        const Dyadic* a = interp.find(t->args[0]);
        const Dyadic* b = interp.find(t->args[1]);
        if (*a < *b) {
            v = Dyadic::mid(*a, *b);
            // stay strictly between a and b but never collide with a value
            // already in use (distinct terms must get distinct values)
            while (interp.used(v)) v = Dyadic::mid(*a, v);
        } else {
            v = *a < *b ? *b : *a;  // max(a, b) + 1, bumped past collisions
            do {
                v.num += 1ll << v.exp;
                v.normalize();
            } while (interp.used(v));
        }
    }
    interp.values.emplace_back(t, v);
}

}  // namespace detail

// Polynomial-time solver for instances of the guarded DLO theory. The
// returned assignment is checked with eval before returning.
inline DloSolution dlo_solve(const std::vector<std::vector<TermPtr>>& rows) {
    for (const auto& row : rows)
        for (const auto& t : row) detail::dlo_check_term(t);

    UniversalSentence phi = dlo_theory(true);
    auto inst = std::make_shared<HcsInstance>(build_instance(phi.matrix, phi.vars, rows));

    DloInterpretation interp;
    long long next_int = 2;
    for (const auto& atom : inst->atoms)
        for (const auto& t : atom.args) detail::dlo_interpret(t, interp, next_int);

    Assignment a;
    a.values.resize(inst->atoms.size());
    for (std::size_t i = 0; i < inst->atoms.size(); ++i) {
        const Atom& atom = inst->atoms[i];
        const Dyadic* l = interp.find(atom.args[0]);
        const Dyadic* r = interp.find(atom.args[1]);
        a.values[i] = atom.pred == "eq" ? (*l == *r) : (*l < *r);
    }
    if (!eval(*inst, a))
        throw std::logic_error("internal error: DLO interpretation fails eval");
    return {std::move(inst), std::move(a), std::move(interp)};
}

}  // namespace hcs
