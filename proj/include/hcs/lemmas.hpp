#pragma once

// The elementary theory of binary words used by the search-problem compiler:
// successor numerals S^i(0), the empty word Lam, bit-append functions f0/f1,
// the length function ell, and the bit predicate P(x, i).
//
// Axiom groups (variables x, r, s, t):
//   1. identity axioms for eq and the equality axiom for S, together with
//      identity-axiom instances at the length terms ell(x), S(ell(x)),
//      ell(f0(x)), ell(f1(x)) and the P-substitution instance at ell(x) —
//      these instances are what make the word facts below propositionally
//      derivable from instances over numerals and word prefixes alone;
//   2. 0 != S(t) and injectivity of S;
//   3. ell(Lam) = 0;
//   4./5. bit-append axioms for f0/f1 (three conjuncts each).
//
// lemma_a_check and lemma_b_check run the corresponding propositional
// entailments with the SAT engine.

#include "hcs/sat.hpp"

namespace hcs {

inline TermPtr numeral(int i) {
    TermPtr t = make_const("0");
    for (int k = 0; k < i; ++k) t = make_app("S", {t});
    return t;
}

// w = w_0 w_1 ... w_{n-1}  ->  f_{w_{n-1}}(... f_{w_1}(f_{w_0}(Lam)) ...)
inline TermPtr word_term(const std::string& w) {
    TermPtr t = make_const("Lam");
    for (char c : w) {
        if (c != '0' && c != '1') throw std::invalid_argument("word must be over {0,1}");
        t = make_app(c == '1' ? "f1" : "f0", {t});
    }
    return t;
}

// All prefixes Lam, f_{w_0}(Lam), ..., word_term(w); n+1 terms.
inline std::vector<TermPtr> word_prefixes(const std::string& w) {
    std::vector<TermPtr> out;
    out.push_back(make_const("Lam"));
    for (std::size_t i = 0; i < w.size(); ++i) out.push_back(word_term(w.substr(0, i + 1)));
    return out;
}

inline Signature word_signature(int d = 0) {
    Signature sig;
    sig.add_predicate("eq", 2);
    sig.add_predicate("P", 2);
    for (int i = 1; i <= d; ++i) sig.add_predicate("Q" + std::to_string(i), 3);
    sig.add_function("0", 0);
    sig.add_function("Lam", 0);
    sig.add_function("S", 1);
    sig.add_function("f0", 1);
    sig.add_function("f1", 1);
    sig.add_function("ell", 1);
    if (d > 0) sig.add_function("F", 1);
    return sig;
}

namespace wordax {

inline FormulaPtr eq(TermPtr a, TermPtr b) { return f_atom("eq", {std::move(a), std::move(b)}); }
inline FormulaPtr neq(TermPtr a, TermPtr b) { return f_not(eq(std::move(a), std::move(b))); }
inline TermPtr S(TermPtr a) { return make_app("S", {std::move(a)}); }
inline TermPtr ell(TermPtr a) { return make_app("ell", {std::move(a)}); }
inline TermPtr fb(int bit, TermPtr a) { return make_app(bit ? "f1" : "f0", {std::move(a)}); }
inline FormulaPtr P(TermPtr a, TermPtr b) { return f_atom("P", {std::move(a), std::move(b)}); }

// identity axioms stated with three variables r, s, t, plus S-equality
inline std::vector<FormulaPtr> identity_std() {
    TermPtr r = make_var("r"), s = make_var("s"), t = make_var("t");
    return {
        eq(r, r),
        f_imp(eq(r, s), eq(s, r)),
        f_imp(f_and(eq(r, s), eq(s, t)), eq(r, t)),
        f_imp(eq(s, t), eq(S(s), S(t))),
    };
}

// identity-axiom instances at the length terms of x
inline std::vector<FormulaPtr> identity_word() {
    TermPtr x = make_var("x"), s = make_var("s"), t = make_var("t");
    std::vector<FormulaPtr> out;
    out.push_back(f_imp(eq(ell(x), s), eq(S(ell(x)), S(s))));
    for (int b : {0, 1})
        out.push_back(f_imp(f_and(eq(ell(fb(b, x)), S(ell(x))), eq(S(ell(x)), S(s))),
                            eq(ell(fb(b, x)), S(s))));
    out.push_back(f_imp(f_and(eq(s, ell(x)), eq(ell(x), t)), eq(s, t)));
    out.push_back(f_imp(f_and(eq(ell(x), s), eq(ell(x), t)), eq(s, t)));
    for (int b : {0, 1})
        out.push_back(f_imp(eq(ell(x), s), f_iff(P(fb(b, x), ell(x)), P(fb(b, x), s))));
    return out;
}

inline std::vector<FormulaPtr> successor() {
    TermPtr s = make_var("s"), t = make_var("t");
    return {
        neq(make_const("0"), S(t)),
        f_imp(neq(s, t), neq(S(s), S(t))),
    };
}

inline FormulaPtr length_empty() { return eq(ell(make_const("Lam")), numeral(0)); }

// three conjuncts, bit = 0 or 1
inline FormulaPtr word_build(int bit) {
    TermPtr x = make_var("x"), s = make_var("s");
    FormulaPtr bit_lit = P(fb(bit, x), ell(x));
    if (!bit) bit_lit = f_not(bit_lit);
    return f_and(f_and(eq(ell(fb(bit, x)), S(ell(x))), bit_lit),
                 f_imp(neq(s, ell(x)), f_iff(P(fb(bit, x), s), P(x, s))));
}

// groups 1-2 over r, s, t only (what Lemma lA instantiates)
inline FormulaPtr lemma_a_matrix() {
    std::vector<FormulaPtr> cs = identity_std();
    for (auto& f : successor()) cs.push_back(f);
    return f_conj(cs);
}

// groups 1-5 over x, r, s, t (what Lemma lB instantiates)
inline FormulaPtr lemma_b_matrix() {
    std::vector<FormulaPtr> cs = identity_std();
    for (auto& f : identity_word()) cs.push_back(f);
    for (auto& f : successor()) cs.push_back(f);
    cs.push_back(length_empty());
    cs.push_back(word_build(0));
    cs.push_back(word_build(1));
    return f_conj(cs);
}

}  // namespace wordax

// Instances of groups 1-2 over all triples of numerals S^k(0), k <= n,
// entail S^i(0) != S^j(0) for all i != j <= n.
inline bool lemma_a_check(int n, const SolveOptions& opts = {}) {
    if (n < 0) throw std::invalid_argument("lemma_a_check: n must be >= 0");
    std::vector<TermPtr> nums;
    for (int i = 0; i <= n; ++i) nums.push_back(numeral(i));
    std::vector<std::vector<TermPtr>> rows;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
            for (int c = 0; c <= n; ++c) rows.push_back({nums[a], nums[b], nums[c]});
    HcsInstance inst = build_instance(wordax::lemma_a_matrix(), {"r", "s", "t"}, rows);

    std::vector<GroundLiteral> targets;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (i != j) targets.push_back({{"eq", {nums[i], nums[j]}}, false});
    return entails(inst, targets, opts);
}

// Instances of groups 1-5 over the numerals S^k(0), k <= n, and the prefixes
// of w entail the bit literals (P(tau, S^i(0)) iff w_i = 1), the length
// inequalities ell(tau) != S^i(0) for i < n, and ell(tau) = S^n(0).
inline bool lemma_b_check(const std::string& w, const SolveOptions& opts = {}) {
    int n = static_cast<int>(w.size());
    if (n < 1) throw std::invalid_argument("lemma_b_check: word must be nonempty");
    std::vector<TermPtr> nums;
    for (int i = 0; i <= n; ++i) nums.push_back(numeral(i));
    std::vector<TermPtr> prefixes = word_prefixes(w);

    // rows (x, r, s, t) = (prefix, S^k, S^j, S^k): the (s, t) pairs drive the
    // successor axioms and the trans/subst instances, the (r, s) pairs drive
    // symmetry, and x ranges over the prefixes.
    std::vector<std::vector<TermPtr>> rows;
    for (const auto& p : prefixes)
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k) rows.push_back({p, nums[k], nums[j], nums[k]});
    HcsInstance inst = build_instance(wordax::lemma_b_matrix(), {"x", "r", "s", "t"}, rows);

    TermPtr tau = prefixes.back();
    TermPtr ltau = make_app("ell", {tau});
    std::vector<GroundLiteral> targets;
    for (int i = 0; i < n; ++i)
        targets.push_back({{"P", {tau, nums[i]}}, w[i] == '1'});
    for (int i = 0; i < n; ++i)
        targets.push_back({{"eq", {ltau, nums[i]}}, false});
    targets.push_back({{"eq", {ltau, nums[n]}}, true});
    return entails(inst, targets, opts);
}

}  // namespace hcs
