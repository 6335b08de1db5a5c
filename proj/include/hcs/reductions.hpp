#pragma once

// Reductions among HCS problems:
//
//   - verify_herbrand_implication: checks that the disjunction
//     OR_i (phi(tau_i1..tau_ik) -> psi(c_1..c_l)) is a propositional
//     tautology, for fresh constants c_j standing in for psi's variables.
//   - reduce_universal: provability implies reducibility for universal
//     consequences. Builds the phi-instance with rows
//     tau*_pij = tau_ij[sigma_p1/c_1 ... sigma_pl/c_l], renames maximal
//     subterms outside phi's language to canonical variables
//     v_<printed-term>, and returns a pullback that transports any
//     satisfying assignment onto the psi-instance.
//   - reduce_constant_intro: fresh-constant introduction. Queries the oracle
//     on F AND F_1 .. F_n (F_i = F with c-bar replaced by sigma_i-bar),
//     extends the answer by false on the alpha atoms it misses, and either
//     returns that directly (Case 1) or transplants the values of
//     beta(sigma_i-bar) onto beta(c-bar) for the least i with
//     alpha(sigma_i-bar) satisfied (Case 2).
//   - reduce_existential: composes both, two oracle queries in total.
//
// Oracles are injected; each query is counted in an OracleLog.

#include <set>

#include "hcs/hcs_solve.hpp"
#include "hcs/herbrand.hpp"

namespace hcs {

// tau[i][j]: term for variable j of phi in disjunct i.
struct HerbrandWitness {
    std::vector<std::vector<TermPtr>> tau;
};

struct OracleLog {
    int calls = 0;
    std::vector<std::string> notes;
    void record(std::string what) {
        ++calls;
        notes.push_back(std::move(what));
    }
};

// An HCS(Phi) oracle: returns an assignment satisfying the instance, or
// throws HerbrandRefutation.
using HcsOracle = std::function<Assignment(const HcsInstance&)>;

inline HcsOracle sat_oracle(SolveOptions opts = {}) {
    return [opts](const HcsInstance& inst) -> Assignment {
        Cnf cnf = to_cnf(inst);
        SatResult res = solve(cnf, opts);
        if (!res.sat) throw HerbrandRefutation(std::make_shared<HcsInstance>(inst));
        Assignment a = restrict_model(inst, res);
        if (!eval(inst, a)) throw std::logic_error("oracle model fails eval");
        return a;
    };
}

namespace detail {

inline void collect_function_names(const TermPtr& t, std::set<std::string>& out) {
    if (t->var) return;
    out.insert(t->name);
    for (const auto& a : t->args) collect_function_names(a, out);
}

inline void collect_function_names(const FormulaPtr& f, std::set<std::string>& out) {
    if (f->kind == Conn::Atom) {
        for (const auto& t : f->args) collect_function_names(t, out);
        return;
    }
    collect_function_names(f->lhs, out);
    if (f->rhs) collect_function_names(f->rhs, out);
}

// Replaces every maximal subterm whose head symbol is outside `lang` by the
// variable v_<printed-term>; the same term always maps to the same variable.
inline TermPtr rename_foreign(const TermPtr& t, const std::set<std::string>& lang) {
    if (t->var) return t;
    if (!lang.count(t->name)) return make_var("v_" + print_term(t));
    if (t->args.empty()) return t;
    bool changed = false;
    std::vector<TermPtr> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args) {
        TermPtr s = rename_foreign(a, lang);
        changed |= s.get() != a.get();
        args.push_back(std::move(s));
    }
    return changed ? make_app(t->name, std::move(args)) : t;
}

inline std::optional<bool> lookup_atom(const HcsInstance& inst, const Assignment& a,
                                       const Atom& atom) {
    int idx = inst.find_atom(atom.pred, atom.args);
    if (idx < 0) return std::nullopt;
    return a.get(idx);
}

inline bool eval_ground(const FormulaPtr& f, const std::function<bool(const Atom&)>& value) {
    switch (f->kind) {
        case Conn::Atom: return value({f->pred, f->args});
        case Conn::Not: return !eval_ground(f->lhs, value);
        case Conn::And: return eval_ground(f->lhs, value) && eval_ground(f->rhs, value);
        case Conn::Or: return eval_ground(f->lhs, value) || eval_ground(f->rhs, value);
        case Conn::Imp: return !eval_ground(f->lhs, value) || eval_ground(f->rhs, value);
        case Conn::Iff: return eval_ground(f->lhs, value) == eval_ground(f->rhs, value);
    }
    return false;
}

inline std::vector<std::string> default_const_names(std::size_t l, const std::string& prefix) {
    std::vector<std::string> names;
    for (std::size_t j = 1; j <= l; ++j) names.push_back(prefix + std::to_string(j));
    return names;
}

inline SubstMap tuple_subst(const std::vector<std::string>& names,
                            const std::vector<TermPtr>& terms) {
    if (names.size() != terms.size())
        throw std::invalid_argument("tuple arity mismatch: expected " +
                                    std::to_string(names.size()) + " terms, got " +
                                    std::to_string(terms.size()));
    SubstMap m;
    for (std::size_t j = 0; j < names.size(); ++j) m[names[j]] = terms[j];
    return m;
}

}  // namespace detail

// The constants standing in for psi's variables default to c1..cl.
inline bool verify_herbrand_implication(const UniversalSentence& phi,
                                        const UniversalSentence& psi, const HerbrandWitness& wit,
                                        std::vector<std::string> const_names = {},
                                        const SolveOptions& opts = {}) {
    if (const_names.empty()) const_names = detail::default_const_names(psi.vars.size(), "c");
    SubstMap cmap;
    for (std::size_t j = 0; j < psi.vars.size(); ++j)
        cmap[psi.vars[j]] = make_const(const_names[j]);
    FormulaPtr psi_c = substitute(psi.matrix, cmap);

    if (wit.tau.empty()) throw std::invalid_argument("witness must have at least one disjunct");
    FormulaPtr disj;
    for (const auto& row : wit.tau) {
        FormulaPtr inst = substitute(phi.matrix, detail::tuple_subst(phi.vars, row));
        FormulaPtr arm = f_imp(inst, psi_c);
        disj = disj ? f_or(disj, arm) : arm;
    }
    HcsInstance neg = build_ground_instance({f_not(disj)});
    return !solve(to_cnf(neg), opts).sat;
}

struct UniversalReduction {
    std::shared_ptr<HcsInstance> phi_instance;
    std::shared_ptr<HcsInstance> psi_instance;
    // transports a satisfying assignment of phi_instance onto psi_instance
    std::function<Assignment(const Assignment&)> pullback;
};

inline UniversalReduction reduce_universal(const UniversalSentence& phi,
                                           const UniversalSentence& psi,
                                           const HerbrandWitness& wit,
                                           const std::vector<std::vector<TermPtr>>& psi_rows,
                                           std::vector<std::string> const_names = {},
                                           const SolveOptions& opts = {}) {
    if (const_names.empty()) const_names = detail::default_const_names(psi.vars.size(), "c");
    if (!verify_herbrand_implication(phi, psi, wit, const_names, opts))
        throw std::invalid_argument("witness not a tautology");

    auto lang = std::make_shared<std::set<std::string>>();
    detail::collect_function_names(phi.matrix, *lang);
    for (const auto& row : wit.tau)
        for (const auto& t : row) detail::collect_function_names(t, *lang);
    // constants standing for psi's variables are read as variables downstream
    for (const auto& c : const_names) lang->erase(c);

    std::vector<std::vector<TermPtr>> phi_rows;
    for (const auto& srow : psi_rows) {
        SubstMap smap = detail::tuple_subst(const_names, srow);
        for (const auto& trow : wit.tau) {
            if (trow.size() != phi.vars.size())
                throw std::invalid_argument("witness row arity mismatch");
            std::vector<TermPtr> out;
            out.reserve(trow.size());
            for (const auto& t : trow)
                out.push_back(detail::rename_foreign(substitute(t, smap), *lang));
            phi_rows.push_back(std::move(out));
        }
    }

    UniversalReduction red;
    red.phi_instance =
        std::make_shared<HcsInstance>(build_instance(phi.matrix, phi.vars, phi_rows));
    red.psi_instance =
        std::make_shared<HcsInstance>(build_instance(psi.matrix, psi.vars, psi_rows));

    std::shared_ptr<HcsInstance> pi = red.phi_instance;
    std::shared_ptr<HcsInstance> qi = red.psi_instance;
    red.pullback = [pi, qi, lang](const Assignment& a) {
        Assignment out;
        out.values.resize(qi->atoms.size());
        for (std::size_t i = 0; i < qi->atoms.size(); ++i) {
            std::vector<TermPtr> renamed;
            renamed.reserve(qi->atoms[i].args.size());
            for (const auto& t : qi->atoms[i].args)
                renamed.push_back(detail::rename_foreign(t, *lang));
            auto v = detail::lookup_atom(*pi, a, {qi->atoms[i].pred, std::move(renamed)});
            out.values[i] = v.value_or(false);
        }
        return out;
    };
    return red;
}

// One oracle query, then the pullback; the result is checked against the
// psi-instance.
inline Assignment reduce_universal_solve(const UniversalReduction& red, const HcsOracle& oracle,
                                         OracleLog& log) {
    log.record("HCS(Phi) query: " + std::to_string(red.phi_instance->rows.size()) + " rows");
    Assignment a = oracle(*red.phi_instance);
    Assignment out = red.pullback(a);
    if (!eval(*red.psi_instance, out))
        throw std::logic_error("pullback assignment fails the psi-instance");
    return out;
}

struct ConstantIntroResult {
    std::shared_ptr<HcsInstance> instance;  // the formula-(2) instance
    Assignment assignment;
    bool case2 = false;
    int case2_index = -1;  // least i with alpha(sigma_i) satisfied, 0-based
};

// Lemma-4.2 procedure. alpha has free variables alpha_vars; const_names are
// constants absent from phi and alpha; tau_rows/sigma_rows are the instance
// of HCS(Phi and forall y (alpha(y) -> alpha(c))).
inline ConstantIntroResult reduce_constant_intro(
    const UniversalSentence& phi, const FormulaPtr& alpha,
    const std::vector<std::string>& alpha_vars, const std::vector<std::string>& const_names,
    const std::vector<std::vector<TermPtr>>& tau_rows,
    const std::vector<std::vector<TermPtr>>& sigma_rows, const HcsOracle& oracle,
    OracleLog& log) {
    if (tau_rows.size() != sigma_rows.size())
        throw std::invalid_argument("tau and sigma row counts differ");
    if (alpha_vars.size() != const_names.size())
        throw std::invalid_argument("alpha variable/constant count mismatch");
    {
        std::set<std::string> used;
        detail::collect_function_names(phi.matrix, used);
        detail::collect_function_names(alpha, used);
        for (const auto& c : const_names)
            if (used.count(c))
                throw std::invalid_argument("constant '" + c + "' occurs in phi or alpha");
    }

    SubstMap cmap;
    for (std::size_t j = 0; j < alpha_vars.size(); ++j)
        cmap[alpha_vars[j]] = make_const(const_names[j]);
    FormulaPtr alpha_c = substitute(alpha, cmap);

    std::size_t n = tau_rows.size();
    std::vector<FormulaPtr> f_parts;  // F = AND_i phi(tau_i)
    for (const auto& row : tau_rows)
        f_parts.push_back(substitute(phi.matrix, detail::tuple_subst(phi.vars, row)));

    // query = F and F_1 .. F_n, F_i = F[c |-> sigma_i]
    std::vector<FormulaPtr> query_parts = f_parts;
    for (std::size_t i = 0; i < n; ++i) {
        SubstMap si = detail::tuple_subst(const_names, sigma_rows[i]);
        for (const auto& part : f_parts) query_parts.push_back(substitute(part, si));
    }
    auto query = std::make_shared<HcsInstance>(build_ground_instance(query_parts));
    log.record("HCS(Phi) query: " + std::to_string(query->rows.size()) + " conjuncts");
    Assignment a = oracle(*query);

    // instance of formula (2)
    std::vector<FormulaPtr> inst2_parts;
    std::vector<FormulaPtr> alpha_sigma(n);
    for (std::size_t i = 0; i < n; ++i) {
        alpha_sigma[i] = substitute(alpha, detail::tuple_subst(alpha_vars, sigma_rows[i]));
        inst2_parts.push_back(f_and(f_parts[i], f_imp(alpha_sigma[i], alpha_c)));
    }
    auto inst2 = std::make_shared<HcsInstance>(build_ground_instance(inst2_parts));

    // A': the oracle assignment extended by false where undefined
    Assignment a_prime;
    a_prime.values.resize(inst2->atoms.size());
    for (std::size_t i = 0; i < inst2->atoms.size(); ++i)
        a_prime.values[i] = detail::lookup_atom(*query, a, inst2->atoms[i]).value_or(false);

    if (eval(*inst2, a_prime)) return {inst2, std::move(a_prime), false, -1};  // Case 1

    // Case 2: least i with alpha(sigma_i) satisfied by A'
    auto value_under = [&](const HcsInstance& inst, const Assignment& asg) {
        return [&inst, &asg](const Atom& at) {
            return detail::lookup_atom(inst, asg, at).value_or(false);
        };
    };
    int pick = -1;
    for (std::size_t i = 0; i < n && pick < 0; ++i)
        if (detail::eval_ground(alpha_sigma[i], value_under(*inst2, a_prime)))
            pick = static_cast<int>(i);
    if (pick < 0)
        throw std::logic_error("constant introduction: neither case applies");

    SubstMap si = detail::tuple_subst(const_names, sigma_rows[pick]);
    Assignment a_second;
    a_second.values.resize(inst2->atoms.size());
    for (std::size_t i = 0; i < inst2->atoms.size(); ++i) {
        const Atom& at = inst2->atoms[i];
        std::vector<TermPtr> args;
        args.reserve(at.args.size());
        for (const auto& t : at.args) args.push_back(substitute(t, si));
        Atom subst_atom{at.pred, std::move(args)};
        auto v = detail::lookup_atom(*query, a, subst_atom);
        if (!v) v = detail::lookup_atom(*inst2, a_prime, subst_atom);
        a_second.values[i] = v.value_or(false);
    }
    if (!eval(*inst2, a_second))
        throw std::logic_error("constant introduction: repaired assignment fails eval");
    return {inst2, std::move(a_second), true, pick};
}

// Best-effort iterative-deepening search for a Herbrand witness: candidate
// tuples are drawn from the Herbrand universe of `sig` (which should carry
// phi's and psi's symbols plus the c-constants) at increasing depth, trying
// single disjuncts first, then pairs. Returns nullopt when the budget or the
// depth cap runs out.
inline std::optional<HerbrandWitness> search_witness(
    const UniversalSentence& phi, const UniversalSentence& psi, const Signature& sig,
    int max_depth, std::vector<std::string> const_names = {}, std::size_t budget = 20000) {
    if (const_names.empty()) const_names = detail::default_const_names(psi.vars.size(), "c");
    Signature ext = sig;
    for (const auto& c : const_names)
        if (!ext.has_function(c)) ext.add_function(c, 0);

    std::size_t tried = 0;
    for (int depth = 0; depth <= max_depth; ++depth) {
        std::vector<TermPtr> terms = herbrand_terms(ext, depth);
        std::vector<std::vector<TermPtr>> tuples{{}};
        for (std::size_t j = 0; j < phi.vars.size(); ++j) {
            std::vector<std::vector<TermPtr>> next;
            for (const auto& base : tuples)
                for (const auto& t : terms) {
                    auto tup = base;
                    tup.push_back(t);
                    next.push_back(std::move(tup));
                }
            tuples = std::move(next);
        }
        for (const auto& tup : tuples) {
            if (++tried > budget) return std::nullopt;
            HerbrandWitness w{{tup}};
            if (verify_herbrand_implication(phi, psi, w, const_names)) return w;
        }
        for (std::size_t i = 0; i < tuples.size(); ++i)
            for (std::size_t j = i + 1; j < tuples.size(); ++j) {
                if (++tried > budget) return std::nullopt;
                HerbrandWitness w{{tuples[i], tuples[j]}};
                if (verify_herbrand_implication(phi, psi, w, const_names)) return w;
            }
    }
    return std::nullopt;
}

struct ExistentialResult {
    std::shared_ptr<HcsInstance> psi_instance;
    Assignment assignment;
};

// Phi |- exists y-bar alpha(y-bar), evidenced by a witness for
// Phi' := Phi and forall y (alpha(y) -> alpha(c))  |-  Psi, where
// Psi := forall x-bar (phi(x-bar) and alpha(c-bar)). The reduction composes
// reduce_universal with reduce_constant_intro; the herbrandization constants
// for Psi's variables are named b1..bk to keep them apart from alpha's c-bar.
inline ExistentialResult reduce_existential(const UniversalSentence& phi, const FormulaPtr& alpha,
                                            const std::vector<std::string>& alpha_vars,
                                            const HerbrandWitness& wit,
                                            const std::vector<std::vector<TermPtr>>& psi_rows,
                                            const HcsOracle& oracle, OracleLog& log) {
    std::vector<std::string> c_names =
        detail::default_const_names(alpha_vars.size(), "c");
    SubstMap cmap;
    for (std::size_t j = 0; j < alpha_vars.size(); ++j)
        cmap[alpha_vars[j]] = make_const(c_names[j]);
    FormulaPtr alpha_c = substitute(alpha, cmap);

    for (const auto& v : alpha_vars)
        if (std::find(phi.vars.begin(), phi.vars.end(), v) != phi.vars.end())
            throw std::invalid_argument("alpha variable '" + v + "' collides with phi's");

    UniversalSentence psi{phi.vars, f_and(phi.matrix, alpha_c)};
    UniversalSentence phi_prime;
    phi_prime.vars = phi.vars;
    for (const auto& v : alpha_vars) phi_prime.vars.push_back(v);
    phi_prime.matrix = f_and(phi.matrix, f_imp(alpha, alpha_c));

    UniversalReduction red = reduce_universal(
        phi_prime, psi, wit, psi_rows, detail::default_const_names(psi.vars.size(), "b"));

    // Solve the Phi'-instance with the Lemma-4.2 procedure (one logged query
    // to it, one inside it to the base oracle).
    log.record("HCS(Phi') query: " + std::to_string(red.phi_instance->rows.size()) + " rows");
    std::size_t k = phi.vars.size();
    std::vector<std::vector<TermPtr>> tau_rows, sigma_rows;
    for (const auto& row : red.phi_instance->rows) {
        tau_rows.emplace_back(row.begin(), row.begin() + k);
        sigma_rows.emplace_back(row.begin() + k, row.end());
    }
    ConstantIntroResult ci = reduce_constant_intro(phi, alpha, alpha_vars, c_names, tau_rows,
                                                   sigma_rows, oracle, log);

    // carry the (2)-assignment over to the Phi'-instance's atom table
    Assignment a_phi_prime;
    a_phi_prime.values.resize(red.phi_instance->atoms.size());
    for (std::size_t i = 0; i < red.phi_instance->atoms.size(); ++i)
        a_phi_prime.values[i] =
            detail::lookup_atom(*ci.instance, ci.assignment, red.phi_instance->atoms[i])
                .value_or(false);
    if (!eval(*red.phi_instance, a_phi_prime))
        throw std::logic_error("constant-introduction assignment fails the Phi'-instance");

    Assignment out = red.pullback(a_phi_prime);
    if (!eval(*red.psi_instance, out))
        throw std::logic_error("pullback assignment fails the psi-instance");
    return {red.psi_instance, std::move(out)};
}

}  // namespace hcs
