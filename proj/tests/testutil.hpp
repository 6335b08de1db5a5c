#pragma once

// Shared fixtures and seeded random generators for the test suites.

#include <random>
#include <string>
#include <vector>

#include "hcs/formula.hpp"
#include "hcs/sat.hpp"

namespace testutil {

using namespace hcs;

// Exhaustive truth-table check over an instance's atom table (independent of
// the CNF path): true iff some atom assignment satisfies the instance.
inline bool instance_satisfiable_by_enumeration(const HcsInstance& inst) {
    std::size_t n = inst.atoms.size();
    if (n > 24) throw std::invalid_argument("enumeration cap exceeded");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Assignment a;
        a.values.resize(n);
        for (std::size_t i = 0; i < n; ++i) a.values[i] = (mask >> i) & 1;
        if (eval(inst, a)) return true;
    }
    return false;
}

// Random CNF over at most max_vars variables and max_clauses clauses.
inline Cnf random_cnf(std::mt19937& rng, int max_vars, int max_clauses) {
    std::uniform_int_distribution<int> nv(1, max_vars);
    int vars = nv(rng);
    std::uniform_int_distribution<int> nc(1, max_clauses);
    int clauses = nc(rng);
    std::uniform_int_distribution<int> len(1, 5);
    std::uniform_int_distribution<int> pick(1, vars);
    Cnf cnf;
    cnf.num_vars = vars;
    for (int i = 0; i < clauses; ++i) {
        std::vector<std::int32_t> c;
        int k = len(rng);
        for (int j = 0; j < k; ++j) {
            int v = pick(rng);
            c.push_back((rng() & 1) ? v : -v);
        }
        cnf.add_clause(c);
    }
    return cnf;
}

inline std::string random_word(std::mt19937& rng, int max_len, int min_len = 1) {
    std::uniform_int_distribution<int> len(min_len, max_len);
    int n = len(rng);
    std::string w;
    for (int i = 0; i < n; ++i) w += (rng() & 1) ? '1' : '0';
    return w;
}

// Random DLO term over {0, 1, f/2} and variables a..e, depth <= max_depth.
inline TermPtr random_dlo_term(std::mt19937& rng, int max_depth) {
    std::uniform_int_distribution<int> kind(0, max_depth > 0 ? 3 : 2);
    switch (kind(rng)) {
        case 0: return make_const((rng() & 1) ? "1" : "0");
        case 1:
        case 2: {
            std::uniform_int_distribution<int> v(0, 4);
            return make_var(std::string(1, static_cast<char>('a' + v(rng))));
        }
        default:
            return make_app("f", {random_dlo_term(rng, max_depth - 1),
                                  random_dlo_term(rng, max_depth - 1)});
    }
}

inline std::vector<std::vector<TermPtr>> random_dlo_rows(std::mt19937& rng, int max_rows,
                                                         int max_depth) {
    std::uniform_int_distribution<int> nr(1, max_rows);
    int rows = nr(rng);
    std::vector<std::vector<TermPtr>> out;
    for (int i = 0; i < rows; ++i)
        out.push_back({random_dlo_term(rng, max_depth), random_dlo_term(rng, max_depth),
                       random_dlo_term(rng, max_depth)});
    return out;
}

// Random prenex sentence over a small fixed signature, for round-trip fuzzing.
struct SentenceGen {
    std::mt19937 rng;
    Signature sig;

    explicit SentenceGen(std::uint32_t seed) : rng(seed) {
        sig.add_predicate("P", 1);
        sig.add_predicate("R", 2);
        sig.add_predicate("eq", 2);
        sig.add_predicate("lt", 2);
        sig.add_function("0", 0);
        sig.add_function("g", 1);
        sig.add_function("h", 2);
    }

    TermPtr term(const std::vector<std::string>& vars, int depth) {
        std::uniform_int_distribution<int> kind(0, depth > 0 ? 3 : 1);
        switch (kind(rng)) {
            case 0: return make_const("0");
            case 1: {
                std::uniform_int_distribution<int> v(0, static_cast<int>(vars.size()) - 1);
                return make_var(vars[v(rng)]);
            }
            case 2: return make_app("g", {term(vars, depth - 1)});
            default: return make_app("h", {term(vars, depth - 1), term(vars, depth - 1)});
        }
    }

    FormulaPtr formula(const std::vector<std::string>& vars, int depth) {
        std::uniform_int_distribution<int> kind(0, depth > 0 ? 6 : 1);
        switch (kind(rng)) {
            case 0: return f_atom("P", {term(vars, 2)});
            case 1: {
                std::uniform_int_distribution<int> p(0, 2);
                const char* preds[] = {"R", "eq", "lt"};
                return f_atom(preds[p(rng)], {term(vars, 2), term(vars, 2)});
            }
            case 2: return f_not(formula(vars, depth - 1));
            case 3: return f_and(formula(vars, depth - 1), formula(vars, depth - 1));
            case 4: return f_or(formula(vars, depth - 1), formula(vars, depth - 1));
            case 5: return f_imp(formula(vars, depth - 1), formula(vars, depth - 1));
            default: return f_iff(formula(vars, depth - 1), formula(vars, depth - 1));
        }
    }

    PrenexSentence sentence() {
        std::uniform_int_distribution<int> nv(1, 3);
        int n = nv(rng);
        std::vector<std::string> vars;
        PrenexSentence s;
        for (int i = 0; i < n; ++i) {
            std::string v(1, static_cast<char>('x' + i));
            vars.push_back(v);
            s.prefix.emplace_back((rng() & 1) ? Quant::Forall : Quant::Exists, v);
        }
        s.matrix = formula(vars, 3);
        return s;
    }
};

}  // namespace testutil
