#pragma once

// Structure-preserving CNF. Atom variables come first (var i+1 <-> atom i);
// auxiliary Tseitin variables follow, one per distinct non-atom subformula
// with full biconditional clauses. Top-level conjunction spines are flattened
// into unit assertions instead of gates. DIMACS import/export with a sidecar
// atom-map ("<var> <atom>") lives here too.

#include <istream>
#include <ostream>

#include "hcs/ground.hpp"

namespace hcs {

struct Cnf {
    int num_vars = 0;
    int num_atom_vars = 0;
    std::vector<std::int32_t> lits;     // flattened clause literals
    std::vector<std::uint32_t> starts;  // clause i = lits[starts[i]..starts[i+1])

    Cnf() { starts.push_back(0); }

    std::size_t num_clauses() const { return starts.size() - 1; }

    void add_clause(std::initializer_list<std::int32_t> c) {
        for (auto l : c) lits.push_back(l);
        starts.push_back(static_cast<std::uint32_t>(lits.size()));
    }
    void add_clause(const std::vector<std::int32_t>& c) {
        lits.insert(lits.end(), c.begin(), c.end());
        starts.push_back(static_cast<std::uint32_t>(lits.size()));
    }
    std::pair<const std::int32_t*, const std::int32_t*> clause(std::size_t i) const {
        return {lits.data() + starts[i], lits.data() + starts[i + 1]};
    }
};

namespace detail {

// Collects the leaves of the AND-spine rooted at each id (iteratively; spines
// over large instances are deep).
inline void collect_conjuncts(const PropPool& pool, PropId root, std::vector<PropId>& out,
                              std::vector<std::uint8_t>& seen) {
    std::vector<PropId> stack{root};
    while (!stack.empty()) {
        PropId id = stack.back();
        stack.pop_back();
        const auto& n = pool.nodes[id];
        if (n.op == PropOp::And) {
            stack.push_back(n.b);
            stack.push_back(n.a);
        } else {
            if (!seen[id]) {
                seen[id] = 1;
                out.push_back(id);
            }
        }
    }
}

}  // namespace detail

// Equisatisfiable CNF of the grounded conjunction. Any model restricted to
// atom variables satisfies the instance, and any satisfying assignment of the
// instance extends to a model. Top-level conjuncts are asserted as units; only
// nodes below them become gates.
inline Cnf to_cnf(const HcsInstance& inst) {
    Cnf cnf;
    cnf.num_atom_vars = static_cast<int>(inst.atoms.size());
    cnf.num_vars = cnf.num_atom_vars;

    const PropPool& pool = inst.pool;
    std::vector<PropId> conjuncts;
    std::vector<std::uint8_t> seen(pool.size(), 0);
    for (PropId r : inst.row_props) detail::collect_conjuncts(pool, r, conjuncts, seen);

    std::vector<std::uint8_t> needed(pool.size(), 0);
    std::vector<PropId> stack(conjuncts);
    while (!stack.empty()) {
        PropId id = stack.back();
        stack.pop_back();
        if (needed[id]) continue;
        needed[id] = 1;
        const auto& n = pool.nodes[id];
        if (n.op != PropOp::Atom) {
            stack.push_back(n.a);
            if (n.op != PropOp::Not) stack.push_back(n.b);
        }
    }

    std::vector<std::int32_t> lit_of(pool.size(), 0);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (!needed[i]) continue;
        const auto& n = pool.nodes[i];
        switch (n.op) {
            case PropOp::Atom: lit_of[i] = n.a + 1; break;
            case PropOp::Not: lit_of[i] = -lit_of[n.a]; break;
            case PropOp::And: {
                std::int32_t g = ++cnf.num_vars, a = lit_of[n.a], b = lit_of[n.b];
                cnf.add_clause({-g, a});
                cnf.add_clause({-g, b});
                cnf.add_clause({g, -a, -b});
                lit_of[i] = g;
                break;
            }
            case PropOp::Or: {
                std::int32_t g = ++cnf.num_vars, a = lit_of[n.a], b = lit_of[n.b];
                cnf.add_clause({-g, a, b});
                cnf.add_clause({g, -a});
                cnf.add_clause({g, -b});
                lit_of[i] = g;
                break;
            }
            case PropOp::Imp: {
                std::int32_t g = ++cnf.num_vars, a = lit_of[n.a], b = lit_of[n.b];
                cnf.add_clause({-g, -a, b});
                cnf.add_clause({g, a});
                cnf.add_clause({g, -b});
                lit_of[i] = g;
                break;
            }
            case PropOp::Iff: {
                std::int32_t g = ++cnf.num_vars, a = lit_of[n.a], b = lit_of[n.b];
                cnf.add_clause({-g, -a, b});
                cnf.add_clause({-g, a, -b});
                cnf.add_clause({g, a, b});
                cnf.add_clause({g, -a, -b});
                lit_of[i] = g;
                break;
            }
        }
    }
    for (PropId c : conjuncts) cnf.add_clause({lit_of[c]});
    return cnf;
}

// CNF asserting the instance AND the negation of the target literals'
// conjunction; UNSAT means the targets are propositional consequences.
// Targets over atoms absent from the table get fresh variables.
inline Cnf to_cnf_with_negated_literals(const HcsInstance& inst,
                                        const std::vector<std::pair<Atom, bool>>& targets) {
    Cnf cnf = to_cnf(inst);
    std::vector<std::int32_t> clause;
    std::unordered_map<std::string, std::int32_t> extra;
    for (const auto& [atom, positive] : targets) {
        int idx = inst.find_atom(atom.pred, atom.args);
        std::int32_t var;
        if (idx >= 0) {
            var = idx + 1;
        } else {
            std::string key = print_atom(atom);
            auto it = extra.find(key);
            if (it == extra.end()) it = extra.emplace(key, ++cnf.num_vars).first;
            var = it->second;
        }
        clause.push_back(positive ? -var : var);
    }
    cnf.add_clause(clause);
    return cnf;
}

inline void write_dimacs(std::ostream& out, const Cnf& cnf) {
    out << "p cnf " << cnf.num_vars << " " << cnf.num_clauses() << "\n";
    for (std::size_t i = 0; i < cnf.num_clauses(); ++i) {
        auto [b, e] = cnf.clause(i);
        for (const std::int32_t* p = b; p != e; ++p) out << *p << " ";
        out << "0\n";
    }
}

// Sidecar map: one "<var> <atom-printed-form>" line per atom variable.
inline void write_atom_map(std::ostream& out, const HcsInstance& inst) {
    for (std::size_t i = 0; i < inst.atoms.size(); ++i)
        out << (i + 1) << " " << print_atom(inst.atoms[i]) << "\n";
}

inline Cnf read_dimacs(std::istream& in) {
    Cnf cnf;
    std::string tok;
    int nv = 0;
    long nc = 0;
    while (in >> tok) {
        if (tok == "c") {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (tok == "p") {
            in >> tok >> nv >> nc;
            if (tok != "cnf") throw std::runtime_error("bad DIMACS header");
            cnf.num_vars = nv;
            break;
        }
        throw std::runtime_error("bad DIMACS preamble token '" + tok + "'");
    }
    std::vector<std::int32_t> clause;
    std::int32_t l;
    while (in >> l) {
        if (l == 0) {
            cnf.add_clause(clause);
            clause.clear();
        } else {
            clause.push_back(l);
        }
    }
    if (!clause.empty()) throw std::runtime_error("DIMACS: unterminated clause");
    if (static_cast<long>(cnf.num_clauses()) != nc)
        throw std::runtime_error("DIMACS: clause count mismatch");
    return cnf;
}

}  // namespace hcs
