#pragma once

// HCS instances: a matrix with k free variables grounded over a list of
// k-tuples of terms. Ground formulas live in a hash-consed DAG pool owned by
// the instance, so syntactically identical subformulas (and atoms) across
// rows share one node; the atom table is ordered by first occurrence.

#include <unordered_map>

#include "hcs/subst.hpp"

namespace hcs {

using PropId = std::int32_t;

enum class PropOp : std::uint8_t { Atom, Not, And, Or, Imp, Iff };

struct PropPool {
    struct Node {
        PropOp op;
        std::int32_t a = -1;
        std::int32_t b = -1;
    };
    std::vector<Node> nodes;
    std::unordered_map<std::uint64_t, PropId> index;

    static std::uint64_t key(PropOp op, std::int32_t a, std::int32_t b) {
        // exact packing; ids stay far below 2^30
        return (static_cast<std::uint64_t>(op) << 60) |
               (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a) & 0x3FFFFFFFu) << 30) |
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(b) & 0x3FFFFFFFu);
    }

    PropId mk(PropOp op, std::int32_t a, std::int32_t b = -1) {
        std::uint64_t k = key(op, a, b);
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        PropId id = static_cast<PropId>(nodes.size());
        nodes.push_back({op, a, b});
        index.emplace(k, id);
        return id;
    }
    PropId atom(std::int32_t atom_idx) { return mk(PropOp::Atom, atom_idx); }
    std::size_t size() const { return nodes.size(); }
};

struct Atom {
    std::string pred;
    std::vector<TermPtr> args;
    std::size_t hash = 0;
};

inline std::size_t atom_hash(const std::string& pred, const std::vector<TermPtr>& args) {
    std::size_t h = std::hash<std::string>{}(pred);
    for (const auto& t : args) h = hash_mix(h, t->hash);
    return h;
}

inline bool atom_equal(const Atom& a, const std::string& pred, const std::vector<TermPtr>& args) {
    if (a.pred != pred || a.args.size() != args.size()) return false;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (!term_equal(a.args[i], args[i])) return false;
    return true;
}

inline std::string print_atom(const Atom& a) {
    std::ostringstream ss;
    ss << a.pred;
    if (!a.args.empty()) {
        ss << "(";
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) ss << ", ";
            print_term(ss, a.args[i]);
        }
        ss << ")";
    }
    return ss.str();
}

// Truth values indexed like the instance's atom table.
struct Assignment {
    std::vector<std::uint8_t> values;
    bool get(int atom_idx) const { return values.at(atom_idx) != 0; }
};

struct HcsInstance {
    FormulaPtr matrix;
    std::vector<std::string> vars;
    std::vector<std::vector<TermPtr>> rows;

    std::vector<Atom> atoms;
    PropPool pool;
    std::vector<PropId> row_props;  // one per row; the grounded value is their conjunction

    mutable std::unordered_map<std::size_t, std::vector<int>> atom_buckets;

    int find_atom(const std::string& pred, const std::vector<TermPtr>& args) const {
        auto it = atom_buckets.find(atom_hash(pred, args));
        if (it == atom_buckets.end()) return -1;
        for (int idx : it->second)
            if (atom_equal(atoms[idx], pred, args)) return idx;
        return -1;
    }

    int intern_atom(const std::string& pred, std::vector<TermPtr> args) {
        std::size_t h = atom_hash(pred, args);
        auto& bucket = atom_buckets[h];
        for (int idx : bucket)
            if (atom_equal(atoms[idx], pred, args)) return idx;
        int idx = static_cast<int>(atoms.size());
        atoms.push_back({pred, std::move(args), h});
        bucket.push_back(idx);
        return idx;
    }
};

namespace detail {

// Grounds the matrix for one row (variables bound per `env`) into the
// instance pool; memo is per-row, keyed by matrix node.
inline PropId ground_formula(HcsInstance& inst, const Formula* f,
                             const std::map<std::string, TermPtr>& env,
                             std::unordered_map<const Formula*, PropId>& memo) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    PropId id;
    switch (f->kind) {
        case Conn::Atom: {
            std::vector<TermPtr> args;
            args.reserve(f->args.size());
            for (const auto& t : f->args) args.push_back(substitute(t, env));
            id = inst.pool.atom(inst.intern_atom(f->pred, std::move(args)));
            break;
        }
        case Conn::Not:
            id = inst.pool.mk(PropOp::Not, ground_formula(inst, f->lhs.get(), env, memo));
            break;
        default: {
            PropId l = ground_formula(inst, f->lhs.get(), env, memo);
            PropId r = ground_formula(inst, f->rhs.get(), env, memo);
            PropOp op = f->kind == Conn::And ? PropOp::And
                        : f->kind == Conn::Or ? PropOp::Or
                        : f->kind == Conn::Imp ? PropOp::Imp
                                               : PropOp::Iff;
            id = inst.pool.mk(op, l, r);
            break;
        }
    }
    memo.emplace(f, id);
    return id;
}

}  // namespace detail

// Grounds `matrix` over the given rows. Free variables of the matrix must be
// among `vars`; every row must have exactly |vars| entries. Duplicate rows are
// kept; their conjuncts are harmless repeats.
inline HcsInstance build_instance(FormulaPtr matrix, std::vector<std::string> vars,
                                  std::vector<std::vector<TermPtr>> rows) {
    for (const auto& v : free_vars(matrix))
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            throw std::invalid_argument("matrix variable '" + v + "' not in variable list");
    HcsInstance inst;
    inst.matrix = std::move(matrix);
    inst.vars = std::move(vars);
    inst.rows = std::move(rows);
    for (const auto& row : inst.rows) {
        if (row.size() != inst.vars.size())
            throw std::invalid_argument("row arity mismatch: expected " +
                                        std::to_string(inst.vars.size()) + ", got " +
                                        std::to_string(row.size()));
        std::map<std::string, TermPtr> env;
        for (std::size_t i = 0; i < inst.vars.size(); ++i) env[inst.vars[i]] = row[i];
        std::unordered_map<const Formula*, PropId> memo;
        inst.row_props.push_back(detail::ground_formula(inst, inst.matrix.get(), env, memo));
    }
    return inst;
}

// A ready-made ground conjunction (used by the reduction machinery): each
// entry of `ground_parts` is treated as one row instance of a 0-variable
// matrix.
inline HcsInstance build_ground_instance(const std::vector<FormulaPtr>& ground_parts) {
    HcsInstance inst;
    inst.matrix = ground_parts.empty() ? nullptr : f_conj(ground_parts);
    std::map<std::string, TermPtr> env;
    for (const auto& g : ground_parts) {
        inst.rows.emplace_back();
        std::unordered_map<const Formula*, PropId> memo;
        inst.row_props.push_back(detail::ground_formula(inst, g.get(), env, memo));
    }
    return inst;
}

// Evaluates the pool bottom-up; node ids are topologically ordered by
// construction, so a single forward pass suffices (no recursion).
inline std::vector<std::uint8_t> eval_pool(const HcsInstance& inst, const Assignment& a) {
    if (a.values.size() != inst.atoms.size())
        throw std::invalid_argument("assignment is not total over the atom table");
    std::vector<std::uint8_t> val(inst.pool.size());
    for (std::size_t i = 0; i < inst.pool.size(); ++i) {
        const auto& n = inst.pool.nodes[i];
        switch (n.op) {
            case PropOp::Atom: val[i] = a.values[n.a]; break;
            case PropOp::Not: val[i] = !val[n.a]; break;
            case PropOp::And: val[i] = val[n.a] && val[n.b]; break;
            case PropOp::Or: val[i] = val[n.a] || val[n.b]; break;
            case PropOp::Imp: val[i] = !val[n.a] || val[n.b]; break;
            case PropOp::Iff: val[i] = val[n.a] == val[n.b]; break;
        }
    }
    return val;
}

// Standard propositional evaluation of the grounded conjunction.
inline bool eval(const HcsInstance& inst, const Assignment& a) {
    std::vector<std::uint8_t> val = eval_pool(inst, a);
    for (PropId r : inst.row_props)
        if (!val[r]) return false;
    return true;
}

// Assignment text format: one "<atom> \t 0|1" line per atom, table order.
inline std::string assignment_to_text(const HcsInstance& inst, const Assignment& a) {
    std::ostringstream ss;
    for (std::size_t i = 0; i < inst.atoms.size(); ++i)
        ss << print_atom(inst.atoms[i]) << "\t" << (a.values[i] ? "1" : "0") << "\n";
    return ss.str();
}

}  // namespace hcs
