#pragma once

// Herbrand consistency search over a universal sentence: ground the matrix on
// the given rows, encode, solve. UNSAT is reported as a HerbrandRefutation —
// the instance witnesses that the sentence is inconsistent.

#include "hcs/sat.hpp"
#include "hcs/skolem.hpp"

namespace hcs {

struct HerbrandRefutation : std::runtime_error {
    std::shared_ptr<HcsInstance> instance;
    explicit HerbrandRefutation(std::shared_ptr<HcsInstance> inst)
        : std::runtime_error("Herbrand refutation: input sentence is inconsistent"),
          instance(std::move(inst)) {}
};

// Restricts a CNF model to the instance's atom table.
inline Assignment restrict_model(const HcsInstance& inst, const SatResult& res) {
    Assignment a;
    a.values.assign(res.model.begin(), res.model.begin() + inst.atoms.size());
    return a;
}

struct HcsSolution {
    std::shared_ptr<HcsInstance> instance;
    Assignment assignment;
};

inline HcsSolution hcs_solve_instance(std::shared_ptr<HcsInstance> inst,
                                      const SolveOptions& opts = {}) {
    Cnf cnf = to_cnf(*inst);
    SatResult res = solve(cnf, opts);
    if (!res.sat) throw HerbrandRefutation(std::move(inst));
    Assignment a = restrict_model(*inst, res);
    if (!eval(*inst, a))
        throw std::logic_error("internal error: restricted model fails eval");
    return {std::move(inst), std::move(a)};
}

inline HcsSolution hcs_solve(const UniversalSentence& phi,
                             const std::vector<std::vector<TermPtr>>& rows,
                             const SolveOptions& opts = {}) {
    auto inst = std::make_shared<HcsInstance>(build_instance(phi.matrix, phi.vars, rows));
    return hcs_solve_instance(std::move(inst), opts);
}

}  // namespace hcs
