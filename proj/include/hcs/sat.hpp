#pragma once

// Self-contained propositional satisfiability:
//   - solve():       CDCL, two watched literals, first-UIP learning, no
//                    restarts, deterministic branching (lowest unassigned
//                    variable; phase is false unless a seed randomizes it).
//   - DPLL engine:   plain recursive fallback for differential runs.
//   - brute_force(): exhaustive truth-table oracle (<= 24 variables),
//                    bit-parallel, first satisfying assignment in
//                    lexicographic order (variable 1 most significant,
//                    false < true).
//   - entails():     propositional consequence over an HCS instance.
// Every SAT model is checked against the full input clause set before it is
// returned.

#include <atomic>
#include <bit>
#include <cstdlib>
#include <optional>
#include <random>

#include "hcs/cnf.hpp"

namespace hcs {

struct SatResult {
    bool sat = false;
    std::vector<std::uint8_t> model;  // model[v-1] for variable v; empty if UNSAT
};

struct SolveOptions {
    enum class Engine { Cdcl, Dpll };
    Engine engine = Engine::Cdcl;
    std::optional<std::uint32_t> phase_seed;  // randomizes decision phases only
};

// Counts solve() entries; lets tests assert that a code path made no SAT call.
inline std::atomic<std::uint64_t>& solve_invocations() {
    static std::atomic<std::uint64_t> count{0};
    return count;
}

namespace detail {

inline bool model_satisfies(const Cnf& cnf, const std::vector<std::uint8_t>& model) {
    for (std::size_t i = 0; i < cnf.num_clauses(); ++i) {
        auto [b, e] = cnf.clause(i);
        bool ok = false;
        for (const std::int32_t* p = b; p != e && !ok; ++p) {
            int v = std::abs(*p);
            ok = (*p > 0) == (model[v - 1] != 0);
        }
        if (!ok) return false;
    }
    return true;
}

class CdclSolver {
  public:
    explicit CdclSolver(const Cnf& cnf, std::optional<std::uint32_t> phase_seed)
        : nvars_(cnf.num_vars), rng_(phase_seed ? *phase_seed : 0), random_phase_(phase_seed.has_value()) {
        assigns_.assign(nvars_ + 1, -1);
        level_.assign(nvars_ + 1, 0);
        reason_.assign(nvars_ + 1, kNoReason);
        seen_.assign(nvars_ + 1, 0);
        watches_.assign(2 * (nvars_ + 1), {});
        for (std::size_t i = 0; i < cnf.num_clauses() && !unsat_; ++i) {
            auto [b, e] = cnf.clause(i);
            add_clause(std::vector<std::int32_t>(b, e));
        }
    }

    SatResult run() {
        SatResult res;
        if (unsat_) return res;
        if (propagate() != kNoReason) return res;
        for (;;) {
            std::uint32_t confl;
            while ((confl = propagate()) != kNoReason) {
                if (current_level() == 0) return res;
                std::vector<std::uint32_t> learnt;
                int back_level = analyze(confl, learnt);
                backtrack(back_level);
                add_learnt(learnt);
            }
            int v = next_unassigned();
            if (v == 0) break;  // total assignment
            trail_lim_.push_back(static_cast<std::uint32_t>(trail_.size()));
            bool phase = random_phase_ ? (rng_() & 1) != 0 : false;
            enqueue(make_lit(v, !phase), kNoReason);
        }
        res.sat = true;
        res.model.resize(nvars_);
        for (int v = 1; v <= nvars_; ++v) res.model[v - 1] = assigns_[v] == 1;
        return res;
    }

  private:
    static constexpr std::uint32_t kNoReason = 0xFFFFFFFFu;

    struct Clause {
        std::uint32_t start;
        std::uint32_t size;
    };

    int nvars_;
    bool unsat_ = false;
    std::vector<std::uint32_t> arena_;
    std::vector<Clause> clauses_;
    std::vector<std::vector<std::uint32_t>> watches_;  // indexed by literal
    std::vector<std::int8_t> assigns_;                 // -1 undef, 0 false, 1 true
    std::vector<std::uint32_t> level_;
    std::vector<std::uint32_t> reason_;
    std::vector<std::uint8_t> seen_;
    std::vector<std::uint32_t> trail_;
    std::vector<std::uint32_t> trail_lim_;
    std::size_t qhead_ = 0;
    int search_from_ = 1;
    std::mt19937 rng_;
    bool random_phase_;

    // literal = 2*var + (1 if negated)
    static std::uint32_t make_lit(int var, bool neg) {
        return static_cast<std::uint32_t>(2 * var + (neg ? 1 : 0));
    }
    static std::uint32_t from_dimacs(std::int32_t l) { return make_lit(std::abs(l), l < 0); }
    static int var_of(std::uint32_t l) { return static_cast<int>(l >> 1); }

    // -1 undef, 0 false, 1 true
    int lit_value(std::uint32_t l) const {
        std::int8_t a = assigns_[var_of(l)];
        if (a < 0) return -1;
        return (l & 1) ? 1 - a : a;
    }

    int current_level() const { return static_cast<int>(trail_lim_.size()); }

    void enqueue(std::uint32_t l, std::uint32_t reason) {
        int v = var_of(l);
        assigns_[v] = (l & 1) ? 0 : 1;
        level_[v] = static_cast<std::uint32_t>(current_level());
        reason_[v] = reason;
        trail_.push_back(l);
    }

    void add_clause(std::vector<std::int32_t> ext) {
        std::sort(ext.begin(), ext.end(), [](std::int32_t a, std::int32_t b) {
            return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b);
        });
        std::vector<std::uint32_t> lits;
        for (std::size_t i = 0; i < ext.size(); ++i) {
            if (i > 0 && ext[i] == ext[i - 1]) continue;
            if (i > 0 && ext[i] == -ext[i - 1]) return;  // tautology
            lits.push_back(from_dimacs(ext[i]));
        }
        if (lits.empty()) {
            unsat_ = true;
            return;
        }
        if (lits.size() == 1) {
            int v = lit_value(lits[0]);
            if (v == 0) unsat_ = true;
            else if (v == -1) enqueue(lits[0], kNoReason);
            return;
        }
        attach(lits);
    }

    std::uint32_t attach(const std::vector<std::uint32_t>& lits) {
        std::uint32_t idx = static_cast<std::uint32_t>(clauses_.size());
        clauses_.push_back({static_cast<std::uint32_t>(arena_.size()),
                            static_cast<std::uint32_t>(lits.size())});
        arena_.insert(arena_.end(), lits.begin(), lits.end());
        watches_[lits[0]].push_back(idx);
        watches_[lits[1]].push_back(idx);
        return idx;
    }

    // Returns the conflicting clause index, or kNoReason.
    std::uint32_t propagate() {
        while (qhead_ < trail_.size()) {
            std::uint32_t p = trail_[qhead_++];
            std::uint32_t false_lit = p ^ 1u;
            auto& wl = watches_[false_lit];
            std::size_t keep = 0;
            for (std::size_t i = 0; i < wl.size(); ++i) {
                std::uint32_t ci = wl[i];
                Clause& c = clauses_[ci];
                std::uint32_t* lits = arena_.data() + c.start;
                if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
                // lits[1] == false_lit now
                if (lit_value(lits[0]) == 1) {
                    wl[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::uint32_t j = 2; j < c.size; ++j) {
                    if (lit_value(lits[j]) != 0) {
                        std::swap(lits[1], lits[j]);
                        watches_[lits[1]].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                // clause is unit or conflicting
                wl[keep++] = ci;
                if (lit_value(lits[0]) == 0) {
                    for (std::size_t k = i + 1; k < wl.size(); ++k) wl[keep++] = wl[k];
                    wl.resize(keep);
                    qhead_ = trail_.size();
                    return ci;
                }
                enqueue(lits[0], ci);
            }
            wl.resize(keep);
        }
        return kNoReason;
    }

    int analyze(std::uint32_t confl, std::vector<std::uint32_t>& learnt) {
        learnt.push_back(0);  // room for the asserting literal
        int counter = 0;
        std::uint32_t p = 0;
        bool have_p = false;
        std::size_t idx = trail_.size();
        int cur = current_level();
        for (;;) {
            const Clause& c = clauses_[confl];
            const std::uint32_t* lits = arena_.data() + c.start;
            for (std::uint32_t j = have_p ? 1 : 0; j < c.size; ++j) {
                std::uint32_t q = lits[j];
                int v = var_of(q);
                if (seen_[v] || level_[v] == 0) continue;
                seen_[v] = 1;
                if (static_cast<int>(level_[v]) >= cur) ++counter;
                else learnt.push_back(q);
            }
            have_p = true;
            do { p = trail_[--idx]; } while (!seen_[var_of(p)]);
            seen_[var_of(p)] = 0;
            --counter;
            if (counter == 0) break;
            confl = reason_[var_of(p)];
        }
        learnt[0] = p ^ 1u;
        int back = 0;
        for (std::size_t i = 1; i < learnt.size(); ++i) {
            seen_[var_of(learnt[i])] = 0;
            back = std::max(back, static_cast<int>(level_[var_of(learnt[i])]));
            // keep a highest-level literal in position 1 for watching
            if (level_[var_of(learnt[i])] > level_[var_of(learnt[1])]) std::swap(learnt[1], learnt[i]);
        }
        return back;
    }

    void backtrack(int to_level) {
        while (current_level() > to_level) {
            std::uint32_t start = trail_lim_.back();
            trail_lim_.pop_back();
            while (trail_.size() > start) {
                std::uint32_t l = trail_.back();
                trail_.pop_back();
                int v = var_of(l);
                assigns_[v] = -1;
                reason_[v] = kNoReason;
                search_from_ = std::min(search_from_, v);
            }
        }
        qhead_ = trail_.size();
    }

    void add_learnt(const std::vector<std::uint32_t>& learnt) {
        if (learnt.size() == 1) {
            enqueue(learnt[0], kNoReason);
            return;
        }
        std::uint32_t ci = attach(learnt);
        enqueue(learnt[0], ci);
    }

    int next_unassigned() {
        while (search_from_ <= nvars_ && assigns_[search_from_] != -1) ++search_from_;
        return search_from_ <= nvars_ ? search_from_ : 0;
    }
};

inline bool dpll_rec(const Cnf& cnf, std::vector<std::int8_t>& val) {
    // unit propagation to fixpoint
    std::vector<std::pair<int, std::int8_t>> trail;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < cnf.num_clauses(); ++i) {
            auto [b, e] = cnf.clause(i);
            int unassigned = 0;
            std::int32_t unit = 0;
            bool sat = false;
            for (const std::int32_t* p = b; p != e; ++p) {
                int v = std::abs(*p);
                if (val[v] == -1) {
                    ++unassigned;
                    unit = *p;
                } else if ((val[v] == 1) == (*p > 0)) {
                    sat = true;
                    break;
                }
            }
            if (sat) continue;
            if (unassigned == 0) {
                for (auto& [v, o] : trail) val[v] = o;
                return false;
            }
            if (unassigned == 1) {
                int v = std::abs(unit);
                trail.emplace_back(v, val[v]);
                val[v] = unit > 0 ? 1 : 0;
                changed = true;
            }
        }
    }
    int pick = 0;
    for (int v = 1; v < static_cast<int>(val.size()); ++v)
        if (val[v] == -1) { pick = v; break; }
    if (pick == 0) return true;
    for (std::int8_t phase : {0, 1}) {
        val[pick] = phase;
        if (dpll_rec(cnf, val)) return true;
    }
    val[pick] = -1;
    for (auto& [v, o] : trail) val[v] = o;
    return false;
}

}  // namespace detail

inline SatResult solve(const Cnf& cnf, const SolveOptions& opts = {}) {
    solve_invocations().fetch_add(1, std::memory_order_relaxed);
    SatResult res;
    if (opts.engine == SolveOptions::Engine::Dpll) {
        std::vector<std::int8_t> val(cnf.num_vars + 1, -1);
        if (detail::dpll_rec(cnf, val)) {
            res.sat = true;
            res.model.resize(cnf.num_vars);
            for (int v = 1; v <= cnf.num_vars; ++v) res.model[v - 1] = val[v] == 1;
        }
    } else {
        detail::CdclSolver solver(cnf, opts.phase_seed);
        res = solver.run();
    }
    if (res.sat && !detail::model_satisfies(cnf, res.model))
        throw std::logic_error("internal error: SAT model fails clause check");
    return res;
}

// Exhaustive oracle, bit-parallel over 64-assignment blocks.
inline SatResult brute_force(const Cnf& cnf) {
    if (cnf.num_vars > 24) throw std::invalid_argument("brute_force: variable count exceeds 24");
    int n = cnf.num_vars;
    std::size_t total = std::size_t{1} << n;
    std::size_t words = (total + 63) / 64;

    static constexpr std::uint64_t kPat[6] = {
        0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
        0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    // Bit i of word w is assignment number w*64+i; variable v (1-based) is true
    // in assignment a iff bit (n - v) of a is set.
    auto var_word = [&](int v, std::size_t w) -> std::uint64_t {
        int shift = n - v;
        if (shift < 6) return kPat[shift];
        return ((w * 64) >> shift) & 1 ? ~0ull : 0ull;
    };

    std::vector<std::uint64_t> viable(words, ~0ull);
    if (total % 64) viable[words - 1] = (1ull << (total % 64)) - 1;

    for (std::size_t i = 0; i < cnf.num_clauses(); ++i) {
        auto [b, e] = cnf.clause(i);
        bool any = false;
        for (std::size_t w = 0; w < words; ++w) {
            if (!viable[w]) continue;
            std::uint64_t sat = 0;
            for (const std::int32_t* p = b; p != e; ++p) {
                std::uint64_t pat = var_word(std::abs(*p), w);
                sat |= (*p > 0) ? pat : ~pat;
            }
            viable[w] &= sat;
            any |= viable[w] != 0;
        }
        if (!any) return {};
    }
    for (std::size_t w = 0; w < words; ++w) {
        if (!viable[w]) continue;
        int bit = std::countr_zero(viable[w]);
        std::size_t a = w * 64 + static_cast<std::size_t>(bit);
        SatResult res;
        res.sat = true;
        res.model.resize(n);
        for (int v = 1; v <= n; ++v) res.model[v - 1] = (a >> (n - v)) & 1;
        return res;
    }
    return {};
}

// Ground literal: atom plus polarity.
using GroundLiteral = std::pair<Atom, bool>;

// True iff the instance's grounded conjunction propositionally entails every
// target literal (premises AND NOT(conjunction of targets) is UNSAT). Target
// atoms outside the table are admitted as fresh, unconstrained atoms.
inline bool entails(const HcsInstance& premises, const std::vector<GroundLiteral>& targets,
                    const SolveOptions& opts = {}) {
    if (targets.empty()) return true;
    Cnf cnf = to_cnf_with_negated_literals(premises, targets);
    return !solve(cnf, opts).sat;
}

}  // namespace hcs
