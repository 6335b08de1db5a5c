#pragma once

// Compiles a register-machine description into the universal sentence whose
// Herbrand consistency search solves the machine's search problem:
//
//   - TmSpec: d registers per tape square, boundary transition formulas
//     rho_1..rho_d over window atoms q<j>@prev[0|1], interior formulas
//     psi_1..psi_d over q<j>@prev[t|t+1|t+2], and an explicit polynomial
//     step/tape bound (coefficient list, lowest degree first).
//   - generate_axioms: the word theory (groups 1-5) plus the tableau axioms:
//     6. Q1(F(x),0,t) <-> P(x,t),  Q2(F(x),0,t) <-> ell(x) = t
//     7. Q5(F(x),0,0),  ~Q5(F(x),0,S(t))
//     8. ~Qi(F(x),0,t) for i = 6..d
//     9. Qi(F(x),S(s),0) <-> rho_i,  Qi(F(x),S(s),S(t)) <-> psi_i
//    10. ~Q6(F(x),s,t)
//   - build_psi_w: the instance over rows (prefix, S^i, S^j, S^k) for
//     i,j,k <= p(n) and all n+1 prefixes of w; (n+1)*(p(n)+1)^3 rows.
//   - run_tm / simulate: the same transition formulas evaluated directly on
//     register rows; decode_solution reads u off Q3/Q4 at time 0 and checks
//     it against the machine.
//
// Register contract: 1-2 encode x (bits, end marker), 3-4 encode y, 5 marks
// the head, 6 is the reject flag.

#include <fstream>

#include "hcs/hcs_solve.hpp"
#include "hcs/lemmas.hpp"
#include "hcs/parse.hpp"

#include <json.hpp>

namespace hcs {

struct TmSpec {
    int d = 0;
    std::vector<long long> p_coef;  // p(n) = sum p_coef[k] * n^k
    std::vector<std::string> rho_src, psi_src;
    std::vector<FormulaPtr> rho, psi;

    long long p_of(long long n) const {
        long long acc = 0, pw = 1;
        for (long long c : p_coef) {
            acc += c * pw;
            pw *= n;
        }
        return acc;
    }
};

namespace detail {

struct WindowAtom {
    int reg = 0;
    std::string idx;  // "0", "1", "t", "t+1", "t+2"
};

inline std::optional<WindowAtom> parse_window_atom(const std::string& pred) {
    auto at = pred.find("@prev[");
    if (at == std::string::npos || pred.empty() || pred[0] != 'q' || pred.back() != ']')
        return std::nullopt;
    WindowAtom w;
    try {
        w.reg = std::stoi(pred.substr(1, at - 1));
    } catch (...) {
        return std::nullopt;
    }
    w.idx = pred.substr(at + 6, pred.size() - at - 7);
    return w;
}

inline Signature window_signature(int d, bool boundary) {
    Signature sig;
    std::vector<std::string> idxs =
        boundary ? std::vector<std::string>{"0", "1"} : std::vector<std::string>{"t", "t+1", "t+2"};
    for (int j = 1; j <= d; ++j)
        for (const auto& idx : idxs)
            sig.add_predicate("q" + std::to_string(j) + "@prev[" + idx + "]", 0);
    return sig;
}

inline FormulaPtr map_window_atoms(const FormulaPtr& f,
                                   const std::function<FormulaPtr(const WindowAtom&)>& fn) {
    if (f->kind == Conn::Atom) {
        auto w = parse_window_atom(f->pred);
        if (!w) throw std::invalid_argument("invalid transition schema atom '" + f->pred + "'");
        return fn(*w);
    }
    if (f->kind == Conn::Not) return f_not(map_window_atoms(f->lhs, fn));
    return f_bin(f->kind, map_window_atoms(f->lhs, fn), map_window_atoms(f->rhs, fn));
}

inline bool eval_transition(const FormulaPtr& f,
                            const std::function<bool(const WindowAtom&)>& fn) {
    switch (f->kind) {
        case Conn::Atom: return fn(*parse_window_atom(f->pred));
        case Conn::Not: return !eval_transition(f->lhs, fn);
        case Conn::And: return eval_transition(f->lhs, fn) && eval_transition(f->rhs, fn);
        case Conn::Or: return eval_transition(f->lhs, fn) || eval_transition(f->rhs, fn);
        case Conn::Imp: return !eval_transition(f->lhs, fn) || eval_transition(f->rhs, fn);
        case Conn::Iff: return eval_transition(f->lhs, fn) == eval_transition(f->rhs, fn);
    }
    return false;
}

}  // namespace detail

inline TmSpec load_tmspec(const nlohmann::json& j) {
    TmSpec m;
    m.d = j.at("d").get<int>();
    if (m.d < 6) throw std::invalid_argument("TmSpec: d must be >= 6");
    m.p_coef = j.at("p").get<std::vector<long long>>();
    m.rho_src = j.at("rho").get<std::vector<std::string>>();
    m.psi_src = j.at("psi").get<std::vector<std::string>>();
    if (static_cast<int>(m.rho_src.size()) != m.d || static_cast<int>(m.psi_src.size()) != m.d)
        throw std::invalid_argument("TmSpec: need exactly d rho and d psi formulas");
    Signature sig_rho = detail::window_signature(m.d, true);
    Signature sig_psi = detail::window_signature(m.d, false);
    for (const auto& s : m.rho_src) {
        Signature copy = sig_rho;
        detail::Parser p(s, copy, {.strict = true});
        m.rho.push_back(p.open_formula({}));
    }
    for (const auto& s : m.psi_src) {
        Signature copy = sig_psi;
        detail::Parser p(s, copy, {.strict = true});
        m.psi.push_back(p.open_formula({}));
    }
    return m;
}

inline TmSpec load_tmspec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open machine file '" + path + "'");
    nlohmann::json j;
    in >> j;
    return load_tmspec(j);
}

// The conjunction of axiom groups 1-10 over variables x, r, s, t, plus the
// signature it lives in.
inline std::pair<FormulaPtr, Signature> generate_axioms(const TmSpec& m) {
    using namespace wordax;
    TermPtr x = make_var("x"), s = make_var("s"), t = make_var("t");
    TermPtr zero = make_const("0");
    auto Fx = make_app("F", {x});
    auto Q = [&](int j, TermPtr a, TermPtr b, TermPtr c) {
        return f_atom("Q" + std::to_string(j), {std::move(a), std::move(b), std::move(c)});
    };

    std::vector<FormulaPtr> cs;
    for (auto& f : identity_std()) cs.push_back(f);        // group 1
    for (auto& f : identity_word()) cs.push_back(f);
    for (auto& f : successor()) cs.push_back(f);           // group 2
    cs.push_back(length_empty());                          // group 3
    cs.push_back(word_build(0));                           // group 4
    cs.push_back(word_build(1));                           // group 5

    cs.push_back(f_iff(Q(1, Fx, zero, t), P(x, t)));                     // group 6
    cs.push_back(f_iff(Q(2, Fx, zero, t), eq(ell(x), t)));
    cs.push_back(Q(5, Fx, zero, zero));                                  // group 7
    cs.push_back(f_not(Q(5, Fx, zero, S(t))));
    for (int i = 6; i <= m.d; ++i) cs.push_back(f_not(Q(i, Fx, zero, t)));  // group 8

    for (int i = 1; i <= m.d; ++i) {                                     // group 9
        FormulaPtr rho_i = detail::map_window_atoms(m.rho[i - 1], [&](const detail::WindowAtom& w) {
            return Q(w.reg, Fx, s, w.idx == "0" ? zero : S(zero));
        });
        cs.push_back(f_iff(Q(i, Fx, S(s), zero), rho_i));
        FormulaPtr psi_i = detail::map_window_atoms(m.psi[i - 1], [&](const detail::WindowAtom& w) {
            TermPtr pos = w.idx == "t" ? t : w.idx == "t+1" ? S(t) : S(S(t));
            return Q(w.reg, Fx, s, pos);
        });
        cs.push_back(f_iff(Q(i, Fx, S(s), S(t)), psi_i));
    }
    cs.push_back(f_not(Q(6, Fx, s, t)));                                 // group 10

    return {f_conj(cs), word_signature(m.d)};
}

// Psi_w: the axiom matrix instantiated at (prefix, S^i, S^j, S^k) for all
// i,j,k in [0, p(n)] and all n+1 prefixes of w, including Lam.
inline HcsInstance build_psi_w(const TmSpec& m, const std::string& w) {
    long long n = static_cast<long long>(w.size());
    if (n < 1) throw std::invalid_argument("build_psi_w: word must be nonempty");
    long long p = m.p_of(n);
    auto [matrix, sig] = generate_axioms(m);

    std::vector<TermPtr> nums;
    for (long long i = 0; i <= p; ++i) nums.push_back(numeral(static_cast<int>(i)));
    std::vector<TermPtr> prefixes = word_prefixes(w);

    std::vector<std::vector<TermPtr>> rows;
    rows.reserve(prefixes.size() * nums.size() * nums.size() * nums.size());
    for (const auto& pre : prefixes)
        for (const auto& ri : nums)
            for (const auto& sj : nums)
                for (const auto& tk : nums) rows.push_back({pre, ri, sj, tk});
    return build_instance(matrix, {"x", "r", "s", "t"}, rows);
}

// One register row: cells[pos][reg-1].
using TapeRow = std::vector<std::vector<std::uint8_t>>;
using Tableau = std::vector<TapeRow>;

// Applies the transition formulas once: cell 0 by rho, cells 1..width-2 by
// psi; the last cell is out of reach of the window schema and stays zero.
inline TapeRow step_row(const TmSpec& m, const TapeRow& prev) {
    std::size_t width = prev.size();
    TapeRow next(width, std::vector<std::uint8_t>(m.d, 0));
    for (int i = 1; i <= m.d; ++i) {
        next[0][i - 1] = detail::eval_transition(m.rho[i - 1], [&](const detail::WindowAtom& a) {
            return prev[a.idx == "0" ? 0 : 1][a.reg - 1] != 0;
        });
        for (std::size_t c = 1; c + 1 < width; ++c) {
            next[c][i - 1] = detail::eval_transition(m.psi[i - 1], [&](const detail::WindowAtom& a) {
                std::size_t pos = a.idx == "t" ? c - 1 : a.idx == "t+1" ? c : c + 1;
                return prev[pos][a.reg - 1] != 0;
            });
        }
    }
    return next;
}

inline Tableau simulate(const TmSpec& m, const TapeRow& row0, long long steps) {
    Tableau tab{row0};
    for (long long s = 0; s < steps; ++s) tab.push_back(step_row(m, tab.back()));
    return tab;
}

// Canonical time-0 configuration for inputs x and y: registers 1-2 from x,
// 3-4 from y, 5 at square 0, the rest zero.
inline TapeRow initial_row(const TmSpec& m, const std::string& x, const std::string& y,
                           std::size_t width) {
    if (x.size() + 1 > width || y.size() + 1 > width)
        throw std::invalid_argument("input does not fit on the p-bounded tape");
    TapeRow row(width, std::vector<std::uint8_t>(m.d, 0));
    for (std::size_t i = 0; i < x.size(); ++i) row[i][0] = x[i] == '1';
    row[x.size()][1] = 1;
    for (std::size_t i = 0; i < y.size(); ++i) row[i][2] = y[i] == '1';
    row[y.size()][3] = 1;
    row[0][4] = 1;
    return row;
}

// Deterministic simulation for p(|x|) steps; accepts iff register 6 never
// becomes 1.
inline bool run_tm(const TmSpec& m, const std::string& x, const std::string& y) {
    long long p = m.p_of(static_cast<long long>(x.size()));
    Tableau tab = simulate(m, initial_row(m, x, y, static_cast<std::size_t>(p) + 3), p);
    for (const auto& row : tab)
        for (const auto& cell : row)
            if (cell[5]) return false;
    return true;
}

// Reads the register tableau encoded at F(word_term(w)) off an assignment:
// rows 0..p(n), positions 0..p(n)+2 (the two extra columns are the window
// overhang of the transition schema). Cells whose atom does not occur in the
// instance are unconstrained and read as 0; all cells with s,t <= p(n) are
// present.
inline Tableau tableau_from_assignment(const HcsInstance& inst, const Assignment& a,
                                       const TmSpec& m, const std::string& w) {
    TermPtr ftau = make_app("F", {word_term(w)});
    long long p = m.p_of(static_cast<long long>(w.size()));
    std::size_t width = static_cast<std::size_t>(p) + 3;
    Tableau tab;
    for (long long s = 0; s <= p; ++s) {
        TapeRow row(width, std::vector<std::uint8_t>(m.d, 0));
        for (std::size_t t = 0; t < width; ++t) {
            for (int j = 1; j <= m.d; ++j) {
                int idx = inst.find_atom("Q" + std::to_string(j),
                                         {ftau, numeral(static_cast<int>(s)),
                                          numeral(static_cast<int>(t))});
                if (idx < 0 && s <= p && t <= static_cast<std::size_t>(p))
                    throw std::logic_error("tableau atom missing at (" + std::to_string(s) +
                                           "," + std::to_string(t) + ")");
                row[t][j - 1] = idx < 0 ? 0 : a.get(idx);
            }
        }
        tab.push_back(std::move(row));
    }
    return tab;
}

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads u off the time-0 values of Q3/Q4 at F(word_term(w)): the least i with
// Q4(F(tau),0,S^i(0)) true ends u; its bits are Q3(F(tau),0,S^j(0)), j < i.
// The result is checked against the machine before it is returned.
inline std::string decode_solution(const HcsInstance& inst, const Assignment& a, const TmSpec& m,
                                   const std::string& w) {
    TermPtr ftau = make_app("F", {word_term(w)});
    long long p = m.p_of(static_cast<long long>(w.size()));
    auto q_atom = [&](int reg, long long pos) {
        int idx = inst.find_atom("Q" + std::to_string(reg),
                                 {ftau, numeral(0), numeral(static_cast<int>(pos))});
        if (idx < 0) throw DecodeError("decode: tableau atom missing from instance");
        return idx;
    };
    long long end = -1;
    for (long long i = 0; i <= p; ++i)
        if (a.get(q_atom(4, i))) {
            end = i;
            break;
        }
    if (end < 0)
        throw DecodeError("decode: no end marker within p(n); machine assumptions violated");
    std::string u;
    for (long long i = 0; i < end; ++i) u += a.get(q_atom(3, i)) ? '1' : '0';
    if (!run_tm(m, w, u))
        throw DecodeError("decode: verification failure, R(w,u) does not hold");
    return u;
}

struct TfnpSolution {
    std::shared_ptr<HcsInstance> instance;
    Assignment assignment;
    std::string witness;
};

// Theorem-1 pipeline: build Psi_w, solve it, decode u with R(w,u).
inline TfnpSolution reduce_and_solve(const TmSpec& m, const std::string& w,
                                     const SolveOptions& opts = {}) {
    auto inst = std::make_shared<HcsInstance>(build_psi_w(m, w));
    HcsSolution sol = hcs_solve_instance(std::move(inst), opts);
    std::string u = decode_solution(*sol.instance, sol.assignment, m, w);
    return {std::move(sol.instance), std::move(sol.assignment), std::move(u)};
}

}  // namespace hcs
