#include <catch2/catch_amalgamated.hpp>

#include "hcs/hcs_solve.hpp"
#include "hcs/parse.hpp"

#include "testutil.hpp"

using namespace hcs;

namespace {
Signature nat_sig() {
    Signature sig;
    sig.add_predicate("P", 1);
    sig.add_function("0", 0);
    sig.add_function("S", 1);
    return sig;
}

std::vector<std::uint8_t> to_bits(unsigned mask, std::size_t n) {
    std::vector<std::uint8_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1;
    return v;
}
}  // namespace

TEST_CASE("build_instance on a unary predicate") {
    Signature sig = nat_sig();
    FormulaPtr m = parse_open_formula("P(x)", sig, {"x"});
    HcsInstance inst =
        build_instance(m, {"x"}, {{parse_term("0", sig)}, {parse_term("S(0)", sig)}});
    REQUIRE(inst.rows.size() == 2);
    REQUIRE(inst.atoms.size() == 2);
    REQUIRE(print_atom(inst.atoms[0]) == "P(0)");
    REQUIRE(print_atom(inst.atoms[1]) == "P(S(0))");
}

TEST_CASE("duplicate rows share the atom table") {
    Signature sig = nat_sig();
    FormulaPtr m = parse_open_formula("P(x)", sig, {"x"});
    HcsInstance inst = build_instance(m, {"x"}, {{parse_term("0", sig)}, {parse_term("0", sig)}});
    REQUIRE(inst.rows.size() == 2);
    REQUIRE(inst.atoms.size() == 1);
}

TEST_CASE("row arity is checked") {
    Signature sig = nat_sig();
    FormulaPtr m = parse_open_formula("P(x)", sig, {"x"});
    REQUIRE_THROWS_WITH(build_instance(m, {"x"}, {{parse_term("0", sig), parse_term("0", sig)}}),
                        Catch::Matchers::ContainsSubstring("arity"));
}

TEST_CASE("the DLO matrix instance on one row collects the expected atoms") {
    Signature sig;
    auto cs = parse_sentences_infer(
        "forall x . forall y . forall z . ~(x < x) & (x < y & y < z -> x < z) & "
        "(x < y -> (x < f(x, y) & f(x, y) < y)) & (x = y -> y = x)",
        sig);
    auto [us, ext] = skolemize(cs, sig);
    UniversalSentence phi = merge_universals(us);
    Signature rsig = ext;
    auto rows = parse_rows("0, 1, f(0, 1)", rsig);
    HcsInstance inst = build_instance(phi.matrix, phi.vars, rows);
    auto has = [&](const char* pred, const char* a, const char* b) {
        return inst.find_atom(pred, {parse_term(a, rsig), parse_term(b, rsig)}) >= 0;
    };
    REQUIRE(has("lt", "0", "1"));
    REQUIRE(has("lt", "0", "f(0, 1)"));
    REQUIRE(has("lt", "f(0, 1)", "1"));
    REQUIRE(has("eq", "0", "1"));
}

TEST_CASE("atom table construction is deterministic") {
    Signature sig = nat_sig();
    FormulaPtr m = parse_open_formula("P(x) & ~P(S(x))", sig, {"x"});
    std::vector<std::vector<TermPtr>> rows{{parse_term("0", sig)}, {parse_term("S(0)", sig)}};
    HcsInstance a = build_instance(m, {"x"}, rows);
    HcsInstance b = build_instance(m, {"x"}, rows);
    REQUIRE(a.atoms.size() == b.atoms.size());
    std::ostringstream sa, sb;
    write_atom_map(sa, a);
    write_atom_map(sb, b);
    REQUIRE(sa.str() == sb.str());
}

TEST_CASE("eval on P(0) & P(S(0))") {
    Signature sig = nat_sig();
    FormulaPtr m = parse_open_formula("P(x)", sig, {"x"});
    HcsInstance inst =
        build_instance(m, {"x"}, {{parse_term("0", sig)}, {parse_term("S(0)", sig)}});
    REQUIRE(eval(inst, Assignment{{1, 1}}));
    REQUIRE_FALSE(eval(inst, Assignment{{0, 1}}));
    REQUIRE_THROWS(eval(inst, Assignment{{1}}));  // partial assignment
}

TEST_CASE("to_cnf of a single atom is one variable and one unit clause") {
    Signature sig = nat_sig();
    FormulaPtr m = parse_open_formula("P(x)", sig, {"x"});
    HcsInstance inst = build_instance(m, {"x"}, {{parse_term("0", sig)}});
    Cnf cnf = to_cnf(inst);
    REQUIRE(cnf.num_vars == 1);
    REQUIRE(cnf.num_clauses() == 1);
    auto [b, e] = cnf.clause(0);
    REQUIRE(e - b == 1);
    REQUIRE(*b == 1);
}

TEST_CASE("contradictory instance is UNSAT") {
    Signature sig = nat_sig();
    FormulaPtr m = parse_open_formula("P(x) <-> ~P(x)", sig, {"x"});
    HcsInstance inst = build_instance(m, {"x"}, {{parse_term("0", sig)}});
    REQUIRE_FALSE(solve(to_cnf(inst)).sat);
    REQUIRE_FALSE(brute_force(to_cnf(inst)).sat);
}

TEST_CASE("CNF satisfiability equals truth-table satisfiability on random formulas") {
    testutil::SentenceGen gen(314159);
    Signature sig = nat_sig();
    for (int iter = 0; iter < 200; ++iter) {
        FormulaPtr f = gen.formula({"x", "y"}, 3);
        HcsInstance inst = build_instance(f, {"x", "y"},
                                          {{parse_term("0", sig), parse_term("S(0)", sig)}});
        if (inst.atoms.size() > 8) continue;
        bool table_sat = false;
        for (unsigned mask = 0; mask < (1u << inst.atoms.size()) && !table_sat; ++mask)
            table_sat = eval(inst, Assignment{to_bits(mask, inst.atoms.size())});
        Cnf cnf = to_cnf(inst);
        SatResult res = solve(cnf);
        INFO(print_formula(f));
        REQUIRE(res.sat == table_sat);
        if (res.sat) REQUIRE(eval(inst, restrict_model(inst, res)));
    }
}

TEST_CASE("appending rows only grows the table and restriction preserves satisfaction") {
    Signature sig = nat_sig();
    FormulaPtr m = parse_open_formula("P(x) | ~P(S(x))", sig, {"x"});
    std::vector<std::vector<TermPtr>> rows{{parse_term("0", sig)}};
    HcsInstance small = build_instance(m, {"x"}, rows);
    rows.push_back({parse_term("S(0)", sig)});
    HcsInstance large = build_instance(m, {"x"}, rows);
    REQUIRE(large.atoms.size() >= small.atoms.size());
    for (std::size_t i = 0; i < small.atoms.size(); ++i)
        REQUIRE(print_atom(large.atoms[i]) == print_atom(small.atoms[i]));
    SatResult res = solve(to_cnf(large));
    REQUIRE(res.sat);
    Assignment big = restrict_model(large, res);
    Assignment restricted{{big.values.begin(), big.values.begin() + small.atoms.size()}};
    REQUIRE(eval(small, restricted));
}

TEST_CASE("DIMACS round trip") {
    std::mt19937 rng(5);
    Cnf cnf = testutil::random_cnf(rng, 8, 20);
    std::ostringstream ss;
    write_dimacs(ss, cnf);
    std::istringstream in(ss.str());
    Cnf back = read_dimacs(in);
    REQUIRE(back.num_vars == cnf.num_vars);
    REQUIRE(back.num_clauses() == cnf.num_clauses());
    REQUIRE(back.lits == cnf.lits);
    REQUIRE(ss.str().rfind("p cnf", 0) == 0);
}

TEST_CASE("atom map lines pair variables with printed atoms") {
    Signature sig = nat_sig();
    FormulaPtr m = parse_open_formula("P(x) & P(S(x))", sig, {"x"});
    HcsInstance inst = build_instance(m, {"x"}, {{parse_term("0", sig)}});
    std::ostringstream ss;
    write_atom_map(ss, inst);
    REQUIRE(ss.str() == "1 P(0)\n2 P(S(0))\n");
}
