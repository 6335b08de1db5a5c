#include <catch2/catch_amalgamated.hpp>

#include "hcs/dlo.hpp"
#include "hcs/parse.hpp"

#include "testutil.hpp"

using namespace hcs;

namespace {
std::vector<TermPtr> triple(const char* a, const char* b, const char* c) {
    Signature sig = dlo_signature();
    return {parse_term(a, sig), parse_term(b, sig), parse_term(c, sig)};
}
}  // namespace

TEST_CASE("f(0,1) lands at the midpoint") {
    DloSolution sol = dlo_solve({triple("0", "1", "f(0, 1)")});
    Signature sig = dlo_signature();
    const Dyadic* v = sol.interp.find(parse_term("f(0, 1)", sig));
    REQUIRE(v != nullptr);
    REQUIRE(v->num == 1);
    REQUIRE(v->exp == 1);  // 1/2
    auto val = [&](const char* p, const char* a, const char* b) {
        int idx = sol.instance->find_atom(p, {parse_term(a, sig), parse_term(b, sig)});
        REQUIRE(idx >= 0);
        return sol.assignment.get(idx);
    };
    REQUIRE(val("lt", "0", "f(0, 1)"));
    REQUIRE(val("lt", "f(0, 1)", "1"));
    REQUIRE_FALSE(val("lt", "1", "0"));
}

TEST_CASE("reflexive row gets value 2 and a vacuous density conjunct") {
    DloSolution sol = dlo_solve({triple("x", "x", "x")});
    Signature sig = dlo_signature();
    const Dyadic* v = sol.interp.find(parse_term("x", sig));
    REQUIRE(v != nullptr);
    REQUIRE(v->num == 2);
    REQUIRE(v->exp == 0);
    int eqxx = sol.instance->find_atom("eq", {make_var("x"), make_var("x")});
    int ltxx = sol.instance->find_atom("lt", {make_var("x"), make_var("x")});
    REQUIRE(sol.assignment.get(eqxx));
    REQUIRE_FALSE(sol.assignment.get(ltxx));
}

TEST_CASE("terms outside the DLO signature are rejected") {
    Signature bad;
    bad.add_function("g", 1);
    bad.add_function("0", 0);
    REQUIRE_THROWS_WITH(dlo_solve({{parse_term("g(0)", bad), make_var("x"), make_var("y")}}),
                        Catch::Matchers::ContainsSubstring("outside the DLO signature"));
}

TEST_CASE("interpretation invariants hold on a random corpus") {
    std::mt19937 rng(60101);
    Signature sig = dlo_signature();
    TermPtr zero = parse_term("0", sig), one = parse_term("1", sig);
    for (int iter = 0; iter < 40; ++iter) {
        auto rows = testutil::random_dlo_rows(rng, 12, 3);
        DloSolution sol = dlo_solve(rows);
        const auto& vals = sol.interp.values;
        // constants keep their values when they occur
        if (const Dyadic* v = sol.interp.find(zero)) REQUIRE(*v == Dyadic::from_int(0));
        if (const Dyadic* v = sol.interp.find(one)) REQUIRE(*v == Dyadic::from_int(1));
        // injectivity on distinct terms
        for (std::size_t i = 0; i < vals.size(); ++i)
            for (std::size_t j = i + 1; j < vals.size(); ++j)
                REQUIRE_FALSE(vals[i].second == vals[j].second);
        // between-ness for every interpreted f-term
        for (const auto& [t, v] : vals) {
            if (t->var || t->args.empty()) continue;
            const Dyadic* a = sol.interp.find(t->args[0]);
            const Dyadic* b = sol.interp.find(t->args[1]);
            if (*a < *b) {
                REQUIRE(*a < v);
                REQUIRE(v < *b);
            }
        }
    }
}

TEST_CASE("dlo_solve never touches the SAT engine and always passes eval") {
    std::mt19937 rng(8080);
    for (int iter = 0; iter < 30; ++iter) {
        auto rows = testutil::random_dlo_rows(rng, 10, 3);
        std::uint64_t before = solve_invocations().load();
        DloSolution sol = dlo_solve(rows);
        REQUIRE(solve_invocations().load() == before);
        REQUIRE(eval(*sol.instance, sol.assignment));
    }
}

TEST_CASE("verdict parity with the SAT path") {
    std::mt19937 rng(2718);
    UniversalSentence guarded = dlo_theory(true);
    for (int iter = 0; iter < 15; ++iter) {
        auto rows = testutil::random_dlo_rows(rng, 8, 3);
        DloSolution fast = dlo_solve(rows);
        HcsSolution sat = hcs_solve(guarded, rows);  // throws on refutation
        REQUIRE(eval(*sat.instance, sat.assignment));
        REQUIRE(eval(*fast.instance, fast.assignment));
    }
}

TEST_CASE("the unguarded density axiom yields a Herbrand refutation") {
    UniversalSentence unguarded = dlo_theory(false);
    Signature sig = dlo_signature();
    std::vector<std::vector<TermPtr>> rows{
        {make_var("a"), make_var("a"), make_var("a")},
        {make_var("a"), parse_term("f(a, a)", sig), make_var("a")},
    };
    REQUIRE_THROWS_AS(hcs_solve(unguarded, rows), HerbrandRefutation);
    // exhaustive enumeration over the small atom core confirms
    HcsInstance inst = build_instance(unguarded.matrix, unguarded.vars, rows);
    REQUIRE(inst.atoms.size() <= 20);
    REQUIRE_FALSE(testutil::instance_satisfiable_by_enumeration(inst));
    // the guarded theory on the same rows is satisfiable
    REQUIRE_NOTHROW(hcs_solve(dlo_theory(true), rows));
}

TEST_CASE("dyadic arithmetic") {
    Dyadic a = Dyadic::from_int(0), b = Dyadic::from_int(1);
    Dyadic m = Dyadic::mid(a, b);
    REQUIRE(m.num == 1);
    REQUIRE(m.exp == 1);
    Dyadic q = Dyadic::mid(a, m);
    REQUIRE(q.num == 1);
    REQUIRE(q.exp == 2);
    REQUIRE(a < q);
    REQUIRE(q < m);
    REQUIRE(Dyadic::mid(Dyadic::from_int(2), Dyadic::from_int(4)) == Dyadic::from_int(3));
}
