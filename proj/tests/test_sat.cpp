#include <catch2/catch_amalgamated.hpp>

#include "hcs/lemmas.hpp"
#include "hcs/parse.hpp"

#include "testutil.hpp"

using namespace hcs;

namespace {
Cnf of(std::vector<std::vector<std::int32_t>> clauses, int vars) {
    Cnf cnf;
    cnf.num_vars = vars;
    for (auto& c : clauses) cnf.add_clause(c);
    return cnf;
}
}  // namespace

TEST_CASE("tautological clause is SAT") {
    REQUIRE(solve(of({{1, -1}}, 1)).sat);
}

TEST_CASE("unit contradiction is UNSAT") {
    REQUIRE_FALSE(solve(of({{1}, {-1}}, 1)).sat);
}

TEST_CASE("brute force basics") {
    SatResult r = brute_force(of({{1}, {2}}, 2));
    REQUIRE(r.sat);
    REQUIRE(r.model == std::vector<std::uint8_t>{1, 1});
    REQUIRE_FALSE(brute_force(of({{1, 2}, {-1}, {-2}}, 2)).sat);
    REQUIRE_THROWS(brute_force(of({{1}}, 25)));
}

TEST_CASE("brute force returns the lexicographically first model") {
    // (v1 | v2): first in order (F,F),(F,T),(T,F),(T,T) satisfying is (F,T)
    SatResult r = brute_force(of({{1, 2}}, 2));
    REQUIRE(r.sat);
    REQUIRE(r.model == std::vector<std::uint8_t>{0, 1});
}

TEST_CASE("solve agrees with brute force on random CNFs, both engines") {
    std::mt19937 rng(1234);
    for (int i = 0; i < 300; ++i) {
        Cnf cnf = testutil::random_cnf(rng, 10, 40);
        SatResult oracle = brute_force(cnf);
        SatResult cdcl = solve(cnf);
        REQUIRE(cdcl.sat == oracle.sat);
        SolveOptions dpll;
        dpll.engine = SolveOptions::Engine::Dpll;
        REQUIRE(solve(cnf, dpll).sat == oracle.sat);
    }
}

TEST_CASE("randomized phases still give verified models and the same verdict") {
    std::mt19937 rng(777);
    for (int i = 0; i < 50; ++i) {
        Cnf cnf = testutil::random_cnf(rng, 12, 30);
        bool expect = brute_force(cnf).sat;
        for (std::uint32_t seed : {1u, 2u, 3u}) {
            SolveOptions opts;
            opts.phase_seed = seed;
            REQUIRE(solve(cnf, opts).sat == expect);
        }
    }
}

TEST_CASE("solve handles empty and trivial inputs") {
    Cnf empty;
    empty.num_vars = 0;
    REQUIRE(solve(empty).sat);
    Cnf empty_clause = of({{}}, 1);
    REQUIRE_FALSE(solve(empty_clause).sat);
    REQUIRE_FALSE(brute_force(empty_clause).sat);
}

TEST_CASE("entails: axiom-2 instance forces 0 != S(0)") {
    HcsInstance inst = build_instance(wordax::lemma_a_matrix(), {"r", "s", "t"},
                                      {{numeral(0), numeral(0), numeral(0)}});
    REQUIRE(entails(inst, {{{"eq", {numeral(0), numeral(1)}}, false}}));
}

TEST_CASE("entails: the empty conjunction entails nothing contingent") {
    HcsInstance empty = build_ground_instance({});
    Signature sig;
    sig.add_predicate("P", 1);
    sig.add_function("0", 0);
    REQUIRE_FALSE(entails(empty, {{{"P", {make_const("0")}}, true}}));
    REQUIRE(entails(empty, {}));  // empty target set
}

TEST_CASE("entails is monotone in targets on random splits") {
    std::mt19937 rng(4242);
    std::vector<TermPtr> nums;
    for (int i = 0; i <= 3; ++i) nums.push_back(numeral(i));
    std::vector<std::vector<TermPtr>> rows;
    for (const auto& a : nums)
        for (const auto& b : nums)
            for (const auto& c : nums) rows.push_back({a, b, c});
    HcsInstance inst = build_instance(wordax::lemma_a_matrix(), {"r", "s", "t"}, rows);
    std::vector<GroundLiteral> all;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j)
            if (i != j) all.push_back({{"eq", {nums[i], nums[j]}}, false});
    REQUIRE(entails(inst, all));
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<GroundLiteral> subset;
        for (const auto& lit : all)
            if (rng() & 1) subset.push_back(lit);
        REQUIRE(entails(inst, subset));
    }
}

TEST_CASE("every SAT model satisfies all clauses") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 100; ++i) {
        Cnf cnf = testutil::random_cnf(rng, 14, 50);
        SatResult res = solve(cnf);
        if (!res.sat) continue;
        for (std::size_t c = 0; c < cnf.num_clauses(); ++c) {
            auto [b, e] = cnf.clause(c);
            bool ok = false;
            for (const std::int32_t* p = b; p != e; ++p)
                ok |= (*p > 0) == (res.model[std::abs(*p) - 1] != 0);
            REQUIRE(ok);
        }
    }
}
