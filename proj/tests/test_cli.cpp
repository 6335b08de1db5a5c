#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

// End-to-end checks of the command-line surface: exit codes, output files,
// determinism. The binary path and data directory come from the build.

namespace {

const std::string kCli = HCS_CLI_PATH;
const std::string kData = HCS_DATA_DIR;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    static int counter = 0;
    std::string tag = "/tmp/hcs_cli_test_" + std::to_string(counter++);
    std::string cmd = kCli + " " + args + " >" + tag + ".out 2>" + tag + ".err";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WEXITSTATUS(status);
    r.out = slurp(tag + ".out");
    r.err = slurp(tag + ".err");
    std::remove((tag + ".out").c_str());
    std::remove((tag + ".err").c_str());
    return r;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace

TEST_CASE("skolemize a sentence file") {
    write_file("/tmp/hcs_sk_in.fol", "forall x . exists y . R(x, y)\n");
    RunResult r = run("skolemize /tmp/hcs_sk_in.fol");
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "forall x . R(x, sk1(x))\n");
}

TEST_CASE("skolemize keeps an already-universal matrix byte-identical") {
    write_file("/tmp/hcs_sk_id.fol", "forall x . P(x) & R(x, x)\n");
    RunResult r = run("skolemize /tmp/hcs_sk_id.fol");
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "forall x . P(x) & R(x, x)\n");
}

TEST_CASE("malformed input exits 2 with a diagnostic") {
    write_file("/tmp/hcs_sk_bad.fol", "forall x . P(x\n");
    RunResult r = run("skolemize /tmp/hcs_sk_bad.fol");
    REQUIRE(r.code == 2);
    REQUIRE(r.err.find("parse error") != std::string::npos);
}

TEST_CASE("solve the guarded DLO fixture: exit 10 and an assignment") {
    RunResult r = run("solve " + kData + "/dlo/guarded.fol " + kData + "/dlo/rows_example.rows");
    REQUIRE(r.code == 10);
    REQUIRE(r.out.find("\t1") != std::string::npos);
}

TEST_CASE("solve the unguarded fixture on refuting rows: exit 20") {
    RunResult r = run("solve " + kData + "/dlo/unguarded.fol " + kData + "/dlo/refuting.rows");
    REQUIRE(r.code == 20);
    REQUIRE(r.out.find("REFUTATION") != std::string::npos);
}

TEST_CASE("cdcl and dpll give identical verdicts") {
    RunResult a = run("--engine cdcl solve " + kData + "/dlo/guarded.fol " + kData +
                      "/dlo/rows_example.rows");
    RunResult b = run("--engine dpll solve " + kData + "/dlo/guarded.fol " + kData +
                      "/dlo/rows_example.rows");
    REQUIRE(a.code == 10);
    REQUIRE(b.code == 10);
    RunResult c = run("--engine dpll solve " + kData + "/dlo/unguarded.fol " + kData +
                      "/dlo/refuting.rows");
    REQUIRE(c.code == 20);
    RunResult bad = run("--engine nosuch solve " + kData + "/dlo/guarded.fol " + kData +
                        "/dlo/rows_example.rows");
    REQUIRE(bad.code == 2);
}

TEST_CASE("dlo subcommand emits a verified assignment") {
    RunResult r = run("dlo " + kData + "/dlo/rows_example.rows");
    REQUIRE(r.code == 10);
    REQUIRE(r.out.find("lt(0, f(0, 1))\t1") != std::string::npos);
    RunResult bad = run("dlo " + kData + "/dlo/guarded.fol");
    REQUIRE(bad.code == 2);
}

TEST_CASE("ground exports DIMACS with a sidecar map") {
    RunResult r = run("--out /tmp/hcs_ground ground " + kData + "/dlo/guarded.fol " + kData +
                      "/dlo/rows_example.rows");
    REQUIRE(r.code == 0);
    std::string cnf = slurp("/tmp/hcs_ground.cnf");
    REQUIRE(cnf.rfind("p cnf ", 0) == 0);
    std::string map = slurp("/tmp/hcs_ground.map");
    REQUIRE(map.find("1 ") == 0);
}

TEST_CASE("tfnp decodes the complement witness, exit 0") {
    RunResult r = run("tfnp " + kData + "/machines/complement.json 10");
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "01\n");
}

TEST_CASE("tfnp --emit-dimacs writes files without solving") {
    RunResult r = run("--emit-dimacs --out /tmp/hcs_psi tfnp " + kData +
                      "/machines/complement.json 1");
    REQUIRE(r.code == 0);
    REQUIRE(slurp("/tmp/hcs_psi.cnf").rfind("p cnf ", 0) == 0);
    REQUIRE_FALSE(slurp("/tmp/hcs_psi.map").empty());
}

TEST_CASE("tfnp usage errors") {
    RunResult r = run("tfnp " + kData + "/machines/complement.json \"\"");
    REQUIRE(r.code == 2);
    RunResult r2 = run("tfnp " + kData + "/machines/complement.json 012");
    REQUIRE(r2.code == 2);
}

TEST_CASE("tfnp on the always-rejecting machine exits 20") {
    RunResult r = run("tfnp " + kData + "/machines/always_reject.json 1");
    REQUIRE(r.code == 20);
}

TEST_CASE("check subcommand") {
    RunResult a = run("check lA 8");
    REQUIRE(a.code == 0);
    REQUIRE(a.out == "pass\n");
    RunResult b = run("check lB 0110");
    REQUIRE(b.code == 0);
    REQUIRE(b.out == "pass\n");
    RunResult bad = run("check lA -1");
    REQUIRE(bad.code == 2);
    RunResult bad2 = run("check lB 21");
    REQUIRE(bad2.code == 2);
    RunResult bad3 = run("check lC 1");
    REQUIRE(bad3.code == 2);
}

TEST_CASE("reduce universal produces a verified assignment") {
    RunResult r = run("reduce universal --phi " + kData + "/reduce/phi_pq.fol --psi " + kData +
                      "/reduce/psi_q.fol --witness " + kData + "/reduce/witness.json --rows " +
                      kData + "/reduce/psi.rows");
    REQUIRE(r.code == 10);
    REQUIRE(r.out.find("Q(0)\t1") != std::string::npos);
    REQUIRE(r.err.find("HCS(Phi) query") != std::string::npos);
}

TEST_CASE("reduce with an invalid witness exits 2") {
    write_file("/tmp/hcs_wit_bad.json", "[[\"z\"]]\n");
    RunResult r = run("reduce universal --phi " + kData + "/reduce/phi_pq.fol --psi " + kData +
                      "/reduce/psi_q.fol --witness /tmp/hcs_wit_bad.json --rows " + kData +
                      "/reduce/psi.rows");
    REQUIRE(r.code == 2);
    REQUIRE(r.err.find("witness not a tautology") != std::string::npos);
}

TEST_CASE("reduce universal can search for its witness") {
    RunResult r = run("--depth 1 reduce universal --phi " + kData + "/reduce/phi_pq.fol --psi " +
                      kData + "/reduce/psi_q.fol --search-witness --rows " + kData +
                      "/reduce/psi.rows");
    REQUIRE(r.code == 10);
    REQUIRE(r.out.find("Q(0)\t1") != std::string::npos);
}

TEST_CASE("reduce constant-intro runs the two-case procedure") {
    RunResult r = run("reduce constant-intro --phi " + kData + "/reduce/phi_pq.fol --alpha " +
                      kData + "/reduce/alpha_q.txt --tau-rows " + kData +
                      "/reduce/tau.rows --sigma-rows " + kData + "/reduce/sigma.rows");
    REQUIRE(r.code == 10);
    REQUIRE(r.err.find("[case] 2") != std::string::npos);
    REQUIRE(r.out.find("Q(c1)\t1") != std::string::npos);
}

TEST_CASE("reduce existential logs two oracle calls") {
    RunResult r = run("reduce existential --phi " + kData + "/reduce/phi_pq.fol --alpha " + kData +
                      "/reduce/alpha_q.txt --witness " + kData + "/reduce/witness_b.json --rows " +
                      kData + "/reduce/psi.rows");
    REQUIRE(r.code == 10);
    std::size_t first = r.err.find("[oracle]");
    std::size_t second = r.err.find("[oracle]", first + 1);
    std::size_t third = r.err.find("[oracle]", second + 1);
    REQUIRE(first != std::string::npos);
    REQUIRE(second != std::string::npos);
    REQUIRE(third == std::string::npos);
    REQUIRE(r.out.find("Q(c1)\t1") != std::string::npos);
}

TEST_CASE("repeated invocations are byte-identical") {
    std::string invocation = "--out /tmp/hcs_det_a solve " + kData + "/dlo/guarded.fol " + kData +
                             "/dlo/rows_example.rows";
    REQUIRE(run(invocation).code == 10);
    std::string first = slurp("/tmp/hcs_det_a");
    REQUIRE(run(invocation).code == 10);
    REQUIRE(slurp("/tmp/hcs_det_a") == first);
    REQUIRE_FALSE(first.empty());
}
