// Command-line front end for the Herbrand consistency search toolkit.
//
// Subcommands: skolemize, ground, solve, dlo, tfnp, reduce, check.
// Exit codes: 0 success (non-solving subcommands), 10 satisfying assignment
// produced, 20 UNSAT / Herbrand refutation, 2 usage or validation error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcs/dlo.hpp"
#include "hcs/herbrand.hpp"
#include "hcs/parse.hpp"
#include "hcs/reductions.hpp"
#include "hcs/tfnp.hpp"

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << content;
}

hcs::SolveOptions solve_options(const std::string& engine, std::int64_t seed) {
    hcs::SolveOptions opts;
    if (engine == "dpll") opts.engine = hcs::SolveOptions::Engine::Dpll;
    else if (engine != "cdcl") throw CLI::ValidationError("--engine must be cdcl or dpll");
    if (seed >= 0) opts.phase_seed = static_cast<std::uint32_t>(seed);
    return opts;
}

// Parses a sentence file (signature inferred), skolemizes, and merges into a
// single universal sentence.
struct LoadedTheory {
    hcs::Signature sig;
    std::vector<hcs::UniversalSentence> conjuncts;
    hcs::UniversalSentence merged;
};

LoadedTheory load_theory(const std::string& path) {
    LoadedTheory th;
    auto sentences = hcs::parse_sentences_infer(read_file(path), th.sig);
    auto [us, ext] = hcs::skolemize(sentences, th.sig);
    th.sig = ext;
    th.conjuncts = std::move(us);
    th.merged = hcs::merge_universals(th.conjuncts);
    return th;
}

std::vector<std::vector<hcs::TermPtr>> load_rows(const std::string& path,
                                                 const hcs::Signature& sig,
                                                 std::size_t arity) {
    auto rows = hcs::parse_rows(read_file(path), sig);
    if (rows.empty() && arity == 0) rows.push_back({});
    for (const auto& r : rows)
        if (r.size() != arity)
            throw std::runtime_error("row arity mismatch: sentence has " + std::to_string(arity) +
                                     " variables, row has " + std::to_string(r.size()) + " terms");
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Herbrand consistency search toolkit"};
    app.require_subcommand(1);

    std::string engine = "cdcl";
    std::int64_t seed = -1;
    int depth = 2;
    bool emit_dimacs = false;
    std::string out_path;
    app.add_option("--engine", engine, "SAT engine: cdcl or dpll")->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized decision phases (default: none)");
    app.add_option("--depth", depth, "depth cap for witness search / term enumeration")
        ->capture_default_str();
    app.add_flag("--emit-dimacs", emit_dimacs, "emit DIMACS + atom map instead of solving");
    app.add_option("--out", out_path, "output file (or prefix for DIMACS exports)");

    // skolemize
    std::string sk_in;
    auto* sk = app.add_subcommand("skolemize", "skolemize a sentence file");
    sk->add_option("file", sk_in, "sentence file")->required();

    // ground
    std::string gr_sent, gr_rows;
    auto* gr = app.add_subcommand("ground", "ground a theory over term rows, export DIMACS");
    gr->add_option("file", gr_sent, "sentence file")->required();
    gr->add_option("rows", gr_rows, "rows file")->required();

    // solve
    std::string so_sent, so_rows;
    auto* so = app.add_subcommand("solve", "Herbrand consistency search");
    so->add_option("file", so_sent, "sentence file")->required();
    so->add_option("rows", so_rows, "rows file")->required();

    // dlo
    std::string dlo_rows;
    auto* dl = app.add_subcommand("dlo", "dense-linear-order solver (no SAT engine)");
    dl->add_option("rows", dlo_rows, "rows file of term triples")->required();

    // tfnp
    std::string tf_machine, tf_word;
    auto* tf = app.add_subcommand("tfnp", "compile a machine to Psi_w and decode a witness");
    tf->add_option("machine", tf_machine, "TmSpec JSON file")->required();
    tf->add_option("word", tf_word, "input word over {0,1}")->required();

    // reduce
    std::string rd_mode, rd_phi, rd_psi, rd_alpha, rd_witness, rd_rows, rd_tau, rd_sigma;
    bool rd_search = false;
    auto* rd = app.add_subcommand("reduce", "reductions among HCS problems");
    rd->add_option("mode", rd_mode, "universal | constant-intro | existential")->required();
    rd->add_option("--phi", rd_phi, "phi sentence file");
    rd->add_option("--psi", rd_psi, "psi sentence file (universal mode)");
    rd->add_option("--alpha", rd_alpha, "alpha file: first line variables, then the formula");
    rd->add_option("--witness", rd_witness, "witness JSON (array of term-string rows)");
    rd->add_option("--rows", rd_rows, "psi rows file");
    rd->add_option("--tau-rows", rd_tau, "tau rows file (constant-intro mode)");
    rd->add_option("--sigma-rows", rd_sigma, "sigma rows file (constant-intro mode)");
    rd->add_flag("--search-witness", rd_search, "search for a witness up to --depth");

    // check
    std::string ck_lemma, ck_param;
    auto* ck = app.add_subcommand("check", "run the lemma entailment checks");
    ck->add_option("lemma", ck_lemma, "lA or lB")->required();
    ck->add_option("param", ck_param, "n for lA, a word over {0,1} for lB")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        hcs::SolveOptions opts = solve_options(engine, seed);

        if (*sk) {
            hcs::Signature sig;
            auto sentences = hcs::parse_sentences_infer(read_file(sk_in), sig);
            auto [us, ext] = hcs::skolemize(sentences, sig);
            std::ostringstream ss;
            for (std::size_t i = 0; i < us.size(); ++i) {
                if (i) ss << "\n";
                hcs::print_sentence(ss, hcs::to_prenex(us[i]));
            }
            ss << "\n";
            write_output(out_path, ss.str());
            return 0;
        }

        if (*gr) {
            LoadedTheory th = load_theory(gr_sent);
            auto rows = load_rows(gr_rows, th.sig, th.merged.vars.size());
            hcs::HcsInstance inst =
                hcs::build_instance(th.merged.matrix, th.merged.vars, rows);
            hcs::Cnf cnf = hcs::to_cnf(inst);
            std::string prefix = out_path.empty() ? std::string("out") : out_path;
            {
                std::ofstream cf(prefix + ".cnf", std::ios::binary);
                hcs::write_dimacs(cf, cnf);
                std::ofstream mf(prefix + ".map", std::ios::binary);
                hcs::write_atom_map(mf, inst);
            }
            std::cout << "wrote " << prefix << ".cnf (" << cnf.num_vars << " vars, "
                      << cnf.num_clauses() << " clauses) and " << prefix << ".map\n";
            return 0;
        }

        if (*so) {
            LoadedTheory th = load_theory(so_sent);
            auto rows = load_rows(so_rows, th.sig, th.merged.vars.size());
            try {
                hcs::HcsSolution sol = hcs::hcs_solve(th.merged, rows, opts);
                write_output(out_path, hcs::assignment_to_text(*sol.instance, sol.assignment));
                return kExitSat;
            } catch (const hcs::HerbrandRefutation& e) {
                std::ostringstream ss;
                ss << "REFUTATION: " << e.what() << "\n"
                   << "rows: " << e.instance->rows.size()
                   << ", atoms: " << e.instance->atoms.size() << "\n";
                write_output(out_path, ss.str());
                return kExitUnsat;
            }
        }

        if (*dl) {
            auto rows = hcs::parse_rows(read_file(dlo_rows), hcs::dlo_signature());
            for (const auto& r : rows)
                if (r.size() != 3)
                    throw std::runtime_error("dlo rows must be triples");
            hcs::DloSolution sol = hcs::dlo_solve(rows);
            write_output(out_path, hcs::assignment_to_text(*sol.instance, sol.assignment));
            return kExitSat;
        }

        if (*tf) {
            if (tf_word.empty() ||
                tf_word.find_first_not_of("01") != std::string::npos) {
                std::cerr << "error: word must be a nonempty string over {0,1}\n";
                return kExitUsage;
            }
            hcs::TmSpec m = hcs::load_tmspec_file(tf_machine);
            if (emit_dimacs) {
                hcs::HcsInstance inst = hcs::build_psi_w(m, tf_word);
                hcs::Cnf cnf = hcs::to_cnf(inst);
                std::string prefix = out_path.empty() ? std::string("psi_w") : out_path;
                std::ofstream cf(prefix + ".cnf", std::ios::binary);
                hcs::write_dimacs(cf, cnf);
                std::ofstream mf(prefix + ".map", std::ios::binary);
                hcs::write_atom_map(mf, inst);
                std::cout << "wrote " << prefix << ".cnf (" << cnf.num_vars << " vars, "
                          << cnf.num_clauses() << " clauses) and " << prefix << ".map\n";
                return 0;
            }
            try {
                hcs::TfnpSolution sol = hcs::reduce_and_solve(m, tf_word, opts);
                std::cout << sol.witness << "\n";
                if (!out_path.empty()) write_output(out_path, sol.witness + "\n");
                return 0;
            } catch (const hcs::HerbrandRefutation& e) {
                std::cerr << "REFUTATION: " << e.what() << "\n";
                return kExitUnsat;
            }
        }

        if (*ck) {
            bool ok;
            if (ck_lemma == "lA") {
                std::size_t pos = 0;
                int n;
                try {
                    n = std::stoi(ck_param, &pos);
                } catch (...) {
                    pos = std::string::npos;
                    n = -1;
                }
                if (pos != ck_param.size() || n < 0) {
                    std::cerr << "error: lA parameter must be an integer >= 0\n";
                    return kExitUsage;
                }
                ok = hcs::lemma_a_check(n, opts);
            } else if (ck_lemma == "lB") {
                if (ck_param.empty() ||
                    ck_param.find_first_not_of("01") != std::string::npos) {
                    std::cerr << "error: lB parameter must be a nonempty word over {0,1}\n";
                    return kExitUsage;
                }
                ok = hcs::lemma_b_check(ck_param, opts);
            } else {
                std::cerr << "error: lemma must be lA or lB\n";
                return kExitUsage;
            }
            std::cout << (ok ? "pass" : "fail") << "\n";
            return ok ? 0 : 1;
        }

        if (*rd) {
            hcs::OracleLog log;
            hcs::HcsOracle oracle = hcs::sat_oracle(opts);

            auto load_alpha = [&](hcs::Signature& sig) {
                std::string text = read_file(rd_alpha);
                std::istringstream in(text);
                std::string varline;
                std::getline(in, varline);
                std::vector<std::string> vars;
                std::istringstream vl(varline);
                std::string v;
                while (vl >> v) vars.push_back(v);
                std::string rest((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
                hcs::FormulaPtr alpha = hcs::parse_open_formula(rest, sig, vars);
                return std::make_pair(alpha, vars);
            };
            auto load_witness = [&](const hcs::Signature& sig) {
                nlohmann::json j = nlohmann::json::parse(read_file(rd_witness));
                hcs::HerbrandWitness w;
                for (const auto& row : j) {
                    std::vector<hcs::TermPtr> terms;
                    for (const auto& s : row)
                        terms.push_back(hcs::parse_term(s.get<std::string>(), sig));
                    w.tau.push_back(std::move(terms));
                }
                return w;
            };

            if (rd_mode == "universal") {
                LoadedTheory phi = load_theory(rd_phi);
                hcs::Signature sig = phi.sig;
                auto psi_sentences = hcs::parse_sentences_infer(read_file(rd_psi), sig);
                auto [psi_us, sig2] = hcs::skolemize(psi_sentences, sig);
                sig = sig2;
                hcs::UniversalSentence psi = hcs::merge_universals(psi_us);
                for (std::size_t j = 1; j <= psi.vars.size(); ++j) {
                    std::string c = "c" + std::to_string(j);
                    if (!sig.has_function(c)) sig.add_function(c, 0);
                }
                auto rows = load_rows(rd_rows, sig, psi.vars.size());
                hcs::HerbrandWitness wit;
                if (rd_search) {
                    auto found = hcs::search_witness(phi.merged, psi, sig, depth);
                    if (!found) {
                        std::cerr << "witness not found up to depth " << depth << "\n";
                        return kExitUsage;
                    }
                    wit = *found;
                } else {
                    wit = load_witness(sig);
                }
                try {
                    auto red = hcs::reduce_universal(phi.merged, psi, wit, rows, {}, opts);
                    hcs::Assignment out = hcs::reduce_universal_solve(red, oracle, log);
                    for (const auto& note : log.notes) std::cerr << "[oracle] " << note << "\n";
                    write_output(out_path, hcs::assignment_to_text(*red.psi_instance, out));
                    return kExitSat;
                } catch (const std::invalid_argument& e) {
                    std::cerr << "error: " << e.what() << "\n";
                    return kExitUsage;
                }
            } else if (rd_mode == "constant-intro") {
                LoadedTheory phi = load_theory(rd_phi);
                hcs::Signature sig = phi.sig;
                auto [alpha, avars] = load_alpha(sig);
                std::vector<std::string> consts;
                for (std::size_t j = 1; j <= avars.size(); ++j) {
                    consts.push_back("c" + std::to_string(j));
                    if (!sig.has_function(consts.back())) sig.add_function(consts.back(), 0);
                }
                auto tau = load_rows(rd_tau, sig, phi.merged.vars.size());
                auto sigma = load_rows(rd_sigma, sig, avars.size());
                auto res = hcs::reduce_constant_intro(phi.merged, alpha, avars, consts, tau,
                                                      sigma, oracle, log);
                for (const auto& note : log.notes) std::cerr << "[oracle] " << note << "\n";
                std::cerr << "[case] " << (res.case2 ? "2" : "1") << "\n";
                write_output(out_path, hcs::assignment_to_text(*res.instance, res.assignment));
                return kExitSat;
            } else if (rd_mode == "existential") {
                LoadedTheory phi = load_theory(rd_phi);
                hcs::Signature sig = phi.sig;
                auto [alpha, avars] = load_alpha(sig);
                for (std::size_t j = 1; j <= avars.size(); ++j) {
                    std::string c = "c" + std::to_string(j);
                    if (!sig.has_function(c)) sig.add_function(c, 0);
                }
                for (std::size_t j = 1; j <= phi.merged.vars.size(); ++j) {
                    std::string b = "b" + std::to_string(j);
                    if (!sig.has_function(b)) sig.add_function(b, 0);
                }
                auto rows = load_rows(rd_rows, sig, phi.merged.vars.size());
                hcs::HerbrandWitness wit = load_witness(sig);
                try {
                    auto res = hcs::reduce_existential(phi.merged, alpha, avars, wit, rows,
                                                       oracle, log);
                    for (const auto& note : log.notes) std::cerr << "[oracle] " << note << "\n";
                    write_output(out_path,
                                 hcs::assignment_to_text(*res.psi_instance, res.assignment));
                    return kExitSat;
                } catch (const std::invalid_argument& e) {
                    std::cerr << "error: " << e.what() << "\n";
                    return kExitUsage;
                }
            } else {
                std::cerr << "error: mode must be universal, constant-intro or existential\n";
                return kExitUsage;
            }
        }
    } catch (const hcs::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
