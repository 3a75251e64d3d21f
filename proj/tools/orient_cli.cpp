// Command-line front end: workload generation, execution with metrics/verify
// output, and the counter-game stress probe.
//
// Exit codes: 0 ok, 1 usage or I/O failure, 2 verification failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "orient/runner.hpp"

using namespace orient;

int main(int argc, char** argv) {
    CLI::App app{"batch-dynamic low out-degree orientation toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a workload file");
    std::string gen_kind = "forest-stars", gen_out;
    int gen_n = 1000, gen_batches = 100, gen_batch_size = 50;
    int64_t gen_c = 1;
    uint64_t gen_seed = 1;
    gen->add_option("--kind", gen_kind, "forest-stars | k-forest-union | sliding-window | adversarial-hub");
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--c", gen_c, "arboricity bound");
    gen->add_option("--batches", gen_batches, "number of batches");
    gen->add_option("--batch-size", gen_batch_size, "edges per batch");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output file (stdout when omitted)");

    // run
    auto* run = app.add_subcommand("run", "run a workload and emit metrics");
    std::string run_in, run_algo = "amortized", run_metrics, run_reports;
    bool run_verify = false, run_det = false;
    uint64_t run_seed = 1;
    std::vector<std::string> run_params;
    run->add_option("--in", run_in, "workload file")->required();
    run->add_option("--algo", run_algo, "amortized | twostage | reinsertion");
    run->add_flag("--verify", run_verify, "run the verification suite per batch");
    run->add_flag("--deterministic", run_det, "deterministic primitives; reproducible output");
    run->add_option("--seed", run_seed, "run seed");
    run->add_option("--params", run_params, "key=val overrides (tau_star, tau_prime, tau, delta, sigma, eps)");
    run->add_option("--metrics", run_metrics, "metrics CSV file (stdout when omitted)");
    run->add_option("--reports", run_reports, "verification reports, JSON lines");

    // counter-stress
    auto* cs = app.add_subcommand("counter-stress", "adversarial counter-game probe");
    int cs_n = 256, cs_moves = 1000;
    std::string cs_y = "4", cs_h = "3";
    uint64_t cs_seed = 1;
    cs->add_option("n", cs_n, "number of counters")->required();
    cs->add_option("Y", cs_y, "starting weight (rational a/b allowed)")->required();
    cs->add_option("H", cs_h, "cap (rational a/b allowed)")->required();
    cs->add_option("moves", cs_moves, "moves to play")->required();
    cs->add_option("--seed", cs_seed, "adversary seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const auto w = gen_workload(gen_kind, gen_n, gen_c, gen_batches, gen_batch_size, gen_seed);
            if (gen_out.empty()) {
                write_workload(w, std::cout);
            } else {
                std::ofstream os(gen_out);
                if (!os) throw Error("cannot open " + gen_out);
                write_workload(w, os);
            }
            return 0;
        }
        if (*run) {
            std::ifstream is(run_in);
            if (!is) throw Error("cannot open " + run_in);
            const auto w = read_workload(is);
            RunOptions opts;
            opts.algo = algo_from_string(run_algo);
            opts.verify = run_verify;
            opts.deterministic = run_det;
            opts.seed = run_seed;
            for (const auto& kv : run_params) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw Error("malformed --params entry " + kv);
                opts.params[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            std::ofstream reports;
            std::ostream* rep = nullptr;
            if (!run_reports.empty()) {
                reports.open(run_reports);
                if (!reports) throw Error("cannot open " + run_reports);
                rep = &reports;
            }
            const auto res = run_workload(w, opts, rep);
            if (run_metrics.empty()) {
                std::cout << res.csv;
            } else {
                std::ofstream os(run_metrics);
                if (!os) throw Error("cannot open " + run_metrics);
                os << res.csv;
            }
            std::cout << "final_digest=" << res.digest << " max_outdegree=" << res.final_max_outdegree
                      << " edges=" << res.final_edges << "\n";
            if (!res.verify_ok) {
                for (const auto& v : res.violations) std::cerr << "verification failure: " << v << "\n";
                return 2;
            }
            return 0;
        }
        if (*cs) {
            auto parse_rat = [](const std::string& s) {
                const auto slash = s.find('/');
                if (slash == std::string::npos) return Rational(std::stoll(s));
                return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
            };
            const auto r = counter_stress(cs_n, parse_rat(cs_y), parse_rat(cs_h), cs_moves, cs_seed);
            std::cout << "moves=" << r.moves << " max_weight=" << r.max_weight.str()
                      << " bound=" << r.bound.str() << " within_bound=" << (r.within_bound ? "yes" : "no")
                      << "\n";
            return r.within_bound ? 0 : 2;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
