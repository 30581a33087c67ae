// minorforge: batch experiment harness for complete minors in sparse random
// graphs. Subcommands: sample (write one graph), minor (builder sweeps),
// phase (critical-window sweeps), oracle (small-graph regression checks).
//
// Exit codes: 0 all trials ok and verified, 1 verification failure or
// non-ok trial, 2 bad arguments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "minorforge/builder.hpp"
#include "minorforge/experiment.hpp"
#include "minorforge/kernel.hpp"
#include "minorforge/models.hpp"
#include "minorforge/multigraph.hpp"
#include "minorforge/oracle.hpp"

namespace mf = minorforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitBadArguments = 2;

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("MINORFORGE_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw CLI::ValidationError("MINORFORGE_SEED", "not a valid 64-bit seed");
        }
    }
    return cli_seed;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw CLI::ValidationError("--out", "cannot open " + path);
    return file;
}

int emit_rows(const std::vector<mf::ExperimentRow>& rows, const std::string& out_path) {
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    mf::write_csv(os, rows);
    for (const auto& row : rows)
        if (!row.ok_and_verified()) return kExitVerifyFailure;
    return kExitOk;
}

int cmd_sample(const std::string& model, std::uint64_t n, std::uint32_t r, std::uint64_t m,
               double p, std::uint64_t seed, const std::string& out_path) {
    mf::RandomSource source(seed);
    mf::RngStream rng = source.stream(0);
    mf::MultiGraph graph;
    mf::SampleDiagnostics diag;

    if (model == "gstar") {
        graph = mf::sample_g_star(static_cast<std::uint32_t>(n), r, rng);
    } else if (model == "gprime") {
        graph = mf::sample_g_prime(static_cast<std::uint32_t>(n), r, rng, &diag);
    } else if (model == "gsimple") {
        auto [g, d] = mf::sample_g_simple(static_cast<std::uint32_t>(n), r, rng);
        graph = std::move(g);
        diag = d;
    } else if (model == "hm") {
        mf::ModelInstance inst =
            mf::sample_hamilton_plus_matching(static_cast<std::uint32_t>(n), rng, &diag);
        graph = mf::instance_to_graph(inst);
    } else if (model == "gnm") {
        graph = mf::sample_gnm(static_cast<std::uint32_t>(n), m, rng);
    } else if (model == "gnp") {
        graph = mf::sample_gnp(static_cast<std::uint32_t>(n), p, rng);
    } else {
        throw CLI::ValidationError("model", "unknown model " + model);
    }

    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    mf::write_graph_text(os, graph);
    std::cerr << "# sample model=" << model << " n=" << n << " seed=" << seed
              << " edges=" << graph.edge_count() << " rejections=" << diag.rejections
              << " p1p2_edges=" << diag.p1p2_edge_count
              << " in_xrange_window=" << (diag.in_xrange_window ? 1 : 0) << '\n';
    return kExitOk;
}

int cmd_oracle_regressions(std::uint32_t max_n, std::uint64_t seed);

int cmd_oracle_verify(const std::string& cert_path, const std::string& host_path) {
    std::ifstream cert_in(cert_path);
    if (!cert_in) throw CLI::ValidationError("--verify-cert", "cannot open " + cert_path);
    std::stringstream buffer;
    buffer << cert_in.rdbuf();
    mf::MinorCertificate cert = mf::certificate_from_json(buffer.str());

    std::ifstream host_in(host_path);
    if (!host_in) throw CLI::ValidationError("--host", "cannot open " + host_path);
    mf::MultiGraph host = mf::read_graph_text(host_in);

    mf::VerifyResult res = mf::verify_certificate(cert, host);
    if (res.ok) {
        std::cout << "valid certificate: order " << cert.order << '\n';
        return kExitOk;
    }
    std::cout << "invalid certificate: " << res.detail << '\n';
    return kExitVerifyFailure;
}

int cmd_oracle_regressions(std::uint32_t max_n, std::uint64_t seed) {
    int violations = 0;
    auto report = [&](const std::string& what) {
        ++violations;
        std::cout << "VIOLATION: " << what << '\n';
    };

    std::uint32_t enum_cap = std::min<std::uint32_t>(max_n, 7);
    for (std::uint32_t n = 1; n <= enum_cap; ++n) {
        auto masks = mf::enumerate_unlabeled_graphs(n, /*connected_only=*/true);
        for (std::uint64_t mask : masks) {
            mf::MultiGraph g = mf::graph_from_edge_mask(n, mask);
            mf::CclResult exact = mf::exact_ccl(g, 9);
            if (exact.value >= 2) {
                mf::VerifyResult v = mf::verify_certificate(exact.witness, g);
                if (!v.ok)
                    report("exact witness fails verify on n=" + std::to_string(n) +
                           " mask=" + std::to_string(mask) + ": " + v.detail);
            }
            if (exact.value > mf::edge_upper_bound(g))
                report("exact value beats the edge bound on mask " + std::to_string(mask));
            auto comps = mf::connected_components(g);
            mf::ExcessReport exc = mf::component_excess(g, comps[0], 0);
            std::int64_t k_exc = static_cast<std::int64_t>(exact.value) *
                                     (static_cast<std::int64_t>(exact.value) - 1) / 2 -
                                 static_cast<std::int64_t>(exact.value) + 1;
            if (exact.value >= 2 && k_exc > exc.excess)
                report("excess monotonicity fails on mask " + std::to_string(mask));
        }
        std::cout << "n=" << n << ": checked " << masks.size() << " connected graphs\n";
    }

    // Random graphs between the enumeration cap and max_n: heuristic <= exact.
    mf::RandomSource source(seed);
    mf::RngStream sample_rng = source.stream(0);
    mf::RngStream greedy_rng = source.stream(1);
    std::uint32_t checked = 0;
    for (std::uint32_t attempt = 0; attempt < 4000 && checked < 500; ++attempt) {
        std::uint32_t n = 4 + static_cast<std::uint32_t>(sample_rng.below(
                                  std::max<std::uint32_t>(1, max_n - 3)));
        mf::MultiGraph g =
            mf::sample_gnp(n, 0.25 + 0.5 * sample_rng.unit(), sample_rng);
        if (mf::connected_components(g).size() != 1) continue;
        ++checked;
        mf::CclResult exact = mf::exact_ccl(g, 9);
        mf::CclResult greedy = mf::greedy_minor(g, g.vertex_count(), greedy_rng, 8);
        if (greedy.value > exact.value)
            report("greedy beats exact on a random graph with n=" + std::to_string(n));
        if (greedy.value >= 2 && !mf::verify_certificate(greedy.witness, g).ok)
            report("greedy witness fails verify on a random graph");
    }
    std::cout << "random spot checks: " << checked << " graphs\n";

    if (violations > 0) {
        std::cout << violations << " violations\n";
        return kExitVerifyFailure;
    }
    std::cout << "all oracle checks passed\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minorforge: complete minors in sparse random graphs"};
    app.set_version_flag("--version", "minorforge 0.1.0");
    app.require_subcommand(1);

    // --- sample ---
    auto* sample = app.add_subcommand("sample", "sample one random graph to a file");
    std::string sample_model;
    std::uint64_t sample_n = 1000, sample_m = 0, sample_seed = 0;
    std::uint32_t sample_r = 3;
    double sample_p = 0.0;
    std::string sample_out;
    sample->add_option("model", sample_model, "gstar|gprime|gsimple|hm|gnm|gnp")->required();
    sample->add_option("--n", sample_n, "vertex count")->required();
    sample->add_option("--r", sample_r, "degree (configuration models)");
    sample->add_option("--m", sample_m, "edge count (gnm)");
    sample->add_option("--p", sample_p, "edge probability (gnp)");
    sample->add_option("--seed", sample_seed, "master seed");
    sample->add_option("--out", sample_out, "output file (default stdout)");

    // --- minor ---
    auto* minor = app.add_subcommand("minor", "staged branch-set builder sweep");
    std::uint64_t minor_n = 1 << 14, minor_trials = 1, minor_seed = 0;
    double minor_epsilon = 0.3;
    std::string minor_mode = "practical", minor_out, minor_dump;
    unsigned minor_parallel = 1;
    minor->add_option("--n", minor_n, "host size (even, >= 4)")->required();
    minor->add_option("--epsilon", minor_epsilon, "builder epsilon in (0,1)");
    minor->add_option("--mode", minor_mode, "faithful|practical");
    minor->add_option("--trials", minor_trials, "trial count");
    minor->add_option("--seed", minor_seed, "master seed");
    minor->add_option("--parallel", minor_parallel, "worker threads");
    minor->add_option("--out", minor_out, "CSV output file (default stdout)");
    minor->add_option("--dump-certs", minor_dump, "directory for certificate JSON");

    // --- phase ---
    auto* phase = app.add_subcommand("phase", "critical-window sweep");
    std::uint64_t phase_n = 200000, phase_trials = 1, phase_seed = 0;
    std::vector<double> phase_lambdas;
    bool phase_gnp = false;
    unsigned phase_parallel = 1;
    std::string phase_out;
    phase->add_option("--n", phase_n, "vertex count")->required();
    phase->add_option("--lambda", phase_lambdas,
                      "window parameters (edge-count form unless --gnp)")
        ->required();
    phase->add_flag("--gnp", phase_gnp, "sample G(n,p) with p=(1+lambda n^{-1/3})/n");
    phase->add_option("--trials", phase_trials, "trials per lambda");
    phase->add_option("--seed", phase_seed, "master seed");
    phase->add_option("--parallel", phase_parallel, "worker threads");
    phase->add_option("--out", phase_out, "CSV output file (default stdout)");

    // --- oracle ---
    auto* oracle = app.add_subcommand("oracle", "small-graph oracle regressions");
    std::uint32_t oracle_max_n = 7;
    std::uint64_t oracle_seed = 0;
    std::string oracle_cert, oracle_host;
    oracle->add_option("--max-n", oracle_max_n, "largest graph order (<= 9)")
        ->check(CLI::Range(1u, 9u));
    oracle->add_option("--seed", oracle_seed, "master seed");
    oracle->add_option("--verify-cert", oracle_cert, "certificate JSON to verify");
    oracle->add_option("--host", oracle_host, "host graph file for --verify-cert");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadArguments;
    }

    try {
        if (sample->parsed()) {
            return cmd_sample(sample_model, sample_n, sample_r, sample_m, sample_p,
                              effective_seed(sample_seed), sample_out);
        }
        if (minor->parsed()) {
            auto mode = mf::build_mode_from_string(minor_mode);
            if (!mode) {
                std::cerr << "error: --mode must be faithful or practical\n";
                return kExitBadArguments;
            }
            mf::MinorSweepConfig cfg;
            cfg.n = minor_n;
            cfg.epsilon = minor_epsilon;
            cfg.mode = *mode;
            cfg.trials = minor_trials;
            cfg.seed = effective_seed(minor_seed);
            cfg.parallelism = minor_parallel;
            cfg.dump_dir = minor_dump;
            return emit_rows(mf::run_minor_sweep(cfg), minor_out);
        }
        if (phase->parsed()) {
            mf::PhaseSweepConfig cfg;
            cfg.n = phase_n;
            cfg.lambdas = phase_lambdas;
            cfg.lambda_is_bar = !phase_gnp;
            cfg.trials = phase_trials;
            cfg.seed = effective_seed(phase_seed);
            cfg.parallelism = phase_parallel;
            std::vector<mf::PhaseReport> reports;
            auto rows = mf::run_phase_sweep(cfg, &reports);
            int code = emit_rows(rows, phase_out);
            for (const auto& s : mf::summarize_phase(cfg, reports)) {
                std::cerr << "# summary lambda=" << mf::format_double(s.lambda)
                          << " median_l1_excess=" << mf::format_double(s.median_l1_excess)
                          << " median_kernel_order=" << mf::format_double(s.median_kernel_order)
                          << " median_ccl_lower=" << mf::format_double(s.median_ccl_lower)
                          << " median_ccl_upper=" << mf::format_double(s.median_ccl_upper)
                          << '\n';
            }
            return code;
        }
        if (oracle->parsed()) {
            if (!oracle_cert.empty() || !oracle_host.empty()) {
                if (oracle_cert.empty() || oracle_host.empty()) {
                    std::cerr << "error: --verify-cert and --host go together\n";
                    return kExitBadArguments;
                }
                return cmd_oracle_verify(oracle_cert, oracle_host);
            }
            return cmd_oracle_regressions(oracle_max_n, effective_seed(oracle_seed));
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArguments;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArguments;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerifyFailure;
    }
    return kExitBadArguments;
}
