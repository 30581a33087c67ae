#include "minorforge/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include "minorforge/oracle.hpp"

namespace minorforge {

namespace {

std::string join_row(const ExperimentRow& r, const std::string& timing) {
    std::string out;
    out += r.command;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += std::to_string(r.trial);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += r.param;
    out += ',';
    out += r.epsilon;
    out += ',';
    out += r.mode;
    out += ',';
    out += r.status;
    out += ',';
    out += r.order;
    out += ',';
    out += r.order_over_sqrt_n;
    out += ',';
    out += r.upper_bound;
    out += ',';
    out += r.l1_excess;
    out += ',';
    out += r.kernel_order;
    out += ',';
    out += r.verify;
    out += ',';
    out += timing;
    return out;
}

void run_indexed(std::uint64_t count, unsigned parallelism,
                 const std::function<void(std::uint64_t)>& work) {
    if (parallelism <= 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= count) break;
            work(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned threads = std::min<unsigned>(parallelism, static_cast<unsigned>(count));
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

bool ExperimentRow::ok_and_verified() const {
    return status == "ok" && (verify.empty() || verify == "true");
}

std::string ExperimentRow::to_csv() const { return join_row(*this, elapsed_ms); }

std::string ExperimentRow::to_csv_without_timing() const { return join_row(*this, ""); }

void write_csv(std::ostream& os, const std::vector<ExperimentRow>& rows) {
    os << kCsvHeader << '\n';
    for (const auto& r : rows) os << r.to_csv() << '\n';
}

double median_of(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return (values[mid - 1] + values[mid]) / 2.0;
}

std::vector<ExperimentRow> run_minor_sweep(const MinorSweepConfig& cfg,
                                           std::vector<MinorTrialDetail>* details) {
    std::vector<ExperimentRow> rows(cfg.trials);
    if (details) details->assign(cfg.trials, {});
    RandomSource source(cfg.seed);

    run_indexed(cfg.trials, cfg.parallelism, [&](std::uint64_t trial) {
        auto start = std::chrono::steady_clock::now();
        ExperimentRow row;
        row.command = "minor";
        row.seed = cfg.seed;
        row.trial = trial;
        row.n = cfg.n;
        row.param = "3";
        row.epsilon = format_double(cfg.epsilon);
        row.mode = to_string(cfg.mode);

        MinorTrialDetail detail;
        RngStream rng = source.stream(trial);
        ModelInstance instance =
            sample_hamilton_plus_matching(static_cast<std::uint32_t>(cfg.n), rng);
        MultiGraph host = instance_to_graph(instance);
        detail.host_edge_bound = edge_upper_bound(host);
        detail.build = run_build(instance, host, cfg.epsilon, cfg.mode, cfg.seed);

        row.upper_bound = std::to_string(detail.host_edge_bound);
        switch (detail.build.status) {
            case BuildStatus::ok: {
                const MinorCertificate& cert = *detail.build.certificate;
                detail.verified = static_cast<bool>(verify_certificate(cert, host));
                row.status = "ok";
                row.order = std::to_string(cert.order);
                row.order_over_sqrt_n = format_double(
                    static_cast<double>(cert.order) / std::sqrt(static_cast<double>(cfg.n)));
                row.verify = detail.verified ? "true" : "false";
                if (!cfg.dump_dir.empty()) {
                    std::string path = cfg.dump_dir + "/cert_" + std::to_string(cfg.seed) + "_" +
                                       std::to_string(trial) + ".json";
                    std::ofstream out(path);
                    out << certificate_to_json(cert) << '\n';
                }
                break;
            }
            case BuildStatus::infeasible:
                row.status = "infeasible";
                break;
            case BuildStatus::degenerate:
                row.status = "degenerate";
                break;
        }

        auto stop = std::chrono::steady_clock::now();
        row.elapsed_ms = std::to_string(
            std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count());
        rows[trial] = std::move(row);
        if (details) (*details)[trial] = std::move(detail);
    });
    return rows;
}

std::vector<ExperimentRow> run_phase_sweep(const PhaseSweepConfig& cfg,
                                           std::vector<PhaseReport>* reports) {
    std::uint64_t total = cfg.trials * cfg.lambdas.size();
    std::vector<ExperimentRow> rows(total);
    if (reports) reports->assign(total, {});
    RandomSource source(cfg.seed);

    run_indexed(total, cfg.parallelism, [&](std::uint64_t index) {
        auto start = std::chrono::steady_clock::now();
        std::uint64_t lambda_idx = index / cfg.trials;

        PhaseParams params;
        params.n = cfg.n;
        params.lambda = cfg.lambdas[lambda_idx];
        params.lambda_is_bar = cfg.lambda_is_bar;

        RngStream sample_rng = source.stream(2 * index);
        RngStream heuristic_rng = source.stream(2 * index + 1);
        PhaseReport report = phase_pipeline(params, sample_rng, heuristic_rng, cfg.options);

        ExperimentRow row;
        row.command = "phase";
        row.seed = cfg.seed;
        row.trial = index;
        row.n = cfg.n;
        row.param = format_double(params.lambda);
        row.status = report.status;
        row.order = std::to_string(report.ccl_lower);
        row.order_over_sqrt_n = format_double(static_cast<double>(report.ccl_lower) /
                                              std::sqrt(static_cast<double>(cfg.n)));
        row.upper_bound = std::to_string(report.ccl_upper);
        row.l1_excess = std::to_string(report.l1_excess);
        row.kernel_order = std::to_string(report.kernel_order);
        row.verify = report.witness_verified ? "true" : "false";
        auto stop = std::chrono::steady_clock::now();
        row.elapsed_ms = std::to_string(
            std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count());
        rows[index] = std::move(row);
        if (reports) (*reports)[index] = std::move(report);
    });
    return rows;
}

std::vector<PhaseSummaryRow> summarize_phase(const PhaseSweepConfig& cfg,
                                             const std::vector<PhaseReport>& reports) {
    std::vector<PhaseSummaryRow> out;
    for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
        std::vector<double> excess, kernel, lower, upper;
        for (std::uint64_t t = 0; t < cfg.trials; ++t) {
            const PhaseReport& r = reports[li * cfg.trials + t];
            excess.push_back(static_cast<double>(r.l1_excess));
            kernel.push_back(static_cast<double>(r.kernel_order));
            lower.push_back(static_cast<double>(r.ccl_lower));
            upper.push_back(static_cast<double>(r.ccl_upper));
        }
        PhaseSummaryRow s;
        s.lambda = cfg.lambdas[li];
        s.median_l1_excess = median_of(std::move(excess));
        s.median_kernel_order = median_of(std::move(kernel));
        s.median_ccl_lower = median_of(std::move(lower));
        s.median_ccl_upper = median_of(std::move(upper));
        out.push_back(s);
    }
    return out;
}

}  // namespace minorforge
