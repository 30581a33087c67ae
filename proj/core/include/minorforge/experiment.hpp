#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "minorforge/builder.hpp"
#include "minorforge/kernel.hpp"
#include "minorforge/rng.hpp"

namespace minorforge {

/// Fixed result-row schema shared by every experiment command. All columns
/// except elapsed_ms are fully determined by (command, seed, parameters).
inline constexpr const char* kCsvHeader =
    "command,seed,trial,n,param,epsilon,mode,status,order,order_over_sqrt_n,"
    "upper_bound,l1_excess,kernel_order,verify,elapsed_ms";

struct ExperimentRow {
    std::string command;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::uint64_t n = 0;
    std::string param;
    std::string epsilon;
    std::string mode;
    std::string status;
    std::string order;
    std::string order_over_sqrt_n;
    std::string upper_bound;
    std::string l1_excess;
    std::string kernel_order;
    std::string verify;  // "true" / "false" / empty
    std::string elapsed_ms;

    bool ok_and_verified() const;
    std::string to_csv() const;
    /// The row with the timing column cleared; what determinism contracts
    /// compare.
    std::string to_csv_without_timing() const;
};

void write_csv(std::ostream& os, const std::vector<ExperimentRow>& rows);

struct MinorSweepConfig {
    std::size_t n = 1 << 14;
    double epsilon = 0.3;
    BuildMode mode = BuildMode::practical;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    unsigned parallelism = 1;
    std::string dump_dir;  // when nonempty, certificate JSON per ok trial
};

struct MinorTrialDetail {
    BuildResult build;
    bool verified = false;
    std::size_t host_edge_bound = 0;
};

/// One row per trial: sample the cycle-plus-matching host from stream(trial),
/// run the builder, verify the certificate independently. Infeasible or
/// degenerate trials become rows with status != ok; nothing throws.
std::vector<ExperimentRow> run_minor_sweep(const MinorSweepConfig& cfg,
                                           std::vector<MinorTrialDetail>* details = nullptr);

struct PhaseSweepConfig {
    std::size_t n = 200000;
    std::vector<double> lambdas{3.0};
    bool lambda_is_bar = true;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    unsigned parallelism = 1;
    PhaseOptions options;
};

std::vector<ExperimentRow> run_phase_sweep(const PhaseSweepConfig& cfg,
                                           std::vector<PhaseReport>* reports = nullptr);

struct PhaseSummaryRow {
    double lambda = 0.0;
    double median_l1_excess = 0.0;
    double median_kernel_order = 0.0;
    double median_ccl_lower = 0.0;
    double median_ccl_upper = 0.0;
};

std::vector<PhaseSummaryRow> summarize_phase(const PhaseSweepConfig& cfg,
                                             const std::vector<PhaseReport>& reports);

double median_of(std::vector<double> values);

std::string format_double(double value);

}  // namespace minorforge
