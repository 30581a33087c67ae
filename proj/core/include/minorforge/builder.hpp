#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minorforge/certificate.hpp"
#include "minorforge/models.hpp"
#include "minorforge/multigraph.hpp"

namespace minorforge {

// ---------------------------------------------------------------------------
// Staged branch-set joining on a Hamilton-cycle-plus-matching host.
//
// The cycle is split into halves P1 and P2. A prefix of P1 is carved into k
// consecutive candidate branch sets, each holding t designated "effective"
// vertices whose matching partners land in P2. P2 is carved into segments
// Q_1..Q_i0 of geometrically shrinking effective length, each cut into
// connector paths of effective length 100*3^(i-1). Stage i builds a bipartite
// graph between still-unjoined branch-set pairs and the stage's paths (a path
// serves a pair when the matching links it to both members), takes a maximum
// matching, and merges each matched path into one endpoint. Surviving branch
// sets pairwise joined by host edges form the complete-minor certificate.
//
// Two modes:
//   faithful  - the proof-rule bookkeeping: heavy sets pruned via the Delta
//               schedule, bad pairs deleted 26/27 when they dominate, a pair
//               counts as joined only when covered by a stage matching, and
//               the final discard drops all heavy sets plus one endpoint of
//               every remaining unjoined pair.
//   practical - no pruning; a matched path also joins its absorber to every
//               other branch set it touches, connector absorption balances
//               across endpoints, and assembly keeps the largest branch-set
//               family that is pairwise adjacent in the host (greedy vertex
//               cover on the non-adjacent pairs).
// ---------------------------------------------------------------------------

enum class BuildMode { faithful, practical };

const char* to_string(BuildMode mode);
std::optional<BuildMode> build_mode_from_string(const std::string& s);

struct InfeasibleParams : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateResult : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BuilderParams {
    std::size_t n = 0;
    double epsilon = 0.3;
    BuildMode mode = BuildMode::practical;

    std::uint32_t k = 0;   // branch-set count: max k with k(k-1)/2 <= eps^4 n
    std::uint64_t t = 0;   // effective vertices per branch set
    std::uint32_t i0 = 1;  // stage count: max(1, floor(log3(n)/6))
    bool t_clamped = false;  // t lowered from floor(sqrt(n)/eps) to fit |X1|

    std::uint64_t d_cap = 1'000'000;  // proof-mode path-degree cap (diagnostic)

    std::uint64_t kt() const { return static_cast<std::uint64_t>(k) * t; }
    std::uint64_t ell(std::uint32_t stage) const;       // 100 * 3^(stage-1)
    std::uint64_t q_eff(std::uint32_t stage) const;     // floor(kt / 3^stage)
    double delta(std::uint32_t stage, std::uint64_t u_prev) const;
    double beta(std::uint32_t stage) const;

    /// Derive all parameters from (n, epsilon) and the realized |X1|.
    /// When floor(sqrt(n)/eps) * k exceeds |X1| the per-set effective count
    /// is clamped to floor(|X1|/k) (recorded in t_clamped) so the carve fits;
    /// genuinely unusable combinations throw InfeasibleParams.
    static BuilderParams derive(std::size_t n, double epsilon, std::size_t x1_size,
                                BuildMode mode);
};

struct BranchSet {
    std::uint32_t id = 0;
    std::uint32_t p1_begin = 0;  // positions into the hamilton order
    std::uint32_t p1_end = 0;    // exclusive
    std::vector<Vertex> effective;  // host ids, in P1 order
    std::vector<std::uint32_t> absorbed_paths;  // global path ids, filled by stages
};

struct ConnectorPath {
    std::uint32_t p2_begin = 0;  // positions into the hamilton order
    std::uint32_t p2_end = 0;    // exclusive
    std::vector<Vertex> effective;  // host ids, in P2 order
};

struct StageFamily {
    std::uint32_t stage = 0;       // 1-based
    std::uint32_t q_begin = 0;     // hamilton positions of segment Q_i
    std::uint32_t q_end = 0;       // exclusive
    std::uint64_t q_eff = 0;       // effective vertices inside Q_i
    std::uint32_t first_path = 0;  // global path id of paths[0]
    std::vector<ConnectorPath> paths;
};

struct BuildPlan {
    BuilderParams params;
    std::vector<BranchSet> sets;
    std::vector<StageFamily> stages;
    std::vector<std::int32_t> owner;  // host vertex -> branch set id, or -1
    std::size_t total_paths = 0;
};

/// Carve branch-set cores along P1 and the Q segments/path families along P2.
/// Calls instance.designate_effective(kt) if not already done for this kt.
/// Throws InfeasibleParams when the carve cannot be realized.
BuildPlan make_plan(ModelInstance& instance, const BuilderParams& params);

struct AbsorbedPath {
    std::uint32_t stage = 0;
    std::uint32_t global_path_id = 0;
    std::uint32_t absorber = 0;              // branch set id
    std::pair<Vertex, Vertex> link_edge{0, 0};  // matching edge path -> absorber
};

struct PairJoinRecord {
    std::uint32_t a = 0, b = 0;
    std::pair<Vertex, Vertex> witness{0, 0};
    bool matched = false;  // true: covered by the stage matching; false: incidental
};

struct StageState {
    std::uint32_t completed_stages = 0;
    std::vector<char> unjoined;      // indexed by pair_index over k sets
    std::uint64_t unjoined_count = 0;
    std::vector<char> heavy_ever;    // per branch set (faithful mode)
    std::vector<std::uint32_t> joined_degree;  // per set: joined partners so far
    std::vector<std::uint64_t> spent_effective;  // per set
    std::vector<AbsorbedPath> absorbed;
    std::vector<PairJoinRecord> joins;
    std::vector<StageLogEntry> log;

    static StageState initial(const BuildPlan& plan);
};

/// Execute stage state.completed_stages + 1. A stage that joins nothing is
/// legal; shortfalls against the U/27 target land in the log, never throw.
void run_stage(StageState& state, const BuildPlan& plan, const ModelInstance& instance);

struct AssembleResult {
    MinorCertificate certificate;
    std::vector<std::uint32_t> surviving_sets;
    std::size_t heavy_discards = 0;
    std::size_t pair_discards = 0;
};

/// Discard rules per mode, connector merging, certificate emission.
/// Throws DegenerateResult if fewer than 2 branch sets survive.
AssembleResult assemble(const StageState& state, const BuildPlan& plan,
                        const ModelInstance& instance, const MultiGraph& host);

/// The faithful discard rule evaluated against an arbitrary final state:
/// drop every heavy set, then one endpoint of each remaining unjoined pair.
/// Returns the surviving order (used by the mode-dominance check).
std::size_t faithful_discard_order(const StageState& state, const BuildPlan& plan);

enum class BuildStatus { ok, infeasible, degenerate };

struct BuildResult {
    BuildStatus status = BuildStatus::ok;
    std::string message;
    BuilderParams params;
    std::optional<MinorCertificate> certificate;
    std::vector<StageLogEntry> stage_log;
};

/// sample -> plan -> stages -> assemble, with errors mapped onto statuses.
BuildResult run_build(ModelInstance& instance, const MultiGraph& host, double epsilon,
                      BuildMode mode, std::uint64_t seed_for_record);

}  // namespace minorforge
