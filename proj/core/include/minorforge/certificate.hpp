#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minorforge/multigraph.hpp"

namespace minorforge {

struct StageLogEntry {
    std::uint32_t i = 0;
    std::uint64_t U_before = 0;
    std::uint64_t U_after = 0;
    std::uint64_t heavy_count = 0;
    std::uint64_t paths_used = 0;

    // Extra per-stage diagnostics kept in memory; the JSON emits only the
    // five fields above.
    std::uint64_t joined_matched = 0;
    std::uint64_t joined_incidental = 0;
    std::uint64_t bad_pairs_deleted = 0;
    std::uint64_t eff_window_violations = 0;
    std::uint64_t high_degree_paths = 0;  // paths at or above the proof-mode cap
    std::uint64_t min_pair_degree = 0;    // Hall-condition diagnostic
    std::uint64_t shortfall_vs_target = 0;  // max(0, U_after - U_before/27)
};

/// A machine-checkable witness that the host graph has a complete minor:
/// pairwise disjoint connected branch sets, every pair joined by a host edge.
struct MinorCertificate {
    std::size_t host_vertex_count = 0;

    // Seed recipe for the host (emitted in the JSON header).
    std::uint32_t r = 0;
    std::uint64_t seed = 0;
    double epsilon = 0.0;
    std::string mode;

    std::size_t order = 0;
    std::vector<std::vector<Vertex>> branch_sets;
    /// One host edge per branch-set pair, aligned with lexicographic pair
    /// order (0,1), (0,2), ..., (1,2), ...
    std::vector<std::pair<Vertex, Vertex>> witness_edges;
    /// Optional spanning-connectivity witness per branch set (host edges
    /// forming a spanning tree of the set). Not serialized.
    std::vector<std::vector<std::pair<Vertex, Vertex>>> spanning_edges;

    std::vector<StageLogEntry> stage_log;

    static std::size_t pair_index(std::size_t a, std::size_t b, std::size_t order);
};

std::string certificate_to_json(const MinorCertificate& cert);
MinorCertificate certificate_from_json(const std::string& text);

}  // namespace minorforge
