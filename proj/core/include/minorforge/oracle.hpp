#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "minorforge/certificate.hpp"
#include "minorforge/multigraph.hpp"
#include "minorforge/rng.hpp"

namespace minorforge {

enum class VerifyFailure {
    none,
    empty_set,
    vertex_out_of_range,
    overlap,
    disconnected,
    missing_edge,
    bad_witness,
};

struct VerifyResult {
    bool ok = true;
    VerifyFailure failure = VerifyFailure::none;
    std::string detail;  // first failure: which set or pair broke

    explicit operator bool() const { return ok; }
};

/// Independent certificate check: branch sets disjoint, non-empty, connected
/// in the host, every pair joined. Adjacency is re-derived from the host
/// edge list; declared witness edges are validated on top of that.
VerifyResult verify_certificate(const MinorCertificate& cert, const MultiGraph& host);

enum class CclMethod { exact, heuristic, bound };

struct CclResult {
    std::size_t value = 0;
    MinorCertificate witness;
    CclMethod method = CclMethod::exact;
    std::uint32_t restarts = 0;  // heuristic only
};

struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact contraction clique number by exhaustive branch-set search; loops are
/// ignored and parallel edges collapse to one adjacency. Throws TooLarge
/// above the cap (default 9 vertices).
CclResult exact_ccl(const MultiGraph& g, std::size_t vertex_cap = 9);

/// Largest h with C(h,2) <= e(g): no minor has more edges than its host.
std::size_t edge_upper_bound(const MultiGraph& g);

/// Largest complete-minor order compatible with a given connected-component
/// excess: floor(4*sqrt(excess)), floored at 3 since the excess inequality
/// only constrains orders >= 4.
std::size_t excess_upper_bound(std::uint64_t component_excess);

/// Randomized branch-set growing heuristic: seeds up to target_order sets,
/// grows them by BFS over unclaimed vertices, then keeps a greedy clique of
/// the pairwise-adjacent sets. Best certificate over `restarts` restarts.
/// Requires a connected host.
CclResult greedy_minor(const MultiGraph& g, std::size_t target_order, RngStream& rng,
                       std::uint32_t restarts = 32);

/// All unlabeled graphs on exactly n vertices (n <= 7), as edge bitmasks over
/// the C(n,2) lexicographic pair slots. Canonical dedup by minimum bitmask
/// over all vertex permutations.
std::vector<std::uint64_t> enumerate_unlabeled_graphs(std::uint32_t n, bool connected_only);

MultiGraph graph_from_edge_mask(std::uint32_t n, std::uint64_t mask);

}  // namespace minorforge
