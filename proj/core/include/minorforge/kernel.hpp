#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minorforge/certificate.hpp"
#include "minorforge/multigraph.hpp"
#include "minorforge/oracle.hpp"
#include "minorforge/rng.hpp"

namespace minorforge {

/// Critical-window parameterization: either the edge-count form
/// m = n/2 + lambda * n^(2/3) (lambda_is_bar = true, graph sampled as G(n,m))
/// or the edge-probability form p = (1 + lambda * n^(-1/3)) / n.
/// The two windows translate as lambda_p = 2 * lambda_bar.
struct PhaseParams {
    std::size_t n = 0;
    double lambda = 0.0;
    bool lambda_is_bar = true;

    std::uint64_t edge_count() const;  // G(n,m) form
    double edge_probability() const;   // G(n,p) form
    /// The window presumes lambda -> infinity but lambda = o(n^(1/3));
    /// at desk scale a row is flagged in-window when 1 <= lambda <= n^(1/3)/4.
    bool in_window() const;
};

/// Composition of: largest component -> 2-core -> degree-2 suppression,
/// with everything mapped back to the input graph.
struct KernelExtraction {
    MultiGraph kernel;
    std::vector<Vertex> vertex_to_host;               // kernel vertex -> host vertex
    std::vector<std::vector<Vertex>> edge_paths_host; // kernel edge -> host path
    std::size_t l1_order = 0;
    std::size_t l1_edges = 0;
    std::int64_t l1_excess = 0;
    std::vector<Vertex> l1_vertices;
    bool kernel_is_cubic = true;
    std::map<std::uint32_t, std::size_t> degree_profile;  // kernel degree -> count
    std::size_t kernel_loops = 0;
    std::size_t kernel_parallel_edges = 0;
    std::size_t dropped_cycle_count = 0;
};

KernelExtraction extract_kernel(const MultiGraph& g);

/// Expand a certificate on the kernel into one on the host graph: kernel
/// vertices map through vertex_to_host, spanning kernel edges of each branch
/// set absorb their subdivision paths, and each witness kernel edge donates
/// its path to the lower-indexed side so one real host edge crosses.
MinorCertificate lift_certificate(const MinorCertificate& kernel_cert,
                                  const KernelExtraction& extraction);

struct PhaseOptions {
    std::size_t exact_cap = 9;       // kernel order up to which exact search runs
    std::uint32_t greedy_restarts = 32;
    bool require_cubic_kernel = false;  // flag rows with non-cubic kernels as rejected
};

struct PhaseReport {
    PhaseParams params;
    std::string status = "ok";
    std::size_t l1_order = 0;
    std::int64_t l1_excess = 0;
    std::size_t kernel_order = 0;
    bool kernel_is_cubic = true;
    std::size_t kernel_loops = 0;
    std::size_t kernel_parallel_edges = 0;
    std::size_t ccl_lower = 0;
    CclMethod ccl_lower_method = CclMethod::heuristic;
    std::size_t ccl_upper = 0;
    bool witness_verified = false;
    std::optional<MinorCertificate> lifted_certificate;
};

/// Sample the window graph, extract the kernel, bound its contraction clique
/// number (exact below the cap, heuristic above), lift the witness to the
/// host and verify it there, and compute the edge/excess upper bounds.
PhaseReport phase_pipeline(const PhaseParams& params, RngStream& sample_rng,
                           RngStream& heuristic_rng, const PhaseOptions& options = {});

}  // namespace minorforge
