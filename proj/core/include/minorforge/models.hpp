#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "minorforge/multigraph.hpp"
#include "minorforge/rng.hpp"

namespace minorforge {

/// Thrown when a rejection sampler exhausts its attempt cap instead of
/// looping forever on pathological parameters.
struct SampleCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A perfect matching on the point set {0,...,n*r-1}, where point v*r+i is
/// the i-th slot of vertex v. mate is an involution without fixed points.
struct Configuration {
    std::uint32_t n = 0;
    std::uint32_t r = 0;
    std::vector<std::uint32_t> mate;
};

struct SampleDiagnostics {
    std::uint64_t rejections = 0;
    std::uint64_t p1p2_edge_count = 0;
    bool in_xrange_window = false;
};

/// Uniform configuration over all (rn-1)!! point matchings. Requires rn even.
Configuration sample_configuration(std::uint32_t n, std::uint32_t r, RngStream& rng);

/// Project a configuration onto the vertex set: point pair ((u,i),(v,j))
/// becomes edge (u,v); loops and parallel edges survive. Always r-regular.
MultiGraph project_configuration(const Configuration& c);

/// Raw projected configuration (may have loops and parallel edges).
MultiGraph sample_g_star(std::uint32_t n, std::uint32_t r, RngStream& rng);

/// Resample until loop-free; parallel edges may remain.
MultiGraph sample_g_prime(std::uint32_t n, std::uint32_t r, RngStream& rng,
                          SampleDiagnostics* diag = nullptr,
                          std::uint64_t attempt_cap = 1'000'000);

/// Resample until simple: uniform over r-regular simple graphs.
std::pair<MultiGraph, SampleDiagnostics> sample_g_simple(std::uint32_t n, std::uint32_t r,
                                                         RngStream& rng,
                                                         std::uint64_t attempt_cap = 1'000'000);

/// Uniform undirected Hamilton cycle on {0,...,n-1}, returned as a vertex
/// sequence (a uniformly random rotation/orientation of the cycle). n >= 3.
VertexPath sample_hamilton_cycle(std::uint32_t n, RngStream& rng);

/// Uniform perfect matching on {0,...,n-1}; partner[v] is v's mate. n even.
std::vector<Vertex> sample_perfect_matching(std::uint32_t n, RngStream& rng);

/// The exposed randomness of a Hamilton cycle plus an independent perfect
/// matching: the cycle split into halves P1/P2 and the matched cross pairs.
/// The matching is sampled upfront; staged constructions read it in a
/// deterministic processing order, which leaves the law unchanged.
struct ModelInstance {
    std::uint32_t n = 0;
    VertexPath hamilton;                 // cyclic vertex order, P1 then P2
    std::vector<Vertex> partner;         // perfect matching M*, an involution
    std::vector<std::uint32_t> position; // inverse of hamilton

    std::vector<Vertex> x1;  // P1 endpoints of P1-P2 matching edges, in P1 order
    std::vector<Vertex> x2;  // their P2 partners, in P2 order

    // Filled by designate_effective(kt): the first kt members of x1 along P1
    // and their matching images, so the matching sends x1_prime onto x2_prime.
    std::vector<Vertex> x1_prime;
    std::vector<Vertex> x2_prime;  // in P2 order

    std::size_t half() const { return n / 2; }
    bool in_p1(Vertex v) const { return position[v] < half(); }

    void designate_effective(std::size_t kt);
};

ModelInstance sample_hamilton_plus_matching(std::uint32_t n, RngStream& rng,
                                            SampleDiagnostics* diag = nullptr);

/// The union multigraph: n cycle edges then n/2 matching edges. Parallel
/// edges appear when the matching pairs cycle neighbours.
MultiGraph instance_to_graph(const ModelInstance& inst);

/// Uniform simple graph with exactly m edges, emitted in lexicographic
/// edge order. 0 <= m <= C(n,2).
MultiGraph sample_gnm(std::uint32_t n, std::uint64_t m, RngStream& rng);

/// Independent edge coin flips with probability p, lexicographic order.
MultiGraph sample_gnp(std::uint32_t n, double p, RngStream& rng);

}  // namespace minorforge
