#pragma once

// Shared test-only helpers: independent oracles and statistics utilities.
// Everything here is deliberately written against the public surface only,
// with algorithms distinct from the library implementations they check.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "minorforge/bipartite.hpp"
#include "minorforge/multigraph.hpp"

namespace minorforge::test {

// --- statistics -------------------------------------------------------------

/// Chi-square statistic against a uniform expectation over `categories`.
double chi_square_uniform(const std::map<std::string, std::size_t>& counts,
                          std::size_t categories, std::size_t draws);

/// Wilson-Hilferty approximation of the chi-square quantile; good to a few
/// permille for the dozens-of-degrees range used here.
double chi_square_quantile(std::size_t degrees_of_freedom, double prob);

/// Total variation distance between an empirical distribution and uniform.
double total_variation_uniform(const std::map<std::string, std::size_t>& counts,
                               std::size_t categories, std::size_t draws);

// --- canonical keys for sampler outputs -------------------------------------

std::string matching_key(const std::vector<Vertex>& partner);
std::string cycle_key(const std::vector<Vertex>& cycle);
std::string pairing_key(const std::vector<std::uint32_t>& mate);
std::string edge_set_key(const MultiGraph& g);

std::size_t count_perfect_matchings(std::size_t n);     // (n-1)!!
std::size_t count_hamilton_cycles(std::size_t n);       // (n-1)!/2
std::size_t count_labeled_cubic_graphs(std::size_t n);  // by enumeration

// --- independent oracles -----------------------------------------------------

/// Maximum bipartite matching by exhaustive backtracking (for <= ~12 left
/// vertices); independent of the augmenting-path implementation.
std::size_t brute_force_max_matching(const BipartiteGraph& b);

/// Minimum vertex cover size by subset enumeration (left_count + right_count
/// <= ~20).
std::size_t brute_force_min_vertex_cover(const BipartiteGraph& b);

/// Contraction clique number through the contraction recursion
///   ccl(G) = |V| if G is complete, else max over edges of ccl(G/e),
/// memoized on compacted labeled quotients. Valid for connected simple
/// graphs with at most 7 vertices; independent of the branch-set search.
std::size_t contraction_ccl(const MultiGraph& g);

/// All connected cubic multigraphs on exactly n vertices (n in {2,4}),
/// obtained by enumerating configurations and deduplicating projections.
std::vector<MultiGraph> connected_cubic_multigraphs(std::uint32_t n);

/// Subdivide every edge once (loops become 2-cycles through a fresh vertex).
MultiGraph subdivide_every_edge(const MultiGraph& g);

}  // namespace minorforge::test
