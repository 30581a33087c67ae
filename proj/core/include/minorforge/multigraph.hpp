#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace minorforge {

using Vertex = std::uint32_t;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    bool is_loop() const { return u == v; }
};

/// Undirected multigraph. Loops and parallel edges are kept verbatim and
/// edge indices are stable, so parallel edges stay distinguishable and the
/// edge count is always recoverable exactly. A loop contributes 2 to the
/// degree of its vertex but only 1 to the edge count.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(std::size_t vertex_count);

    std::size_t vertex_count() const { return degree_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::uint32_t degree(Vertex v) const { return degree_[v]; }

    std::size_t add_edge(Vertex u, Vertex v);
    void reserve_edges(std::size_t m) { edges_.reserve(m); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t id) const { return edges_[id]; }
    /// Indices of edges incident to v. A loop appears once in this list
    /// even though it accounts for two degree slots.
    const std::vector<std::uint32_t>& incident(Vertex v) const { return incident_[v]; }
    Vertex other_end(std::size_t edge_id, Vertex from) const {
        const Edge& e = edges_[edge_id];
        return e.u == from ? e.v : e.u;
    }

    bool has_loops() const;
    bool has_parallel_edges() const;
    bool is_simple() const { return !has_loops() && !has_parallel_edges(); }
    std::size_t loop_count() const;
    std::size_t parallel_edge_count() const;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<std::uint32_t>> incident_;
    std::vector<std::uint32_t> degree_;
};

/// A simple path (or cycle, when used cyclically) given by its vertex list.
struct VertexPath {
    std::vector<Vertex> vertices;

    std::size_t size() const { return vertices.size(); }
    bool empty() const { return vertices.empty(); }
    Vertex operator[](std::size_t i) const { return vertices[i]; }
};

struct ExcessReport {
    std::size_t component_id = 0;
    std::size_t order = 0;
    std::size_t edge_count = 0;
    std::int64_t excess = 0;  // edge_count - order + 1 for a connected piece
};

/// Vertex sets of the connected components, ordered by smallest member;
/// each set is sorted. Loops and parallel edges are irrelevant here.
std::vector<std::vector<Vertex>> connected_components(const MultiGraph& g);

/// Excess (cyclomatic number) of a connected vertex set: edges with both
/// ends inside the set (loops counted once) minus order plus one.
/// Throws std::invalid_argument if the set is empty or not connected in g.
ExcessReport component_excess(const MultiGraph& g, const std::vector<Vertex>& component,
                              std::size_t component_id = 0);

struct TwoCoreResult {
    MultiGraph core;
    std::vector<Vertex> vertex_map;  // core vertex -> original vertex
};

/// Repeatedly delete vertices of degree <= 1. The result has minimum
/// degree >= 2 or is empty. Idempotent.
TwoCoreResult two_core(const MultiGraph& g);

struct SuppressionResult {
    MultiGraph kernel;
    std::vector<Vertex> vertex_map;  // kernel vertex -> original vertex
    /// Per kernel edge: the original path it contracts, endpoints included,
    /// so kernel edge j runs between vertex_map-preimages edge_paths[j].front()
    /// and edge_paths[j].back(). A kernel loop has matching endpoints.
    std::vector<std::vector<Vertex>> edge_paths;
    /// Components that were pure cycles of degree-2 vertices carry no kernel
    /// and are dropped; each is reported as its vertex list.
    std::vector<std::vector<Vertex>> dropped_cycles;
};

/// Replace every maximal path whose internal vertices have degree 2 by a
/// single edge. Requires minimum degree >= 2 (run two_core first); throws
/// std::invalid_argument otherwise. The kernel has minimum degree >= 3 or
/// is empty, and degree(kernel vertex) equals its original degree.
SuppressionResult suppress_degree_two(const MultiGraph& g);

/// Plain text serialization: line 1 "n m", then m lines "u v" (0-based),
/// in stable edge-index order.
void write_graph_text(std::ostream& os, const MultiGraph& g);
MultiGraph read_graph_text(std::istream& is);

}  // namespace minorforge
