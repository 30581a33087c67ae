#include "minorforge/multigraph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace minorforge {

MultiGraph::MultiGraph(std::size_t vertex_count)
    : incident_(vertex_count), degree_(vertex_count, 0) {}

std::size_t MultiGraph::add_edge(Vertex u, Vertex v) {
    if (u >= vertex_count() || v >= vertex_count())
        throw std::invalid_argument("add_edge: endpoint out of range");
    std::size_t id = edges_.size();
    edges_.push_back({u, v});
    incident_[u].push_back(static_cast<std::uint32_t>(id));
    if (v != u) incident_[v].push_back(static_cast<std::uint32_t>(id));
    degree_[u] += (u == v) ? 2 : 1;
    if (v != u) degree_[v] += 1;
    return id;
}

bool MultiGraph::has_loops() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
}

std::size_t MultiGraph::loop_count() const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); }));
}

bool MultiGraph::has_parallel_edges() const { return parallel_edge_count() > 0; }

std::size_t MultiGraph::parallel_edge_count() const {
    std::set<std::pair<Vertex, Vertex>> seen;
    std::size_t dup = 0;
    for (const Edge& e : edges_) {
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert({key.first, key.second}).second) ++dup;
    }
    return dup;
}

std::vector<std::vector<Vertex>> connected_components(const MultiGraph& g) {
    std::vector<std::vector<Vertex>> out;
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (std::uint32_t eid : g.incident(v)) {
                Vertex w = g.other_end(eid, v);
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

ExcessReport component_excess(const MultiGraph& g, const std::vector<Vertex>& component,
                              std::size_t component_id) {
    if (component.empty()) throw std::invalid_argument("component_excess: empty component");
    std::vector<char> in_comp(g.vertex_count(), 0);
    for (Vertex v : component) {
        if (v >= g.vertex_count()) throw std::invalid_argument("component_excess: vertex out of range");
        in_comp[v] = 1;
    }

    // Connectivity check inside the set; the excess formula presumes it.
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> stack{component.front()};
    seen[component.front()] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        ++reached;
        for (std::uint32_t eid : g.incident(v)) {
            Vertex w = g.other_end(eid, v);
            if (in_comp[w] && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    if (reached != component.size())
        throw std::invalid_argument("component_excess: vertex set is not connected");

    std::size_t m = 0;
    for (const Edge& e : g.edges())
        if (in_comp[e.u] && in_comp[e.v]) ++m;

    ExcessReport rep;
    rep.component_id = component_id;
    rep.order = component.size();
    rep.edge_count = m;
    rep.excess = static_cast<std::int64_t>(m) - static_cast<std::int64_t>(component.size()) + 1;
    return rep;
}

TwoCoreResult two_core(const MultiGraph& g) {
    std::vector<std::uint32_t> deg(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) deg[v] = g.degree(v);
    std::vector<char> removed(g.vertex_count(), 0);
    std::vector<char> edge_dead(g.edge_count(), 0);

    std::vector<Vertex> queue;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (deg[v] <= 1) queue.push_back(v);

    while (!queue.empty()) {
        Vertex v = queue.back();
        queue.pop_back();
        if (removed[v]) continue;
        removed[v] = 1;
        for (std::uint32_t eid : g.incident(v)) {
            if (edge_dead[eid]) continue;
            edge_dead[eid] = 1;
            Vertex w = g.other_end(eid, v);
            if (w == v || removed[w]) continue;
            if (--deg[w] <= 1) queue.push_back(w);
        }
    }

    TwoCoreResult res;
    std::vector<Vertex> new_id(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!removed[v]) {
            new_id[v] = static_cast<Vertex>(res.vertex_map.size());
            res.vertex_map.push_back(v);
        }
    }
    res.core = MultiGraph(res.vertex_map.size());
    for (const Edge& e : g.edges())
        if (!removed[e.u] && !removed[e.v]) res.core.add_edge(new_id[e.u], new_id[e.v]);
    return res;
}

SuppressionResult suppress_degree_two(const MultiGraph& g) {
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) < 2)
            throw std::invalid_argument("suppress_degree_two: minimum degree must be >= 2");

    SuppressionResult res;
    std::vector<char> is_branch(g.vertex_count(), 0);
    std::vector<Vertex> kernel_id(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) >= 3) {
            is_branch[v] = 1;
            kernel_id[v] = static_cast<Vertex>(res.vertex_map.size());
            res.vertex_map.push_back(v);
        }
    }
    res.kernel = MultiGraph(res.vertex_map.size());

    std::vector<char> edge_seen(g.edge_count(), 0);

    // Walk every chain of degree-2 vertices starting from each branch slot.
    for (Vertex b = 0; b < g.vertex_count(); ++b) {
        if (!is_branch[b]) continue;
        for (std::uint32_t start : g.incident(b)) {
            if (edge_seen[start]) continue;
            std::vector<Vertex> path{b};
            std::uint32_t cur_edge = start;
            Vertex cur = b;
            for (;;) {
                edge_seen[cur_edge] = 1;
                Vertex nxt = g.other_end(cur_edge, cur);
                path.push_back(nxt);
                if (is_branch[nxt]) break;
                // nxt has degree 2 and no loop (a lone loop would make it
                // unreachable from a branch vertex), so it has exactly two
                // incident slots; continue through the one we did not use.
                const auto& inc = g.incident(nxt);
                std::uint32_t next_edge = (inc[0] == cur_edge) ? inc[1] : inc[0];
                cur = nxt;
                cur_edge = next_edge;
            }
            res.kernel.add_edge(kernel_id[path.front()], kernel_id[path.back()]);
            res.edge_paths.push_back(std::move(path));
        }
    }

    // What remains unvisited are pure cycles of degree-2 vertices (including
    // single vertices carrying only a loop). They hold no kernel.
    std::vector<char> cycle_done(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (is_branch[v] || cycle_done[v]) continue;
        bool untouched = true;
        for (std::uint32_t eid : g.incident(v))
            if (edge_seen[eid]) untouched = false;
        if (!untouched) continue;
        std::vector<Vertex> cycle{v};
        cycle_done[v] = 1;
        std::uint32_t cur_edge = g.incident(v)[0];
        Vertex cur = v;
        for (;;) {
            edge_seen[cur_edge] = 1;
            Vertex nxt = g.other_end(cur_edge, cur);
            if (nxt == v) break;  // closed the cycle (a lone loop closes at once)
            cycle.push_back(nxt);
            cycle_done[nxt] = 1;
            const auto& inc = g.incident(nxt);
            cur_edge = (inc[0] == cur_edge) ? inc[1] : inc[0];
            cur = nxt;
        }
        res.dropped_cycles.push_back(std::move(cycle));
    }
    return res;
}

void write_graph_text(std::ostream& os, const MultiGraph& g) {
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

MultiGraph read_graph_text(std::istream& is) {
    std::size_t n = 0, m = 0;
    if (!(is >> n >> m)) throw std::invalid_argument("read_graph_text: bad header");
    MultiGraph g(n);
    g.reserve_edges(m);
    for (std::size_t i = 0; i < m; ++i) {
        Vertex u, v;
        if (!(is >> u >> v)) throw std::invalid_argument("read_graph_text: truncated edge list");
        g.add_edge(u, v);
    }
    return g;
}

}  // namespace minorforge
