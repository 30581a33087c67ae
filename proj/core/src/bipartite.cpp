#include "minorforge/bipartite.hpp"

#include <limits>
#include <stdexcept>

namespace minorforge {

std::size_t Matching::size() const {
    std::size_t s = 0;
    for (std::uint32_t r : pair_of_left)
        if (r != kNone) ++s;
    return s;
}

namespace {

constexpr std::uint32_t kNone = Matching::kNone;
constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

struct HopcroftKarp {
    const BipartiteGraph& g;
    std::vector<std::uint32_t> match_l, match_r, dist;
    std::vector<std::uint32_t> queue;

    explicit HopcroftKarp(const BipartiteGraph& graph)
        : g(graph),
          match_l(graph.left_count, kNone),
          match_r(graph.right_count, kNone),
          dist(graph.left_count, kInf) {}

    bool bfs() {
        queue.clear();
        for (std::uint32_t l = 0; l < g.left_count; ++l) {
            if (match_l[l] == kNone) {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = kInf;
            }
        }
        bool reachable_free_right = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::uint32_t l = queue[head];
            for (std::uint32_t r : g.adjacency[l]) {
                std::uint32_t l2 = match_r[r];
                if (l2 == kNone) {
                    reachable_free_right = true;
                } else if (dist[l2] == kInf) {
                    dist[l2] = dist[l] + 1;
                    queue.push_back(l2);
                }
            }
        }
        return reachable_free_right;
    }

    bool dfs(std::uint32_t l) {
        for (std::uint32_t r : g.adjacency[l]) {
            std::uint32_t l2 = match_r[r];
            if (l2 == kNone || (dist[l2] == dist[l] + 1 && dfs(l2))) {
                match_l[l] = r;
                match_r[r] = l;
                return true;
            }
        }
        dist[l] = kInf;
        return false;
    }

    void run() {
        while (bfs()) {
            for (std::uint32_t l = 0; l < g.left_count; ++l)
                if (match_l[l] == kNone && dist[l] == 0) dfs(l);
        }
    }
};

}  // namespace

Matching maximum_matching(const BipartiteGraph& b) {
    for (const auto& adj : b.adjacency)
        for (std::uint32_t r : adj)
            if (r >= b.right_count)
                throw std::invalid_argument("maximum_matching: right index out of range");

    HopcroftKarp hk(b);
    hk.run();
    Matching m;
    m.pair_of_left = std::move(hk.match_l);
    m.pair_of_right = std::move(hk.match_r);
    return m;
}

std::vector<std::uint32_t> uncovered_left(const BipartiteGraph& b, const Matching& m) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t l = 0; l < b.left_count; ++l)
        if (l >= m.pair_of_left.size() || m.pair_of_left[l] == kNone) out.push_back(l);
    return out;
}

}  // namespace minorforge
