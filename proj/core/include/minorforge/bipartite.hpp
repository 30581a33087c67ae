#pragma once

#include <cstdint>
#include <vector>

namespace minorforge {

struct BipartiteGraph {
    std::size_t left_count = 0;
    std::size_t right_count = 0;
    std::vector<std::vector<std::uint32_t>> adjacency;  // per left vertex, right indices

    BipartiteGraph() = default;
    BipartiteGraph(std::size_t left, std::size_t right)
        : left_count(left), right_count(right), adjacency(left) {}
};

/// Partial injection left -> right; kNone marks an unmatched vertex.
struct Matching {
    static constexpr std::uint32_t kNone = 0xFFFFFFFFu;
    std::vector<std::uint32_t> pair_of_left;
    std::vector<std::uint32_t> pair_of_right;

    std::size_t size() const;
};

/// Hopcroft-Karp maximum matching, O(E * sqrt(V)). Deterministic for a given
/// input: augmenting paths are explored in index order.
Matching maximum_matching(const BipartiteGraph& b);

/// Left vertices not covered by m, ascending.
std::vector<std::uint32_t> uncovered_left(const BipartiteGraph& b, const Matching& m);

}  // namespace minorforge
