#include "minorforge/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace minorforge {

namespace {

std::string set_name(std::size_t i) { return "branch set " + std::to_string(i); }

}  // namespace

VerifyResult verify_certificate(const MinorCertificate& cert, const MultiGraph& host) {
    VerifyResult res;
    auto fail = [&](VerifyFailure f, std::string detail) {
        res.ok = false;
        res.failure = f;
        res.detail = std::move(detail);
        return res;
    };

    const auto& sets = cert.branch_sets;
    if (cert.order != sets.size())
        return fail(VerifyFailure::bad_witness, "order field does not match branch set count");

    constexpr std::int32_t kFree = -1;
    std::vector<std::int32_t> owner(host.vertex_count(), kFree);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].empty()) return fail(VerifyFailure::empty_set, set_name(i) + " is empty");
        for (Vertex v : sets[i]) {
            if (v >= host.vertex_count())
                return fail(VerifyFailure::vertex_out_of_range,
                            set_name(i) + " contains vertex " + std::to_string(v));
            if (owner[v] != kFree)
                return fail(VerifyFailure::overlap, "vertex " + std::to_string(v) + " lies in " +
                                                        set_name(owner[v]) + " and " + set_name(i));
            owner[v] = static_cast<std::int32_t>(i);
        }
    }

    // Connectivity inside each set, via union-find over same-set host edges.
    std::vector<Vertex> parent(host.vertex_count());
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](Vertex v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (const Edge& e : host.edges()) {
        if (e.is_loop()) continue;
        if (owner[e.u] != kFree && owner[e.u] == owner[e.v]) parent[find(e.u)] = find(e.v);
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
        Vertex root = find(sets[i].front());
        for (Vertex v : sets[i])
            if (find(v) != root)
                return fail(VerifyFailure::disconnected, set_name(i) + " is not connected");
    }

    // Pair coverage, re-derived from the host edge list.
    std::size_t k = sets.size();
    std::vector<char> joined(k * k, 0);
    for (const Edge& e : host.edges()) {
        std::int32_t a = owner[e.u], b = owner[e.v];
        if (a == kFree || b == kFree || a == b) continue;
        joined[static_cast<std::size_t>(a) * k + static_cast<std::size_t>(b)] = 1;
        joined[static_cast<std::size_t>(b) * k + static_cast<std::size_t>(a)] = 1;
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (!joined[a * k + b])
                return fail(VerifyFailure::missing_edge, "no host edge joins " + set_name(a) +
                                                             " and " + set_name(b));

    // Declared witness edges must be real host edges joining their pair.
    if (!cert.witness_edges.empty()) {
        if (cert.witness_edges.size() != k * (k - 1) / 2)
            return fail(VerifyFailure::bad_witness, "witness edge list has wrong length");
        std::unordered_set<std::uint64_t> host_edges;
        host_edges.reserve(host.edge_count() * 2);
        for (const Edge& e : host.edges()) {
            auto [lo, hi] = std::minmax(e.u, e.v);
            host_edges.insert((static_cast<std::uint64_t>(lo) << 32) | hi);
        }
        std::size_t idx = 0;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b, ++idx) {
                auto [u, v] = cert.witness_edges[idx];
                auto [lo, hi] = std::minmax(u, v);
                bool is_edge = host_edges.count((static_cast<std::uint64_t>(lo) << 32) | hi) > 0;
                bool spans = u < host.vertex_count() && v < host.vertex_count() &&
                             ((owner[u] == static_cast<std::int32_t>(a) &&
                               owner[v] == static_cast<std::int32_t>(b)) ||
                              (owner[u] == static_cast<std::int32_t>(b) &&
                               owner[v] == static_cast<std::int32_t>(a)));
                if (!is_edge || !spans)
                    return fail(VerifyFailure::bad_witness,
                                "witness for pair (" + std::to_string(a) + "," +
                                    std::to_string(b) + ") is not a host edge between the sets");
            }
        }
    }
    return res;
}

std::size_t edge_upper_bound(const MultiGraph& g) {
    std::uint64_t m = g.edge_count();
    std::size_t h = 1;
    while (static_cast<std::uint64_t>(h) * (h + 1) / 2 <= m) ++h;
    return h;  // largest h with C(h,2) <= m
}

std::size_t excess_upper_bound(std::uint64_t component_excess) {
    // floor(4*sqrt(exc)) computed exactly as isqrt(16*exc)
    std::uint64_t target = 16 * component_excess;
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(target)));
    while (r * r > target) --r;
    while ((r + 1) * (r + 1) <= target) ++r;
    return std::max<std::uint64_t>(3, r);
}

// ---------------------------------------------------------------------------
// Exact search: branch sets as connected vertex subsets, compatible when
// disjoint and joined by an edge; a K_h minor is h pairwise compatible
// subsets. Search maximizes h with branch and bound.
// ---------------------------------------------------------------------------

namespace {

struct SubsetSearch {
    std::uint32_t n;
    std::vector<std::uint32_t> nbr;         // simple adjacency mask per vertex
    std::vector<std::uint32_t> subsets;     // connected subsets, ascending bitmask
    std::vector<std::uint32_t> subset_nbr;  // external neighbourhood mask per subset

    std::size_t best = 0;
    std::vector<std::uint32_t> best_choice;
    std::vector<std::uint32_t> choice;
    std::size_t hard_cap = 0;

    explicit SubsetSearch(const MultiGraph& g) : n(static_cast<std::uint32_t>(g.vertex_count())) {
        nbr.assign(n, 0);
        for (const Edge& e : g.edges()) {
            if (e.is_loop()) continue;  // a loop never helps a complete minor
            nbr[e.u] |= 1u << e.v;
            nbr[e.v] |= 1u << e.u;
        }
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            if (!connected(mask)) continue;
            subsets.push_back(mask);
            std::uint32_t ext = 0;
            std::uint32_t rest = mask;
            while (rest) {
                std::uint32_t v = static_cast<std::uint32_t>(std::countr_zero(rest));
                rest &= rest - 1;
                ext |= nbr[v];
            }
            subset_nbr.push_back(ext & ~mask);
        }
    }

    bool connected(std::uint32_t mask) const {
        std::uint32_t start = mask & (~mask + 1);
        std::uint32_t seen = start;
        std::uint32_t frontier = start;
        while (frontier) {
            std::uint32_t next = 0;
            std::uint32_t rest = frontier;
            while (rest) {
                std::uint32_t v = static_cast<std::uint32_t>(std::countr_zero(rest));
                rest &= rest - 1;
                next |= nbr[v] & mask & ~seen;
            }
            seen |= next;
            frontier = next;
        }
        return seen == mask;
    }

    void extend(std::size_t start_idx, std::uint32_t used) {
        if (choice.size() > best) {
            best = choice.size();
            best_choice = choice;
        }
        if (best >= hard_cap) return;  // edge bound reached, nothing larger exists
        std::uint32_t all = n >= 32 ? ~0u : ((1u << n) - 1);
        std::uint32_t free_vertices = static_cast<std::uint32_t>(std::popcount(~used & all));
        if (choice.size() + free_vertices <= best) return;  // cannot beat best
        for (std::size_t i = start_idx; i < subsets.size(); ++i) {
            std::uint32_t mask = subsets[i];
            if (mask & used) continue;
            bool compatible = true;
            for (std::size_t c = 0; c < choice.size(); ++c) {
                if (!(choice_nbrs[c] & mask)) {
                    compatible = false;
                    break;
                }
            }
            if (!compatible) continue;
            choice.push_back(mask);
            choice_nbrs.push_back(subset_nbr[i]);
            extend(i + 1, used | mask);
            choice.pop_back();
            choice_nbrs.pop_back();
            if (best >= hard_cap) return;
        }
    }

    std::vector<std::uint32_t> choice_nbrs;
};

MinorCertificate certificate_from_masks(const MultiGraph& g,
                                        const std::vector<std::uint32_t>& masks,
                                        const char* mode) {
    MinorCertificate cert;
    cert.host_vertex_count = g.vertex_count();
    cert.mode = mode;
    cert.order = masks.size();
    for (std::uint32_t mask : masks) {
        std::vector<Vertex> set;
        std::uint32_t rest = mask;
        while (rest) {
            set.push_back(static_cast<Vertex>(std::countr_zero(rest)));
            rest &= rest - 1;
        }
        cert.branch_sets.push_back(std::move(set));
    }

    // First host edge joining each pair, lexicographic pair order.
    std::size_t k = cert.branch_sets.size();
    std::vector<std::int32_t> owner(g.vertex_count(), -1);
    for (std::size_t i = 0; i < k; ++i)
        for (Vertex v : cert.branch_sets[i]) owner[v] = static_cast<std::int32_t>(i);
    cert.witness_edges.assign(k * (k - 1) / 2, {0, 0});
    std::vector<char> have(k * (k - 1) / 2, 0);
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) continue;
        std::int32_t a = owner[e.u], b = owner[e.v];
        if (a < 0 || b < 0 || a == b) continue;
        std::size_t idx = MinorCertificate::pair_index(static_cast<std::size_t>(a),
                                                       static_cast<std::size_t>(b), k);
        if (!have[idx]) {
            have[idx] = 1;
            cert.witness_edges[idx] = {e.u, e.v};
        }
    }
    return cert;
}

}  // namespace

CclResult exact_ccl(const MultiGraph& g, std::size_t vertex_cap) {
    if (g.vertex_count() > vertex_cap)
        throw TooLarge("exact_ccl: graph exceeds the exhaustive-search cap");
    if (g.vertex_count() > 20)
        throw TooLarge("exact_ccl: subset search supports at most 20 vertices");
    CclResult res;
    res.method = CclMethod::exact;
    if (g.vertex_count() == 0) {
        res.value = 0;
        return res;
    }

    SubsetSearch search(g);
    search.hard_cap = std::min(g.vertex_count(), edge_upper_bound(g));
    search.extend(0, 0);
    res.value = search.best;
    res.witness = certificate_from_masks(g, search.best_choice, "exact");
    return res;
}

CclResult greedy_minor(const MultiGraph& g, std::size_t target_order, RngStream& rng,
                       std::uint32_t restarts) {
    std::size_t n = g.vertex_count();
    CclResult best;
    best.method = CclMethod::heuristic;
    best.restarts = restarts;
    if (n == 0) return best;
    target_order = std::min({target_order, n, edge_upper_bound(g)});
    if (target_order == 0) target_order = 1;

    std::vector<std::int32_t> owner(n);
    std::vector<Vertex> frontier;
    std::vector<Vertex> perm(n);

    for (std::uint32_t attempt = 0; attempt < restarts; ++attempt) {
        std::fill(owner.begin(), owner.end(), -1);
        std::iota(perm.begin(), perm.end(), 0u);
        rng.shuffle(perm);
        // Cycle through seed counts: fewer, larger sets trade order ceiling
        // for denser pairwise adjacency.
        std::size_t seeds = std::max<std::size_t>(2, target_order >> (attempt % 4));
        seeds = std::min(seeds, n);
        frontier.clear();
        for (std::size_t i = 0; i < seeds; ++i) {
            owner[perm[i]] = static_cast<std::int32_t>(i);
            frontier.push_back(perm[i]);
        }
        // Round-robin BFS growth over unclaimed vertices.
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            Vertex v = frontier[head];
            for (std::uint32_t eid : g.incident(v)) {
                Vertex w = g.other_end(eid, v);
                if (owner[w] < 0) {
                    owner[w] = owner[v];
                    frontier.push_back(w);
                }
            }
        }

        // Pairwise adjacency among grown sets, then a greedy clique.
        std::size_t k = std::min(seeds, n);
        std::vector<char> adj(k * k, 0);
        for (const Edge& e : g.edges()) {
            if (e.is_loop()) continue;
            std::int32_t a = owner[e.u], b = owner[e.v];
            if (a < 0 || b < 0 || a == b) continue;
            adj[static_cast<std::size_t>(a) * k + b] = 1;
            adj[static_cast<std::size_t>(b) * k + a] = 1;
        }
        std::vector<std::size_t> degree(k, 0);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) degree[a] += adj[a * k + b];
        std::vector<std::size_t> by_degree(k);
        std::iota(by_degree.begin(), by_degree.end(), std::size_t{0});
        std::sort(by_degree.begin(), by_degree.end(), [&](std::size_t a, std::size_t b) {
            return degree[a] != degree[b] ? degree[a] > degree[b] : a < b;
        });
        std::vector<std::size_t> clique;
        for (std::size_t cand : by_degree) {
            bool ok = true;
            for (std::size_t c : clique)
                if (!adj[cand * k + c]) {
                    ok = false;
                    break;
                }
            if (ok) clique.push_back(cand);
        }

        if (clique.size() > best.value) {
            std::vector<std::vector<Vertex>> sets(clique.size());
            std::vector<std::int32_t> keep(k, -1);
            for (std::size_t i = 0; i < clique.size(); ++i) keep[clique[i]] = static_cast<std::int32_t>(i);
            for (Vertex v = 0; v < n; ++v)
                if (owner[v] >= 0 && keep[owner[v]] >= 0) sets[keep[owner[v]]].push_back(v);

            MinorCertificate cert;
            cert.host_vertex_count = n;
            cert.mode = "heuristic";
            cert.order = sets.size();
            cert.branch_sets = std::move(sets);
            // witness edges from a host scan
            std::vector<std::int32_t> who(n, -1);
            for (std::size_t i = 0; i < cert.branch_sets.size(); ++i)
                for (Vertex v : cert.branch_sets[i]) who[v] = static_cast<std::int32_t>(i);
            std::size_t kk = cert.order;
            cert.witness_edges.assign(kk * (kk - 1) / 2, {0, 0});
            std::vector<char> have(kk * (kk - 1) / 2, 0);
            for (const Edge& e : g.edges()) {
                if (e.is_loop()) continue;
                std::int32_t a = who[e.u], b = who[e.v];
                if (a < 0 || b < 0 || a == b) continue;
                std::size_t idx = MinorCertificate::pair_index(a, b, kk);
                if (!have[idx]) {
                    have[idx] = 1;
                    cert.witness_edges[idx] = {e.u, e.v};
                }
            }
            best.value = clique.size();
            best.witness = std::move(cert);
        }
        if (best.value >= target_order) break;
    }
    return best;
}

std::vector<std::uint64_t> enumerate_unlabeled_graphs(std::uint32_t n, bool connected_only) {
    if (n > 7) throw TooLarge("enumerate_unlabeled_graphs: n <= 7 only");

    auto pair_slot = [](std::uint32_t size, std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        return a * size - a * (a + 1) / 2 + (b - a - 1);
    };

    auto canonical = [&](std::uint32_t size, std::uint64_t mask) {
        std::array<std::uint32_t, 7> perm{};
        for (std::uint32_t i = 0; i < size; ++i) perm[i] = i;
        std::uint64_t best = ~0ULL;
        do {
            std::uint64_t remapped = 0;
            for (std::uint32_t a = 0; a < size; ++a)
                for (std::uint32_t b = a + 1; b < size; ++b)
                    if (mask >> pair_slot(size, a, b) & 1)
                        remapped |= 1ULL << pair_slot(size, perm[a], perm[b]);
            best = std::min(best, remapped);
        } while (std::next_permutation(perm.begin(), perm.begin() + size));
        return best;
    };

    // Grow by one vertex at a time: every n-vertex graph is some (n-1)-vertex
    // graph plus a new vertex with an arbitrary neighbourhood.
    std::vector<std::uint64_t> level{0};  // the single graph on one vertex
    for (std::uint32_t size = 2; size <= n; ++size) {
        std::unordered_set<std::uint64_t> seen;
        for (std::uint64_t base : level) {
            for (std::uint32_t nbhd = 0; nbhd < (1u << (size - 1)); ++nbhd) {
                std::uint64_t mask = 0;
                for (std::uint32_t a = 0; a + 1 < size; ++a)
                    for (std::uint32_t b = a + 1; b + 1 < size; ++b)
                        if (base >> pair_slot(size - 1, a, b) & 1)
                            mask |= 1ULL << pair_slot(size, a, b);
                for (std::uint32_t a = 0; a + 1 < size; ++a)
                    if (nbhd >> a & 1) mask |= 1ULL << pair_slot(size, a, size - 1);
                seen.insert(canonical(size, mask));
            }
        }
        level.assign(seen.begin(), seen.end());
        std::sort(level.begin(), level.end());
    }

    if (!connected_only) return level;
    std::vector<std::uint64_t> out;
    for (std::uint64_t mask : level) {
        MultiGraph g = graph_from_edge_mask(n, mask);
        if (connected_components(g).size() == 1) out.push_back(mask);
    }
    return out;
}

MultiGraph graph_from_edge_mask(std::uint32_t n, std::uint64_t mask) {
    MultiGraph g(n);
    std::uint32_t slot = 0;
    for (std::uint32_t a = 0; a + 1 < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b, ++slot)
            if (mask >> slot & 1) g.add_edge(a, b);
    return g;
}

}  // namespace minorforge
