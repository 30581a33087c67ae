#include "test_support.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

namespace minorforge::test {

double chi_square_uniform(const std::map<std::string, std::size_t>& counts,
                          std::size_t categories, std::size_t draws) {
    double expected = static_cast<double>(draws) / static_cast<double>(categories);
    double stat = 0.0;
    std::size_t seen = 0;
    for (const auto& [key, count] : counts) {
        double d = static_cast<double>(count) - expected;
        stat += d * d / expected;
        ++seen;
    }
    // categories never drawn still contribute their full expectation
    stat += static_cast<double>(categories - seen) * expected;
    return stat;
}

double chi_square_quantile(std::size_t degrees_of_freedom, double prob) {
    // Wilson-Hilferty: X ~ chi2(k) => (X/k)^(1/3) approx normal
    double k = static_cast<double>(degrees_of_freedom);
    // inverse normal via Acklam-style rational approximation at the needed range
    auto inv_norm = [](double p) {
        // Beasley-Springer-Moro
        static const double a[] = {2.50662823884, -18.61500062529, 41.39119773534,
                                   -25.44106049637};
        static const double b[] = {-8.47351093090, 23.08336743743, -21.06224101826,
                                   3.13082909833};
        static const double c[] = {0.3374754822726147, 0.9761690190917186, 0.1607979714918209,
                                   0.0276438810333863, 0.0038405729373609, 0.0003951896511919,
                                   0.0000321767881768, 0.0000002888167364, 0.0000003960315187};
        double y = p - 0.5;
        if (std::fabs(y) < 0.42) {
            double r = y * y;
            return y * (((a[3] * r + a[2]) * r + a[1]) * r + a[0]) /
                   ((((b[3] * r + b[2]) * r + b[1]) * r + b[0]) * r + 1.0);
        }
        double r = p > 0.5 ? 1.0 - p : p;
        r = std::log(-std::log(r));
        double x = c[0];
        double rp = 1.0;
        for (int i = 1; i < 9; ++i) {
            rp *= r;
            x += c[i] * rp;
        }
        return p > 0.5 ? x : -x;
    };
    double z = inv_norm(prob);
    double h = 2.0 / (9.0 * k);
    double core = 1.0 - h + z * std::sqrt(h);
    return k * core * core * core;
}

double total_variation_uniform(const std::map<std::string, std::size_t>& counts,
                               std::size_t categories, std::size_t draws) {
    double uniform = 1.0 / static_cast<double>(categories);
    double tv = 0.0;
    std::size_t seen = 0;
    for (const auto& [key, count] : counts) {
        tv += std::fabs(static_cast<double>(count) / draws - uniform);
        ++seen;
    }
    tv += static_cast<double>(categories - seen) * uniform;
    return tv / 2.0;
}

std::string matching_key(const std::vector<Vertex>& partner) {
    std::string key;
    for (Vertex v = 0; v < partner.size(); ++v) {
        if (partner[v] > v) {
            key += std::to_string(v) + "-" + std::to_string(partner[v]) + ";";
        }
    }
    return key;
}

std::string cycle_key(const std::vector<Vertex>& cycle) {
    // canonical: rotate the smallest vertex to the front, walk toward the
    // smaller neighbour
    std::size_t n = cycle.size();
    std::size_t pos = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (cycle[i] < cycle[pos]) pos = i;
    Vertex next = cycle[(pos + 1) % n];
    Vertex prev = cycle[(pos + n - 1) % n];
    bool forward = next < prev;
    std::string key;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t idx = forward ? (pos + i) % n : (pos + n - i) % n;
        key += std::to_string(cycle[idx]) + ";";
    }
    return key;
}

std::string pairing_key(const std::vector<std::uint32_t>& mate) {
    std::string key;
    for (std::uint32_t p = 0; p < mate.size(); ++p)
        if (mate[p] > p) key += std::to_string(p) + "-" + std::to_string(mate[p]) + ";";
    return key;
}

std::string edge_set_key(const MultiGraph& g) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const Edge& e : g.edges()) {
        auto [lo, hi] = std::minmax(e.u, e.v);
        edges.push_back({lo, hi});
    }
    std::sort(edges.begin(), edges.end());
    std::string key;
    for (auto [u, v] : edges) key += std::to_string(u) + "-" + std::to_string(v) + ";";
    return key;
}

std::size_t count_perfect_matchings(std::size_t n) {
    std::size_t out = 1;
    for (std::size_t x = n - 1; x >= 1 && x <= n; x -= 2) out *= x;
    return out;
}

std::size_t count_hamilton_cycles(std::size_t n) {
    std::size_t fact = 1;
    for (std::size_t x = 2; x <= n - 1; ++x) fact *= x;
    return fact / 2;
}

std::size_t count_labeled_cubic_graphs(std::size_t n) {
    // direct enumeration over edge subsets; n <= 8 in tests
    std::size_t pairs = n * (n - 1) / 2;
    std::vector<std::pair<std::size_t, std::size_t>> slot(pairs);
    std::size_t idx = 0;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) slot[idx++] = {u, v};
    std::size_t count = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
        std::vector<int> degree(n, 0);
        for (std::size_t s = 0; s < pairs; ++s)
            if (mask >> s & 1) {
                ++degree[slot[s].first];
                ++degree[slot[s].second];
            }
        if (std::all_of(degree.begin(), degree.end(), [](int d) { return d == 3; })) ++count;
    }
    return count;
}

namespace {

bool brute_match_extend(const BipartiteGraph& b, std::size_t left, std::size_t need,
                        std::vector<char>& used_right) {
    if (need == 0) return true;
    if (left >= b.left_count) return false;
    if (b.left_count - left < need) return false;
    // skip this left vertex
    if (brute_match_extend(b, left + 1, need, used_right)) return true;
    for (std::uint32_t r : b.adjacency[left]) {
        if (used_right[r]) continue;
        used_right[r] = 1;
        if (brute_match_extend(b, left + 1, need - 1, used_right)) {
            used_right[r] = 0;
            return true;
        }
        used_right[r] = 0;
    }
    return false;
}

}  // namespace

std::size_t brute_force_max_matching(const BipartiteGraph& b) {
    std::size_t best = 0;
    std::vector<char> used(b.right_count, 0);
    for (std::size_t target = std::min(b.left_count, b.right_count); target >= 1; --target) {
        if (brute_match_extend(b, 0, target, used)) {
            best = target;
            break;
        }
    }
    return best;
}

std::size_t brute_force_min_vertex_cover(const BipartiteGraph& b) {
    std::size_t nl = b.left_count, nr = b.right_count;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t l = 0; l < nl; ++l)
        for (std::uint32_t r : b.adjacency[l]) edges.push_back({l, r});
    std::size_t best = nl + nr;
    for (std::uint64_t mask = 0; mask < (1ULL << (nl + nr)); ++mask) {
        std::size_t size = static_cast<std::size_t>(std::popcount(mask));
        if (size >= best) continue;
        bool covers = true;
        for (auto [l, r] : edges) {
            if (!(mask >> l & 1) && !(mask >> (nl + r) & 1)) {
                covers = false;
                break;
            }
        }
        if (covers) best = size;
    }
    return best;
}

namespace {

struct ContractionOracle {
    std::unordered_map<std::string, std::size_t> memo;

    static std::string key_of(const std::vector<std::uint32_t>& rows) {
        std::string key;
        key.reserve(rows.size() * 4);
        for (std::uint32_t r : rows)
            for (int shift = 0; shift < 32; shift += 8)
                key += static_cast<char>((r >> shift) & 0xFF);
        return key;
    }

    std::size_t solve(std::vector<std::uint32_t> rows) {
        std::size_t n = rows.size();
        if (n <= 1) return n;
        bool complete = true;
        for (std::size_t v = 0; v < n && complete; ++v) {
            std::uint32_t want = ((1u << n) - 1u) & ~(1u << v);
            if ((rows[v] & want) != want) complete = false;
        }
        if (complete) return n;

        std::string key = key_of(rows);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        std::size_t best = 0;
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) {
                if (!(rows[u] >> v & 1)) continue;
                // contract v into u: merge neighbourhoods, redirect edges at v
                std::vector<std::uint32_t> merged = rows;
                merged[u] |= merged[v];
                for (std::size_t w = 0; w < n; ++w)
                    if (merged[w] >> v & 1) merged[w] |= 1u << u;
                merged[u] &= ~((1u << u) | (1u << v));
                // delete v, compact labels above it
                std::vector<std::uint32_t> next(n - 1, 0);
                for (std::size_t w = 0; w < n; ++w) {
                    if (w == v) continue;
                    std::uint32_t row = merged[w] & ~(1u << v);
                    std::uint32_t compact = 0;
                    for (std::size_t x = 0; x < n; ++x)
                        if (x != v && (row >> x & 1)) compact |= 1u << (x < v ? x : x - 1);
                    std::size_t self = w < v ? w : w - 1;
                    next[self] = compact & ~(1u << self);
                }
                best = std::max(best, solve(std::move(next)));
            }
        }
        memo[key] = best;
        return best;
    }
};

}  // namespace

std::size_t contraction_ccl(const MultiGraph& g) {
    std::size_t n = g.vertex_count();
    if (n == 0) return 0;
    static ContractionOracle oracle;  // memo shared across calls
    std::vector<std::uint32_t> rows(n, 0);
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) continue;
        rows[e.u] |= 1u << e.v;
        rows[e.v] |= 1u << e.u;
    }
    return oracle.solve(std::move(rows));
}

std::vector<MultiGraph> connected_cubic_multigraphs(std::uint32_t n) {
    // enumerate perfect matchings of the 3n configuration points, project,
    // dedupe by edge multiset
    std::vector<MultiGraph> out;
    std::set<std::string> seen;
    std::uint32_t points = 3 * n;
    std::vector<std::int32_t> mate(points, -1);

    std::function<void()> recurse = [&]() {
        std::uint32_t first = points;
        for (std::uint32_t p = 0; p < points; ++p)
            if (mate[p] < 0) {
                first = p;
                break;
            }
        if (first == points) {
            MultiGraph g(n);
            for (std::uint32_t p = 0; p < points; ++p)
                if (mate[p] > static_cast<std::int32_t>(p))
                    g.add_edge(p / 3, static_cast<std::uint32_t>(mate[p]) / 3);
            std::string key;
            {
                std::vector<std::pair<Vertex, Vertex>> edges;
                for (const Edge& e : g.edges()) {
                    auto [lo, hi] = std::minmax(e.u, e.v);
                    edges.push_back({lo, hi});
                }
                std::sort(edges.begin(), edges.end());
                for (auto [u, v] : edges) key += std::to_string(u) + "-" + std::to_string(v) + ";";
            }
            if (seen.insert(key).second && connected_components(g).size() == 1)
                out.push_back(std::move(g));
            return;
        }
        for (std::uint32_t q = first + 1; q < points; ++q) {
            if (mate[q] >= 0) continue;
            mate[first] = static_cast<std::int32_t>(q);
            mate[q] = static_cast<std::int32_t>(first);
            recurse();
            mate[first] = -1;
            mate[q] = -1;
        }
    };
    recurse();
    return out;
}

MultiGraph subdivide_every_edge(const MultiGraph& g) {
    MultiGraph out(g.vertex_count() + g.edge_count());
    Vertex next = static_cast<Vertex>(g.vertex_count());
    for (const Edge& e : g.edges()) {
        out.add_edge(e.u, next);
        out.add_edge(next, e.v);
        ++next;
    }
    return out;
}

}  // namespace minorforge::test
