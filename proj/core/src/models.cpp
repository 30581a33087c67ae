#include "minorforge/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace minorforge {

namespace {

void require_even_rn(std::uint32_t n, std::uint32_t r) {
    if (n == 0) throw std::invalid_argument("sampler: n must be >= 1");
    if ((static_cast<std::uint64_t>(n) * r) % 2 != 0)
        throw std::invalid_argument("sampler: r*n must be even");
}

}  // namespace

Configuration sample_configuration(std::uint32_t n, std::uint32_t r, RngStream& rng) {
    require_even_rn(n, r);
    std::size_t points = static_cast<std::size_t>(n) * r;
    std::vector<std::uint32_t> order(points);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(order);  // pairing consecutive entries of a uniform shuffle
                         // is uniform over all (rn-1)!! matchings
    Configuration c;
    c.n = n;
    c.r = r;
    c.mate.assign(points, 0);
    for (std::size_t i = 0; i < points; i += 2) {
        c.mate[order[i]] = order[i + 1];
        c.mate[order[i + 1]] = order[i];
    }
    return c;
}

MultiGraph project_configuration(const Configuration& c) {
    MultiGraph g(c.n);
    g.reserve_edges(static_cast<std::size_t>(c.n) * c.r / 2);
    for (std::uint32_t p = 0; p < c.mate.size(); ++p) {
        std::uint32_t q = c.mate[p];
        if (q < p) continue;  // each pair once, in canonical point order
        g.add_edge(p / c.r, q / c.r);
    }
    return g;
}

MultiGraph sample_g_star(std::uint32_t n, std::uint32_t r, RngStream& rng) {
    return project_configuration(sample_configuration(n, r, rng));
}

MultiGraph sample_g_prime(std::uint32_t n, std::uint32_t r, RngStream& rng,
                          SampleDiagnostics* diag, std::uint64_t attempt_cap) {
    for (std::uint64_t attempt = 0; attempt < attempt_cap; ++attempt) {
        MultiGraph g = sample_g_star(n, r, rng);
        if (!g.has_loops()) {
            if (diag) diag->rejections = attempt;
            return g;
        }
    }
    throw SampleCapExceeded("sample_g_prime: attempt cap exhausted");
}

std::pair<MultiGraph, SampleDiagnostics> sample_g_simple(std::uint32_t n, std::uint32_t r,
                                                         RngStream& rng,
                                                         std::uint64_t attempt_cap) {
    for (std::uint64_t attempt = 0; attempt < attempt_cap; ++attempt) {
        MultiGraph g = sample_g_star(n, r, rng);
        if (g.is_simple()) {
            SampleDiagnostics diag;
            diag.rejections = attempt;
            return {std::move(g), diag};
        }
    }
    throw SampleCapExceeded("sample_g_simple: attempt cap exhausted");
}

VertexPath sample_hamilton_cycle(std::uint32_t n, RngStream& rng) {
    if (n < 3) throw std::invalid_argument("sample_hamilton_cycle: n must be >= 3");
    VertexPath p;
    p.vertices.resize(n);
    std::iota(p.vertices.begin(), p.vertices.end(), 0u);
    rng.shuffle(p.vertices);  // every undirected cycle arises from exactly 2n orderings
    return p;
}

std::vector<Vertex> sample_perfect_matching(std::uint32_t n, RngStream& rng) {
    if (n == 0 || n % 2 != 0)
        throw std::invalid_argument("sample_perfect_matching: n must be even and positive");
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(order);
    std::vector<Vertex> partner(n, 0);
    for (std::uint32_t i = 0; i < n; i += 2) {
        partner[order[i]] = order[i + 1];
        partner[order[i + 1]] = order[i];
    }
    return partner;
}

void ModelInstance::designate_effective(std::size_t kt) {
    if (kt > x1.size())
        throw std::invalid_argument("designate_effective: kt exceeds |X1|");
    x1_prime.assign(x1.begin(), x1.begin() + static_cast<std::ptrdiff_t>(kt));
    x2_prime.clear();
    x2_prime.reserve(kt);
    for (Vertex v : x1_prime) x2_prime.push_back(partner[v]);
    std::sort(x2_prime.begin(), x2_prime.end(),
              [&](Vertex a, Vertex b) { return position[a] < position[b]; });
}

ModelInstance sample_hamilton_plus_matching(std::uint32_t n, RngStream& rng,
                                            SampleDiagnostics* diag) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("sample_hamilton_plus_matching: n must be even and >= 4");

    ModelInstance inst;
    inst.n = n;
    inst.hamilton = sample_hamilton_cycle(n, rng);
    inst.partner = sample_perfect_matching(n, rng);
    inst.position.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) inst.position[inst.hamilton[i]] = i;

    std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) {
        Vertex v = inst.hamilton[i];
        if (inst.position[inst.partner[v]] >= half) inst.x1.push_back(v);
    }
    for (std::size_t i = half; i < n; ++i) {
        Vertex v = inst.hamilton[i];
        if (inst.position[inst.partner[v]] < half) inst.x2.push_back(v);
    }

    if (diag) {
        diag->rejections = 0;
        diag->p1p2_edge_count = inst.x1.size();
        double width = std::sqrt(static_cast<double>(n)) * std::log(static_cast<double>(n));
        double center = static_cast<double>(n) / 4.0;
        double count = static_cast<double>(inst.x1.size());
        diag->in_xrange_window = count >= center - width && count <= center + width;
    }
    return inst;
}

MultiGraph instance_to_graph(const ModelInstance& inst) {
    MultiGraph g(inst.n);
    g.reserve_edges(inst.n + inst.n / 2);
    for (std::uint32_t i = 0; i < inst.n; ++i)
        g.add_edge(inst.hamilton[i], inst.hamilton[(i + 1) % inst.n]);
    for (Vertex v = 0; v < inst.n; ++v)
        if (inst.partner[v] > v) g.add_edge(v, inst.partner[v]);
    return g;
}

namespace {

// Invert the lexicographic pair index over 0 <= u < v < n.
std::pair<Vertex, Vertex> decode_pair(std::uint32_t n, std::uint64_t idx) {
    // row u starts at S(u) = u*n - u*(u+1)/2; binary search the row
    std::uint32_t lo = 0, hi = n - 1;
    while (lo + 1 < hi) {
        std::uint32_t mid = lo + (hi - lo) / 2;
        std::uint64_t start =
            static_cast<std::uint64_t>(mid) * n - static_cast<std::uint64_t>(mid) * (mid + 1) / 2;
        if (start <= idx)
            lo = mid;
        else
            hi = mid;
    }
    std::uint64_t start =
        static_cast<std::uint64_t>(lo) * n - static_cast<std::uint64_t>(lo) * (lo + 1) / 2;
    return {lo, static_cast<Vertex>(lo + 1 + (idx - start))};
}

}  // namespace

MultiGraph sample_gnm(std::uint32_t n, std::uint64_t m, RngStream& rng) {
    std::uint64_t total = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (m > total) throw std::invalid_argument("sample_gnm: m exceeds C(n,2)");

    // Uniform m-subset of pair slots. When m is more than half of all pairs,
    // draw the complement instead so rejection stays cheap.
    bool complement = m > total / 2;
    std::uint64_t want = complement ? total - m : m;
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(want) * 2 + 1);
    while (chosen.size() < want) chosen.insert(rng.below(total));

    MultiGraph g(n);
    g.reserve_edges(static_cast<std::size_t>(m));
    if (!complement) {
        std::vector<std::uint64_t> picks(chosen.begin(), chosen.end());
        std::sort(picks.begin(), picks.end());
        for (std::uint64_t idx : picks) {
            auto [u, v] = decode_pair(n, idx);
            g.add_edge(u, v);
        }
    } else {
        // Dense draws carry Theta(n^2) edges, so a full slot scan is
        // proportional to the output.
        std::uint64_t idx = 0;
        for (std::uint32_t u = 0; u + 1 < n; ++u)
            for (std::uint32_t v = u + 1; v < n; ++v, ++idx)
                if (chosen.count(idx) == 0) g.add_edge(u, v);
    }
    return g;
}

MultiGraph sample_gnp(std::uint32_t n, double p, RngStream& rng) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_gnp: p must be in [0,1]");
    MultiGraph g(n);
    if (n < 2 || p <= 0.0) return g;
    if (p >= 1.0) {
        for (std::uint32_t u = 0; u + 1 < n; ++u)
            for (std::uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }

    // Geometric skipping over the C(n,2) pair slots in lexicographic order.
    std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    double log1mp = std::log1p(-p);
    std::uint64_t pos = 0;
    bool first = true;
    std::uint32_t row = 0;
    std::uint64_t row_base = 0;  // global index of pair (row, row+1)
    std::uint64_t row_len = n - 1;
    for (;;) {
        double u = rng.unit();
        std::uint64_t skip =
            static_cast<std::uint64_t>(std::floor(std::log1p(-u) / log1mp));
        pos += skip + (first ? 0 : 1);
        first = false;
        if (pos >= total) break;
        while (pos - row_base >= row_len) {
            row_base += row_len;
            --row_len;
            ++row;
        }
        g.add_edge(row, static_cast<Vertex>(row + 1 + (pos - row_base)));
    }
    return g;
}

}  // namespace minorforge
