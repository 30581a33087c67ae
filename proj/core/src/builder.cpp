#include "minorforge/builder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "minorforge/bipartite.hpp"

namespace minorforge {

const char* to_string(BuildMode mode) {
    return mode == BuildMode::faithful ? "faithful" : "practical";
}

std::optional<BuildMode> build_mode_from_string(const std::string& s) {
    if (s == "faithful") return BuildMode::faithful;
    if (s == "practical") return BuildMode::practical;
    return std::nullopt;
}

std::uint64_t BuilderParams::ell(std::uint32_t stage) const {
    std::uint64_t p = 1;
    for (std::uint32_t j = 1; j < stage; ++j) p *= 3;
    return 100 * p;
}

std::uint64_t BuilderParams::q_eff(std::uint32_t stage) const {
    std::uint64_t p = 1;
    for (std::uint32_t j = 0; j < stage; ++j) p *= 3;
    return kt() / p;
}

double BuilderParams::delta(std::uint32_t stage, std::uint64_t u_prev) const {
    return std::pow(1.5, static_cast<int>(stage) - 1) * static_cast<double>(u_prev) /
           (std::pow(epsilon, 0.125) * static_cast<double>(k));
}

double BuilderParams::beta(std::uint32_t stage) const {
    double denom = 2.0 * std::pow(std::pow(3.0, static_cast<int>(stage) - 1), 7.0);
    double base = std::pow(epsilon, 8.0) / denom;
    return base * base;
}

BuilderParams BuilderParams::derive(std::size_t n, double epsilon, std::size_t x1_size,
                                    BuildMode mode) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("BuilderParams: epsilon must lie in (0,1)");
    BuilderParams p;
    p.n = n;
    p.epsilon = epsilon;
    p.mode = mode;

    double e4n = std::pow(epsilon, 4.0) * static_cast<double>(n);
    std::uint64_t k = 1;
    while (static_cast<double>(k) * (static_cast<double>(k) + 1.0) / 2.0 <= e4n) ++k;
    // now k(k-1)/2 <= e4n < k(k+1)/2
    if (k < 2)
        throw InfeasibleParams("infeasible: eps^4*n = " + std::to_string(e4n) +
                               " admits no k >= 2 with k(k-1)/2 <= eps^4*n");
    p.k = static_cast<std::uint32_t>(k);

    std::uint64_t t = static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(n)) / epsilon));
    if (k * t > x1_size) {
        t = x1_size / k;
        p.t_clamped = true;
    }
    if (t < 1)
        throw InfeasibleParams("infeasible: |X1| = " + std::to_string(x1_size) +
                               " leaves no effective vertices per branch set (k = " +
                               std::to_string(k) + ")");
    p.t = t;

    double log3n = std::log(static_cast<double>(n)) / std::log(3.0);
    p.i0 = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::floor(log3n / 6.0 + 1e-9)));

    if (p.q_eff(p.i0) < p.ell(p.i0))
        throw InfeasibleParams("infeasible: kt/3^i0 = " + std::to_string(p.q_eff(p.i0)) +
                               " < l_i0 = " + std::to_string(p.ell(p.i0)) +
                               " (the last path family would be empty)");
    return p;
}

BuildPlan make_plan(ModelInstance& instance, const BuilderParams& params) {
    std::uint64_t kt = params.kt();
    if (kt > instance.x1.size())
        throw InfeasibleParams("infeasible: k*t = " + std::to_string(kt) + " > |X1| = " +
                               std::to_string(instance.x1.size()));
    if (instance.x1_prime.size() != kt) instance.designate_effective(kt);

    BuildPlan plan;
    plan.params = params;
    plan.owner.assign(instance.n, -1);

    std::vector<char> is_eff1(instance.n, 0);
    for (Vertex v : instance.x1_prime) is_eff1[v] = 1;
    std::vector<char> is_eff2(instance.n, 0);
    for (Vertex v : instance.x2_prime) is_eff2[v] = 1;

    // Branch-set cores: consecutive P1 blocks holding t effective vertices each.
    std::size_t half = instance.half();
    std::uint32_t pos = 0;
    for (std::uint32_t id = 0; id < params.k; ++id) {
        BranchSet set;
        set.id = id;
        set.p1_begin = pos;
        while (set.effective.size() < params.t) {
            Vertex v = instance.hamilton[pos];
            plan.owner[v] = static_cast<std::int32_t>(id);
            if (is_eff1[v]) set.effective.push_back(v);
            ++pos;
        }
        set.p1_end = pos;
        plan.sets.push_back(std::move(set));
    }

    // Q segments and connector path families along P2.
    std::uint32_t qpos = static_cast<std::uint32_t>(half);
    for (std::uint32_t stage = 1; stage <= params.i0; ++stage) {
        StageFamily family;
        family.stage = stage;
        family.q_begin = qpos;
        family.q_eff = params.q_eff(stage);
        family.first_path = static_cast<std::uint32_t>(plan.total_paths);
        std::uint64_t ell = params.ell(stage);
        std::uint64_t paths = family.q_eff / ell;

        std::uint64_t seen_eff = 0;
        ConnectorPath current;
        current.p2_begin = qpos;
        while (seen_eff < family.q_eff) {
            Vertex v = instance.hamilton[qpos];
            if (is_eff2[v]) {
                ++seen_eff;
                if (family.paths.size() < paths) {
                    current.effective.push_back(v);
                    if (current.effective.size() == ell) {
                        current.p2_end = qpos + 1;
                        family.paths.push_back(std::move(current));
                        current = ConnectorPath{};
                        current.p2_begin = qpos + 1;
                    }
                }
            }
            ++qpos;
        }
        family.q_end = qpos;
        plan.total_paths += family.paths.size();
        plan.stages.push_back(std::move(family));
    }
    return plan;
}

StageState StageState::initial(const BuildPlan& plan) {
    StageState s;
    std::size_t k = plan.sets.size();
    s.unjoined.assign(k * (k - 1) / 2, 1);
    s.unjoined_count = s.unjoined.size();
    s.heavy_ever.assign(k, 0);
    s.joined_degree.assign(k, 0);
    s.spent_effective.assign(k, 0);
    return s;
}

namespace {

struct PathIncidence {
    // branch sets touched by the path's effective vertices, ascending,
    // with the first matching edge realizing each contact
    std::vector<std::uint32_t> sets;
    std::vector<std::pair<Vertex, Vertex>> first_edge;  // aligned with sets

    std::int32_t find(std::uint32_t set_id) const {
        auto it = std::lower_bound(sets.begin(), sets.end(), set_id);
        if (it == sets.end() || *it != set_id) return -1;
        return static_cast<std::int32_t>(it - sets.begin());
    }
};

PathIncidence incidence_of(const ConnectorPath& path, const BuildPlan& plan,
                           const ModelInstance& instance) {
    PathIncidence inc;
    std::vector<std::pair<std::uint32_t, std::pair<Vertex, Vertex>>> touches;
    for (Vertex w : path.effective) {
        Vertex mate = instance.partner[w];
        std::int32_t owner = plan.owner[mate];
        if (owner < 0) continue;  // cannot happen for designated effectives
        touches.push_back({static_cast<std::uint32_t>(owner), {w, mate}});
    }
    std::stable_sort(touches.begin(), touches.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [set_id, edge] : touches) {
        if (!inc.sets.empty() && inc.sets.back() == set_id) continue;
        inc.sets.push_back(set_id);
        inc.first_edge.push_back(edge);
    }
    return inc;
}

}  // namespace

void run_stage(StageState& state, const BuildPlan& plan, const ModelInstance& instance) {
    const BuilderParams& params = plan.params;
    std::uint32_t stage = state.completed_stages + 1;
    if (stage > params.i0) throw std::logic_error("run_stage: all stages already executed");
    const StageFamily& family = plan.stages[stage - 1];
    std::size_t k = plan.sets.size();

    StageLogEntry log;
    log.i = stage;
    log.U_before = state.unjoined_count;

    // Effective-ledger window diagnostic: remaining effectives per set should
    // sit near t/2 * (1 + 3^-(i-1)) once earlier segments are exposed.
    {
        double center = static_cast<double>(params.t) / 2.0 *
                        (1.0 + std::pow(3.0, -(static_cast<double>(stage) - 1.0)));
        double tol = std::cbrt(static_cast<double>(params.n));
        for (std::size_t b = 0; b < k; ++b) {
            double eff = static_cast<double>(params.t) -
                         static_cast<double>(state.spent_effective[b]);
            if (eff < center - tol || eff > center + tol) ++log.eff_window_violations;
        }
    }

    auto pair_id = [&](std::uint32_t a, std::uint32_t b) {
        return MinorCertificate::pair_index(a, b, k);
    };

    bool faithful = params.mode == BuildMode::faithful;
    std::vector<char> eligible = state.unjoined;  // pairs offered to the matching

    if (faithful && state.unjoined_count > 0) {
        // Heavy sets: members of more unjoined pairs than the Delta schedule allows.
        std::vector<std::uint64_t> degree(k, 0);
        std::size_t idx = 0;
        for (std::uint32_t a = 0; a < k; ++a) {
            for (std::uint32_t b = a + 1; b < k; ++b, ++idx) {
                if (state.unjoined[idx]) {
                    ++degree[a];
                    ++degree[b];
                }
            }
        }
        double threshold = params.delta(stage, log.U_before);
        std::vector<char> heavy(k, 0);
        for (std::uint32_t b = 0; b < k; ++b) {
            if (static_cast<double>(degree[b]) > threshold) {
                heavy[b] = 1;
                state.heavy_ever[b] = 1;
                ++log.heavy_count;
            }
        }

        std::vector<std::size_t> bad;  // unjoined pairs with a heavy endpoint, lex order
        idx = 0;
        for (std::uint32_t a = 0; a < k; ++a)
            for (std::uint32_t b = a + 1; b < k; ++b, ++idx)
                if (state.unjoined[idx] && (heavy[a] || heavy[b])) bad.push_back(idx);

        std::uint64_t quota = log.U_before * 26 / 27;
        if (bad.size() >= quota) {
            // Bad pairs dominate: delete exactly the quota, lexicographically,
            // and skip the matching for this stage.
            for (std::uint64_t j = 0; j < quota; ++j) {
                state.unjoined[bad[j]] = 0;
                --state.unjoined_count;
            }
            log.bad_pairs_deleted = quota;
            log.U_after = state.unjoined_count;
            std::uint64_t target = log.U_before / 27;
            log.shortfall_vs_target = log.U_after > target ? log.U_after - target : 0;
            state.log.push_back(log);
            ++state.completed_stages;
            // Exposing the segment still spends its effective vertices.
            for (const ConnectorPath& path : family.paths)
                for (Vertex w : path.effective) {
                    std::int32_t owner = plan.owner[instance.partner[w]];
                    if (owner >= 0) ++state.spent_effective[owner];
                }
            return;
        }
        // Bad pairs leave the unjoined ledger here; their heavy endpoints are
        // discarded wholesale at assembly.
        for (std::size_t pid : bad) {
            eligible[pid] = 0;
            state.unjoined[pid] = 0;
            --state.unjoined_count;
        }
        log.bad_pairs_deleted = bad.size();
    }

    // Auxiliary bipartite graph: eligible pairs vs this stage's paths.
    std::vector<PathIncidence> incidence;
    incidence.reserve(family.paths.size());
    for (const ConnectorPath& path : family.paths)
        incidence.push_back(incidence_of(path, plan, instance));

    std::vector<std::size_t> left_pairs;  // pair ids, lex order
    std::vector<std::int64_t> left_index(k * (k - 1) / 2, -1);
    for (std::size_t pid = 0; pid < eligible.size(); ++pid) {
        if (eligible[pid]) {
            left_index[pid] = static_cast<std::int64_t>(left_pairs.size());
            left_pairs.push_back(pid);
        }
    }

    BipartiteGraph aux(left_pairs.size(), family.paths.size());
    std::vector<std::uint64_t> path_degree(family.paths.size(), 0);
    for (std::size_t j = 0; j < family.paths.size(); ++j) {
        const auto& sets = incidence[j].sets;
        for (std::size_t x = 0; x < sets.size(); ++x) {
            for (std::size_t y = x + 1; y < sets.size(); ++y) {
                std::size_t pid = pair_id(sets[x], sets[y]);
                std::int64_t li = left_index[pid];
                if (li >= 0) {
                    aux.adjacency[static_cast<std::size_t>(li)].push_back(
                        static_cast<std::uint32_t>(j));
                    ++path_degree[j];
                }
            }
        }
    }
    for (std::uint64_t d : path_degree)
        if (d >= params.d_cap) ++log.high_degree_paths;
    log.min_pair_degree = UINT64_MAX;
    for (const auto& adj : aux.adjacency)
        log.min_pair_degree = std::min<std::uint64_t>(log.min_pair_degree, adj.size());
    if (aux.adjacency.empty()) log.min_pair_degree = 0;

    Matching matching = maximum_matching(aux);

    auto set_pair_of = [&](std::size_t pid) {
        // invert the lexicographic pair index
        std::uint32_t a = 0;
        std::size_t remaining = pid;
        while (remaining >= k - 1 - a) {
            remaining -= k - 1 - a;
            ++a;
        }
        return std::pair<std::uint32_t, std::uint32_t>{a, static_cast<std::uint32_t>(a + 1 + remaining)};
    };

    auto mark_joined = [&](std::uint32_t a, std::uint32_t b, std::pair<Vertex, Vertex> witness,
                           bool matched_pair) {
        std::size_t pid = pair_id(a, b);
        if (!state.unjoined[pid]) return;
        state.unjoined[pid] = 0;
        --state.unjoined_count;
        ++state.joined_degree[a];
        ++state.joined_degree[b];
        state.joins.push_back({std::min(a, b), std::max(a, b), witness, matched_pair});
        if (matched_pair)
            ++log.joined_matched;
        else
            ++log.joined_incidental;
    };

    for (std::size_t li = 0; li < left_pairs.size(); ++li) {
        std::uint32_t path_local = matching.pair_of_left[li];
        if (path_local == Matching::kNone) continue;
        ++log.paths_used;
        auto [a, b] = set_pair_of(left_pairs[li]);
        const PathIncidence& inc = incidence[path_local];

        std::uint32_t absorber;
        if (faithful) {
            absorber = std::min(a, b);  // the proof's deterministic tie-break
        } else {
            // Balance connectors across endpoints so joins spread over all sets.
            std::uint32_t lo = std::min(a, b), hi = std::max(a, b);
            absorber = state.joined_degree[hi] < state.joined_degree[lo] ? hi : lo;
        }

        std::int32_t slot = inc.find(absorber);
        AbsorbedPath rec;
        rec.stage = stage;
        rec.global_path_id = family.first_path + static_cast<std::uint32_t>(path_local);
        rec.absorber = absorber;
        rec.link_edge = inc.first_edge[static_cast<std::size_t>(slot)];
        state.absorbed.push_back(rec);

        std::uint32_t other = (absorber == a) ? b : a;
        std::int32_t other_slot = inc.find(other);
        mark_joined(absorber, other, inc.first_edge[static_cast<std::size_t>(other_slot)], true);

        if (!faithful) {
            for (std::size_t s = 0; s < inc.sets.size(); ++s) {
                std::uint32_t touched = inc.sets[s];
                if (touched == absorber || touched == other) continue;
                mark_joined(absorber, touched, inc.first_edge[s], false);
            }
        }
    }

    // Expose the whole segment: every effective vertex of Q_i spends one
    // effective slot in the branch set holding its partner.
    for (const ConnectorPath& path : family.paths)
        for (Vertex w : path.effective) {
            std::int32_t owner = plan.owner[instance.partner[w]];
            if (owner >= 0) ++state.spent_effective[owner];
        }

    log.U_after = state.unjoined_count;
    std::uint64_t target = log.U_before / 27;
    log.shortfall_vs_target = log.U_after > target ? log.U_after - target : 0;
    state.log.push_back(log);
    ++state.completed_stages;
}

namespace {

std::vector<Vertex> set_vertices(const StageState& state, const BuildPlan& plan,
                                 const ModelInstance& instance, std::uint32_t set_id) {
    std::vector<Vertex> out;
    const BranchSet& core = plan.sets[set_id];
    for (std::uint32_t pos = core.p1_begin; pos < core.p1_end; ++pos)
        out.push_back(instance.hamilton[pos]);
    for (const AbsorbedPath& ap : state.absorbed) {
        if (ap.absorber != set_id) continue;
        // resolve the global path id back to its stage family
        for (const StageFamily& family : plan.stages) {
            if (ap.global_path_id < family.first_path ||
                ap.global_path_id >= family.first_path + family.paths.size())
                continue;
            const ConnectorPath& path = family.paths[ap.global_path_id - family.first_path];
            for (std::uint32_t pos = path.p2_begin; pos < path.p2_end; ++pos)
                out.push_back(instance.hamilton[pos]);
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::size_t faithful_discard_order(const StageState& state, const BuildPlan& plan) {
    std::size_t k = plan.sets.size();
    std::vector<char> alive(k, 1);
    for (std::size_t b = 0; b < k; ++b)
        if (state.heavy_ever[b]) alive[b] = 0;
    std::size_t idx = 0;
    for (std::uint32_t a = 0; a < k; ++a)
        for (std::uint32_t b = a + 1; b < k; ++b, ++idx)
            if (state.unjoined[idx] && alive[a] && alive[b]) alive[b] = 0;  // keep the lower id
    return static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
}

AssembleResult assemble(const StageState& state, const BuildPlan& plan,
                        const ModelInstance& instance, const MultiGraph& host) {
    std::size_t k = plan.sets.size();
    bool faithful = plan.params.mode == BuildMode::faithful;
    AssembleResult result;

    std::vector<char> alive(k, 1);
    if (faithful) {
        for (std::size_t b = 0; b < k; ++b)
            if (state.heavy_ever[b]) {
                alive[b] = 0;
                ++result.heavy_discards;
            }
        std::size_t idx = 0;
        for (std::uint32_t a = 0; a < k; ++a)
            for (std::uint32_t b = a + 1; b < k; ++b, ++idx)
                if (state.unjoined[idx] && alive[a] && alive[b]) {
                    alive[b] = 0;
                    ++result.pair_discards;
                }
    } else {
        // Adjacency between full branch sets (cores plus absorbed connectors),
        // realized by any host edge; then drop a greedy vertex cover of the
        // still-unjoined pair graph.
        std::vector<std::int32_t> owner(instance.n, -1);
        for (std::uint32_t id = 0; id < k; ++id)
            for (Vertex v : set_vertices(state, plan, instance, id))
                owner[v] = static_cast<std::int32_t>(id);
        std::vector<char> adjacent(k * k, 0);
        for (const Edge& e : host.edges()) {
            if (e.is_loop()) continue;
            std::int32_t a = owner[e.u], b = owner[e.v];
            if (a < 0 || b < 0 || a == b) continue;
            adjacent[static_cast<std::size_t>(a) * k + b] = 1;
            adjacent[static_cast<std::size_t>(b) * k + a] = 1;
        }
        std::vector<std::size_t> uncovered_degree(k, 0);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                if (a != b && !adjacent[a * k + b]) ++uncovered_degree[a];
        for (;;) {
            std::size_t worst = k;
            std::size_t worst_degree = 0;
            for (std::size_t b = 0; b < k; ++b) {
                if (!alive[b]) continue;
                if (uncovered_degree[b] >= worst_degree && uncovered_degree[b] > 0) {
                    worst = b;  // ties resolve to the largest id, deterministically
                    worst_degree = uncovered_degree[b];
                }
            }
            if (worst == k) break;
            alive[worst] = 0;
            ++result.pair_discards;
            for (std::size_t b = 0; b < k; ++b)
                if (alive[b] && b != worst && !adjacent[worst * k + b] && uncovered_degree[b] > 0)
                    --uncovered_degree[b];
        }
    }

    for (std::uint32_t id = 0; id < k; ++id)
        if (alive[id]) result.surviving_sets.push_back(id);
    if (result.surviving_sets.size() < 2)
        throw DegenerateResult("assemble: fewer than 2 branch sets survive the discard rules");

    MinorCertificate cert;
    cert.host_vertex_count = instance.n;
    cert.order = result.surviving_sets.size();
    for (std::uint32_t id : result.surviving_sets)
        cert.branch_sets.push_back(set_vertices(state, plan, instance, id));

    // Witness edges and per-set spanning trees from one host scan.
    std::size_t order = cert.order;
    std::vector<std::int32_t> who(instance.n, -1);
    for (std::size_t i = 0; i < order; ++i)
        for (Vertex v : cert.branch_sets[i]) who[v] = static_cast<std::int32_t>(i);
    cert.witness_edges.assign(order * (order - 1) / 2, {0, 0});
    std::vector<char> have(cert.witness_edges.size(), 0);

    std::vector<Vertex> uf(instance.n);
    std::iota(uf.begin(), uf.end(), 0u);
    auto find = [&](Vertex v) {
        while (uf[v] != v) {
            uf[v] = uf[uf[v]];
            v = uf[v];
        }
        return v;
    };
    cert.spanning_edges.assign(order, {});
    for (const Edge& e : host.edges()) {
        if (e.is_loop()) continue;
        std::int32_t a = who[e.u], b = who[e.v];
        if (a < 0 || b < 0) continue;
        if (a == b) {
            Vertex ru = find(e.u), rv = find(e.v);
            if (ru != rv) {
                uf[ru] = rv;
                cert.spanning_edges[static_cast<std::size_t>(a)].push_back({e.u, e.v});
            }
        } else {
            std::size_t idx = MinorCertificate::pair_index(static_cast<std::size_t>(a),
                                                           static_cast<std::size_t>(b), order);
            if (!have[idx]) {
                have[idx] = 1;
                cert.witness_edges[idx] = {e.u, e.v};
            }
        }
    }

    // Stage-joined pairs keep their recorded witness: the matching edge from
    // the other branch set into the absorbed connector path.
    std::vector<std::int32_t> survivor_index(k, -1);
    for (std::size_t i = 0; i < result.surviving_sets.size(); ++i)
        survivor_index[result.surviving_sets[i]] = static_cast<std::int32_t>(i);
    for (const PairJoinRecord& join : state.joins) {
        std::int32_t a = survivor_index[join.a], b = survivor_index[join.b];
        if (a < 0 || b < 0) continue;
        std::size_t idx = MinorCertificate::pair_index(static_cast<std::size_t>(a),
                                                       static_cast<std::size_t>(b), order);
        cert.witness_edges[idx] = join.witness;
    }

    cert.stage_log = state.log;
    result.certificate = std::move(cert);
    return result;
}

BuildResult run_build(ModelInstance& instance, const MultiGraph& host, double epsilon,
                      BuildMode mode, std::uint64_t seed_for_record) {
    BuildResult result;
    BuildPlan plan;
    try {
        BuilderParams params = BuilderParams::derive(instance.n, epsilon, instance.x1.size(), mode);
        plan = make_plan(instance, params);
        result.params = plan.params;
    } catch (const InfeasibleParams& e) {
        result.status = BuildStatus::infeasible;
        result.message = e.what();
        return result;
    }

    StageState state = StageState::initial(plan);
    for (std::uint32_t stage = 1; stage <= plan.params.i0; ++stage)
        run_stage(state, plan, instance);
    result.stage_log = state.log;

    try {
        AssembleResult assembled = assemble(state, plan, instance, host);
        MinorCertificate cert = std::move(assembled.certificate);
        cert.r = 3;
        cert.seed = seed_for_record;
        cert.epsilon = epsilon;
        cert.mode = to_string(mode);
        result.certificate = std::move(cert);
    } catch (const DegenerateResult& e) {
        result.status = BuildStatus::degenerate;
        result.message = e.what();
    }
    return result;
}

}  // namespace minorforge
