#include "minorforge/certificate.hpp"

#include <stdexcept>

#include "json.hpp"

namespace minorforge {

std::size_t MinorCertificate::pair_index(std::size_t a, std::size_t b, std::size_t order) {
    if (a > b) std::swap(a, b);
    // index of (a,b) in lexicographic enumeration of pairs 0 <= a < b < order
    return a * order - a * (a + 1) / 2 + (b - a - 1);
}

std::string certificate_to_json(const MinorCertificate& cert) {
    nlohmann::ordered_json j;
    j["n"] = cert.host_vertex_count;
    j["r"] = cert.r;
    j["seed"] = cert.seed;
    j["epsilon"] = cert.epsilon;
    j["mode"] = cert.mode;
    j["order"] = cert.order;
    j["branch_sets"] = cert.branch_sets;
    auto edges = nlohmann::ordered_json::array();
    for (const auto& [u, v] : cert.witness_edges) edges.push_back({u, v});
    j["witness_edges"] = edges;
    auto log = nlohmann::ordered_json::array();
    for (const auto& s : cert.stage_log) {
        log.push_back({{"i", s.i},
                       {"U_before", s.U_before},
                       {"U_after", s.U_after},
                       {"heavy_count", s.heavy_count},
                       {"paths_used", s.paths_used}});
    }
    j["stage_log"] = log;
    return j.dump();
}

MinorCertificate certificate_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MinorCertificate cert;
    cert.host_vertex_count = j.at("n").get<std::size_t>();
    cert.r = j.at("r").get<std::uint32_t>();
    cert.seed = j.at("seed").get<std::uint64_t>();
    cert.epsilon = j.at("epsilon").get<double>();
    cert.mode = j.at("mode").get<std::string>();
    cert.order = j.at("order").get<std::size_t>();
    cert.branch_sets = j.at("branch_sets").get<std::vector<std::vector<Vertex>>>();
    for (const auto& e : j.at("witness_edges")) {
        if (e.size() != 2) throw std::invalid_argument("certificate: bad witness edge");
        cert.witness_edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    for (const auto& s : j.at("stage_log")) {
        StageLogEntry entry;
        entry.i = s.at("i").get<std::uint32_t>();
        entry.U_before = s.at("U_before").get<std::uint64_t>();
        entry.U_after = s.at("U_after").get<std::uint64_t>();
        entry.heavy_count = s.at("heavy_count").get<std::uint64_t>();
        entry.paths_used = s.at("paths_used").get<std::uint64_t>();
        cert.stage_log.push_back(entry);
    }
    return cert;
}

}  // namespace minorforge
