#include "specbal/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace specbal {

namespace {

nlohmann::json config_to_json(const SolveConfig& cfg) {
    nlohmann::json j;
    j["epsilon"] = cfg.coloring.epsilon;
    j["delta"] = cfg.coloring.delta;
    j["c_bound"] = cfg.coloring.c_bound;
    j["max_restarts"] = cfg.coloring.max_restarts;
    j["freeze_tol"] = cfg.coloring.freeze_tol;
    j["step_scale"] = cfg.coloring.step_scale;
    j["adaptive_radius"] = cfg.coloring.adaptive_radius;
    j["adaptive_factor"] = cfg.coloring.adaptive_factor;
    j["radius_samples"] = cfg.coloring.radius_samples;
    j["theoretical"] = cfg.coloring.theoretical;
    j["projection_max_iterations"] = cfg.coloring.projection.max_iterations;
    j["projection_primal_tol"] = cfg.coloring.projection.primal_tol;
    j["projection_penalty"] = cfg.coloring.projection.penalty;
    j["endgame_threshold"] = cfg.endgame_threshold;
    j["recenter"] = cfg.recenter;
    j["threads"] = cfg.threads;
    return j;
}

}  // namespace

std::string report_to_json(const SolveReport& report) {
    nlohmann::json j;
    j["library_version"] = kLibraryVersion;
    j["instance_label"] = report.instance_label;
    j["n"] = report.n;
    j["d"] = report.d;
    j["seed"] = report.seed;
    j["signs"] = nlohmann::json::array();
    for (double v : report.signs.values) j["signs"].push_back(static_cast<int>(v));
    j["discrepancy"] = report.discrepancy;
    j["rounds"] = report.rounds;
    j["truncated"] = report.truncated;
    j["truncation_f"] = report.truncation_f;
    j["endgame_norm"] = report.endgame_norm;
    j["bounds"] = {
        {"sigma", report.bounds.sigma},
        {"v", report.bounds.v},
        {"f", report.bounds.f},
        {"frobenius_budget", report.bounds.frobenius_budget},
        {"chernoff", report.chernoff},
        // C = 4 is an empirical working constant, not a verified value
        {"bbvh_c4", report.bbvh_c4},
    };
    j["config"] = config_to_json(report.config);
    j["ledger"] = nlohmann::json::array();
    for (const RoundRecord& r : report.ledger) {
        j["ledger"].push_back({
            {"round", r.round},
            {"n_t", r.n_t},
            {"sigma_t", r.sigma_t},
            {"f_t", r.f_t},
            {"radius_t", r.radius_t},
            {"achieved_norm", r.achieved_norm},
            {"total_norm", r.total_norm},
            {"restarts", r.restarts},
            {"subspace_dim", r.subspace_dim},
            {"frozen_after", r.frozen_after},
        });
    }
    return j.dump(2) + "\n";
}

void write_report(const SolveReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("report: cannot open file for writing: " + path);
    out << report_to_json(report);
    if (!out) throw Error("report: write failed: " + path);
}

ParsedReport read_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("report: cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("report: malformed JSON: ") + e.what());
    }
    ParsedReport out;
    for (const auto& v : j.at("signs")) out.signs.values.push_back(v.get<double>());
    out.signs.validate();
    out.discrepancy = j.at("discrepancy").get<double>();
    out.seed = j.at("seed").get<std::uint64_t>();
    return out;
}

}  // namespace specbal
