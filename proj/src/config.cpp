#include "stixel/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stixel {

namespace {

using nlohmann::json;

const char* kClassKeys[kGeometricClassCount] = {"ground", "object", "sky"};

void require_finite(double x, const std::string& field) {
    if (!std::isfinite(x)) throw InvalidConfig(field, "must be finite");
}

void require_unit_open(double x, const std::string& field) {
    if (!(x > 0.0 && x < 1.0)) throw InvalidConfig(field, "must lie in (0,1)");
}

void check_penalty(const PiecewisePenalty& p, const std::string& field) {
    for (auto [v, name] : {std::pair{p.alpha_neg, ".alpha_neg"}, {p.alpha_pos, ".alpha_pos"}}) {
        require_finite(v, field + name);
        if (v < 0.0) throw InvalidConfig(field + name, "must be >= 0");
    }
    require_finite(p.beta_neg, field + ".beta_neg");
    require_finite(p.beta_pos, field + ".beta_pos");
}

json penalty_to_json(const PiecewisePenalty& p) {
    return json{{"alpha_neg", p.alpha_neg},
                {"beta_neg", p.beta_neg},
                {"alpha_pos", p.alpha_pos},
                {"beta_pos", p.beta_pos}};
}

PiecewisePenalty penalty_from_json(const json& j, PiecewisePenalty def) {
    def.alpha_neg = j.value("alpha_neg", def.alpha_neg);
    def.beta_neg = j.value("beta_neg", def.beta_neg);
    def.alpha_pos = j.value("alpha_pos", def.alpha_pos);
    def.beta_pos = j.value("beta_pos", def.beta_pos);
    return def;
}

}  // namespace

void validate_config(const StixelModelConfig& cfg) {
    require_finite(cfg.w_l, "w_l");
    if (cfg.w_l < 0.0) throw InvalidConfig("w_l", "must be >= 0");
    require_unit_open(cfg.p_val, "p_val");
    require_unit_open(cfg.p_out, "p_out");
    for (int g = 0; g < kGeometricClassCount; ++g) {
        const std::string field = std::string("sigma_disp.") + kClassKeys[g];
        require_finite(cfg.sigma_disp[g], field);
        if (!(cfg.sigma_disp[g] > 0.0)) throw InvalidConfig(field, "must be > 0");
    }
    require_finite(cfg.c_mc, "c_mc");
    if (cfg.c_mc < 0.0) throw InvalidConfig("c_mc", "must be >= 0");
    check_penalty(cfg.gravity, "gravity");
    check_penalty(cfg.ground_gap, "ground_gap");
    require_finite(cfg.ordering.alpha, "ordering.alpha");
    if (cfg.ordering.alpha < 0.0) throw InvalidConfig("ordering.alpha", "must be >= 0");
    require_finite(cfg.ordering.beta, "ordering.beta");
    for (int i = 0; i < kGeometricClassCount; ++i)
        for (int j = 0; j < kGeometricClassCount; ++j) {
            const std::string field = "transition[" + std::string(kClassKeys[i]) + "][" + kClassKeys[j] + "]";
            require_finite(cfg.transition[i][j], field);
            if (cfg.transition[i][j] < 0.0) throw InvalidConfig(field, "must be >= 0");
        }
    for (int g = 0; g < kGeometricClassCount; ++g) {
        const PlanePrior& pp = cfg.plane_prior[g];
        const std::string field = std::string("plane_prior.") + kClassKeys[g];
        require_finite(pp.mu_a, field + ".mu_a");
        require_finite(pp.mu_b, field + ".mu_b");
        require_finite(pp.neg_log_z, field + ".neg_log_z");
        if (!pp.fix_a) {
            require_finite(pp.sigma_a, field + ".sigma_a");
            if (!(pp.sigma_a > 0.0)) throw InvalidConfig(field + ".sigma_a", "must be > 0 unless fix_a");
        }
        if (!pp.fix_b) {
            require_finite(pp.sigma_b, field + ".sigma_b");
            if (!(pp.sigma_b > 0.0)) throw InvalidConfig(field + ".sigma_b", "must be > 0 unless fix_b");
        }
    }
    if (cfg.semantic_geometry.empty())
        throw InvalidConfig("semantic_geometry", "must map at least one class");
    for (std::size_t i = 0; i < cfg.semantic_geometry.size(); ++i) {
        const int g = static_cast<int>(cfg.semantic_geometry[i]);
        if (g < 0 || g >= kGeometricClassCount)
            throw InvalidConfig("semantic_geometry[" + std::to_string(i) + "]", "unknown geometric class");
    }
    if (cfg.stixel_width < 1) throw InvalidConfig("stixel_width", "must be >= 1");
    if (cfg.vertical_downsample < 1) throw InvalidConfig("vertical_downsample", "must be >= 1");
    require_finite(cfg.d_max, "d_max");
    if (!(cfg.d_max > 0.0)) throw InvalidConfig("d_max", "must be > 0");
    if (!(cfg.semantic_softness > 0.0 && cfg.semantic_softness <= 1.0))
        throw InvalidConfig("semantic_softness", "must lie in (0,1]");
}

std::string serialize_config(const StixelModelConfig& cfg) {
    json j;
    j["w_l"] = cfg.w_l;
    j["p_val"] = cfg.p_val;
    j["p_out"] = cfg.p_out;
    for (int g = 0; g < kGeometricClassCount; ++g) j["sigma_disp"][kClassKeys[g]] = cfg.sigma_disp[g];
    j["c_mc"] = cfg.c_mc;
    j["gravity"] = penalty_to_json(cfg.gravity);
    j["ordering"] = json{{"alpha", cfg.ordering.alpha}, {"beta", cfg.ordering.beta}};
    j["ground_gap"] = penalty_to_json(cfg.ground_gap);
    for (int i = 0; i < kGeometricClassCount; ++i)
        for (int k = 0; k < kGeometricClassCount; ++k)
            j["transition"][kClassKeys[i]][kClassKeys[k]] = cfg.transition[i][k];
    for (int g = 0; g < kGeometricClassCount; ++g) {
        const PlanePrior& pp = cfg.plane_prior[g];
        j["plane_prior"][kClassKeys[g]] = json{
            {"mu_a", pp.mu_a},       {"mu_b", pp.mu_b},   {"sigma_a", pp.sigma_a},
            {"sigma_b", pp.sigma_b}, {"fix_a", pp.fix_a}, {"fix_b", pp.fix_b},
            {"neg_log_z", pp.neg_log_z}};
    }
    json geo = json::array();
    for (GeometricClass g : cfg.semantic_geometry) geo.push_back(to_string(g));
    j["semantic_geometry"] = geo;
    j["stixel_width"] = cfg.stixel_width;
    j["vertical_downsample"] = cfg.vertical_downsample;
    j["d_max"] = cfg.d_max;
    j["downsample_disparity"] = cfg.downsample_median ? "median" : "mean";
    j["semantic_softness"] = cfg.semantic_softness;
    j["robust_reweight"] = cfg.robust_reweight;
    return j.dump(2);
}

StixelModelConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidConfig("<root>", std::string("not valid JSON: ") + e.what());
    }
    StixelModelConfig cfg;
    try {
        cfg.w_l = j.value("w_l", cfg.w_l);
        cfg.p_val = j.value("p_val", cfg.p_val);
        cfg.p_out = j.value("p_out", cfg.p_out);
        if (j.contains("sigma_disp"))
            for (int g = 0; g < kGeometricClassCount; ++g)
                cfg.sigma_disp[g] = j["sigma_disp"].value(kClassKeys[g], cfg.sigma_disp[g]);
        cfg.c_mc = j.value("c_mc", cfg.c_mc);
        if (j.contains("gravity")) cfg.gravity = penalty_from_json(j["gravity"], cfg.gravity);
        if (j.contains("ordering")) {
            cfg.ordering.alpha = j["ordering"].value("alpha", cfg.ordering.alpha);
            cfg.ordering.beta = j["ordering"].value("beta", cfg.ordering.beta);
        }
        if (j.contains("ground_gap")) cfg.ground_gap = penalty_from_json(j["ground_gap"], cfg.ground_gap);
        if (j.contains("transition"))
            for (int i = 0; i < kGeometricClassCount; ++i)
                if (j["transition"].contains(kClassKeys[i]))
                    for (int k = 0; k < kGeometricClassCount; ++k)
                        cfg.transition[i][k] =
                            j["transition"][kClassKeys[i]].value(kClassKeys[k], cfg.transition[i][k]);
        if (j.contains("plane_prior"))
            for (int g = 0; g < kGeometricClassCount; ++g)
                if (j["plane_prior"].contains(kClassKeys[g])) {
                    const json& p = j["plane_prior"][kClassKeys[g]];
                    PlanePrior& pp = cfg.plane_prior[g];
                    pp.mu_a = p.value("mu_a", pp.mu_a);
                    pp.mu_b = p.value("mu_b", pp.mu_b);
                    pp.sigma_a = p.value("sigma_a", pp.sigma_a);
                    pp.sigma_b = p.value("sigma_b", pp.sigma_b);
                    pp.fix_a = p.value("fix_a", pp.fix_a);
                    pp.fix_b = p.value("fix_b", pp.fix_b);
                    pp.neg_log_z = p.value("neg_log_z", pp.neg_log_z);
                }
        if (j.contains("semantic_geometry")) {
            cfg.semantic_geometry.clear();
            for (const json& e : j["semantic_geometry"]) {
                const std::string name = e.get<std::string>();
                if (name == "ground")
                    cfg.semantic_geometry.push_back(GeometricClass::Ground);
                else if (name == "object")
                    cfg.semantic_geometry.push_back(GeometricClass::Object);
                else if (name == "sky")
                    cfg.semantic_geometry.push_back(GeometricClass::Sky);
                else
                    throw InvalidConfig("semantic_geometry", "unknown class name '" + name + "'");
            }
        }
        cfg.stixel_width = j.value("stixel_width", cfg.stixel_width);
        cfg.vertical_downsample = j.value("vertical_downsample", cfg.vertical_downsample);
        cfg.d_max = j.value("d_max", cfg.d_max);
        if (j.contains("downsample_disparity")) {
            const std::string mode = j["downsample_disparity"].get<std::string>();
            if (mode == "median")
                cfg.downsample_median = true;
            else if (mode == "mean")
                cfg.downsample_median = false;
            else
                throw InvalidConfig("downsample_disparity", "must be 'median' or 'mean'");
        }
        cfg.semantic_softness = j.value("semantic_softness", cfg.semantic_softness);
        cfg.robust_reweight = j.value("robust_reweight", cfg.robust_reweight);
    } catch (const json::exception& e) {
        throw InvalidConfig("<root>", std::string("bad field type: ") + e.what());
    }
    validate_config(cfg);
    return cfg;
}

StixelModelConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void save_config(const StixelModelConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config file: " + path);
    out << serialize_config(cfg) << '\n';
}

std::uint64_t config_hash(const StixelModelConfig& cfg) {
    const std::string text = serialize_config(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace stixel
