#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stixel/types.hpp"

namespace stixel {

/// Two-sided piecewise-linear penalty: alpha_neg + beta_neg*delta for delta < 0,
/// alpha_pos + beta_pos*delta for delta > 0, 0 at delta == 0; clamped below at 0.
struct PiecewisePenalty {
    double alpha_neg = 1.0;
    double beta_neg = -1.0;
    double alpha_pos = 1.0;
    double beta_pos = 1.0;
};

struct OrderingPenalty {
    double alpha = 1.0;
    double beta = 1.0;
};

/// Gaussian prior on plane parameters for one geometric class. A fixed flag
/// pins the parameter to its mean and removes it from fitting (the sigma -> 0
/// limit expressed without dividing by zero).
struct PlanePrior {
    double mu_a = 0.0;
    double mu_b = 0.0;
    double sigma_a = 1.0;
    double sigma_b = 1.0;
    bool fix_a = false;
    bool fix_b = false;
    double neg_log_z = 0.0;  // additive per-class constant, default 0
};

struct StixelModelConfig {
    // data term
    double w_l = 0.5;    // semantic weight
    double p_val = 0.95; // prior probability of a valid disparity
    double p_out = 0.15; // outlier probability inside the valid model
    std::array<double, kGeometricClassCount> sigma_disp = {1.0, 1.0, 2.0};  // px, per class

    // priors
    double c_mc = 3.0;  // model complexity cost per stixel
    PiecewisePenalty gravity;
    OrderingPenalty ordering;
    PiecewisePenalty ground_gap;
    // transition[cur][prev]
    std::array<std::array<double, kGeometricClassCount>, kGeometricClassCount> transition = {{
        {{0.0, 2.0, 4.0}},
        {{0.0, 1.0, 2.0}},
        {{2.0, 1.0, 0.0}},
    }};
    std::array<PlanePrior, kGeometricClassCount> plane_prior = {{
        {0.0, 0.25, 100.0, 0.5, false, false, 0.0},   // ground
        {0.0, 0.0, 1000.0, 0.3, false, false, 0.0},   // object
        {0.0, 0.0, 1.0, 1.0, true, true, 0.0},        // sky: pinned to zero disparity
    }};

    // semantic class index -> geometric class; its size defines the expected
    // class count of semantic inputs
    std::vector<GeometricClass> semantic_geometry = {
        GeometricClass::Ground, GeometricClass::Object, GeometricClass::Sky};

    // grid / input handling
    int stixel_width = 8;
    int vertical_downsample = 8;
    double d_max = 128.0;
    bool downsample_median = true;   // horizontal/vertical disparity reduction: median (else mean)
    double semantic_softness = 0.9;  // mass on the true class when softening label maps
    bool robust_reweight = false;    // one reweighted refit after the closed-form plane fit

    int class_count() const { return static_cast<int>(semantic_geometry.size()); }

    const PlanePrior& prior_for(GeometricClass g) const {
        return plane_prior[static_cast<int>(g)];
    }
    double sigma_for(GeometricClass g) const { return sigma_disp[static_cast<int>(g)]; }
};

/// Throws InvalidConfig naming the first violated field; returns normally otherwise.
void validate_config(const StixelModelConfig& cfg);

StixelModelConfig load_config(const std::string& path);
StixelModelConfig parse_config(const std::string& json_text);
std::string serialize_config(const StixelModelConfig& cfg);
void save_config(const StixelModelConfig& cfg, const std::string& path);

/// FNV-1a over the canonical serialization; embedded in output files for provenance.
std::uint64_t config_hash(const StixelModelConfig& cfg);

}  // namespace stixel
