#pragma once

#include <array>
#include <vector>

#include "stixel/config.hpp"
#include "stixel/types.hpp"

namespace stixel {

struct SegmentDataCost {
    double total = 0.0;
    int valid_count = 0;
};

/// -w_l * log(score), with scores floored at 1e-6 before the log.
double semantic_pixel_cost(float score, double w_l);

/// Number of integer disparities in [0, d_max].
int discrete_disparity_count(double d_max);

/// log of Z_G(t, mu) = sum_{d=0}^{D} exp(-(t*(d-mu))^2), computed by windowed
/// discrete summation with a stable max shift. Exact to double precision.
double log_gaussian_partition_exact(double t, double mu, int d_count);

/// Per-column evaluator of log Z_G. When the column carries one uniform
/// confidence value it precomputes per-class lookup tables over the quantized
/// plane-disparity offset (exact node values, cubic interpolation); otherwise
/// every query falls back to exact summation. Immutable after construction.
class DisparitySensor {
public:
    DisparitySensor(const DisparityColumn& column, const StixelModelConfig& cfg);

    /// Evaluator that always sums exactly, never tabulates.
    static DisparitySensor exact_only(const StixelModelConfig& cfg);

    /// t must equal confidence / sigma_class of the queried pixel.
    double log_partition(GeometricClass g, double t, double mu) const;

    bool tabulated() const { return tabulated_; }
    int disparity_count() const { return d_count_; }

private:
    struct Table {
        double t = -1.0;
        double mu_lo = 0.0;
        std::vector<double> logz;
    };

    std::array<Table, kGeometricClassCount> tables_;
    bool tabulated_ = false;
    int d_count_ = 0;
};

/// Config-derived constants of the disparity mixture, shared by all evaluation
/// paths so equal inputs give bitwise-equal costs.
struct MixtureTerms {
    double log_p_val;
    double log_not_p_val;   // -cost of the invalid branch is log(1 - p_val)
    double log_out;         // log(p_out / Z_U), -inf when p_out == 0
    double log_inlier;      // log(1 - p_out), -inf when p_out == 1
    int d_count;
};

MixtureTerms mixture_terms(const StixelModelConfig& cfg);

/// Pixel disparity energy under the stixel's plane: the invalid branch costs
/// -log(1 - p_val); valid measurements are scored against the outlier-robust
/// Gaussian mixture centered at plane_disparity(stixel.plane, v).
double disparity_pixel_cost(float d, float c, const Stixel& stixel, int v,
                            const StixelModelConfig& cfg, const DisparitySensor& sensor);

/// Convenience overload using exact partition sums (no per-column tables).
double disparity_pixel_cost(float d, float c, const Stixel& stixel, int v,
                            const StixelModelConfig& cfg);

/// Direct per-row sum of disparity + weighted semantic costs over [v_b, v_t].
SegmentDataCost segment_data_cost(int v_b, int v_t, GeometricClass geom, int sem_class,
                                  const Plane& plane, const DisparityColumn& dcol,
                                  const SemanticColumn& scol, const StixelModelConfig& cfg);

namespace detail {

/// Row cost core shared by the reference path and the DP scorer.
double disparity_row_cost(float d, float c, const Plane& plane, GeometricClass g, int v,
                          double sigma_g, const MixtureTerms& mix, const DisparitySensor& sensor);

}  // namespace detail

}  // namespace stixel
