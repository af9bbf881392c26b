#include "stixel/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stixel {

namespace {

constexpr double kScoreFloor = 1e-6;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Terms below exp(-45) relative to the window peak are dropped; the truncation
// error is ~1e-20 of the sum.
constexpr double kExpCutoff = 45.0;

// Tables cover t < kTableMaxT at 1/16 px; the cubic interpolation error stays
// below ~2e-9 there. Larger t means a narrow kernel where direct summation
// touches only a handful of terms.
constexpr double kTableMaxT = 1.25;
constexpr double kTableStep = 1.0 / 16.0;
constexpr double kTablePad = 4.0;

double logsumexp2(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace

double semantic_pixel_cost(float score, double w_l) {
    const double s = std::max(static_cast<double>(score), kScoreFloor);
    return -w_l * std::log(s);
}

int discrete_disparity_count(double d_max) {
    return static_cast<int>(std::llround(std::floor(d_max))) + 1;
}

double log_gaussian_partition_exact(double t, double mu, int d_count) {
    const int hi_d = d_count - 1;
    if (t < 1e-12) return std::log(static_cast<double>(d_count));

    const double nearest = std::clamp(std::round(mu), 0.0, static_cast<double>(hi_d));
    const double m = t * t * (nearest - mu) * (nearest - mu);

    // window of terms within exp(-kExpCutoff) of the peak term
    const double half_width = std::sqrt(m + kExpCutoff) / t;
    int lo = std::max(0, static_cast<int>(std::ceil(mu - half_width)));
    int hi = std::min(hi_d, static_cast<int>(std::floor(mu + half_width)));
    if (lo > hi) {
        lo = static_cast<int>(nearest);
        hi = lo;
    }

    double sum = 0.0;
    for (int d = lo; d <= hi; ++d) {
        const double delta = t * (static_cast<double>(d) - mu);
        sum += std::exp(m - delta * delta);
    }
    return -m + std::log(sum);
}

DisparitySensor::DisparitySensor(const DisparityColumn& column, const StixelModelConfig& cfg) {
    d_count_ = discrete_disparity_count(cfg.d_max);

    const Eigen::VectorXf& conf = column.confidences;
    const float c0 = conf.size() > 0 ? conf[0] : 1.f;
    bool uniform = true;
    for (Eigen::Index i = 1; i < conf.size(); ++i)
        if (conf[i] != c0) {
            uniform = false;
            break;
        }
    if (!uniform) return;

    const int nodes =
        static_cast<int>(std::llround((d_count_ - 1 + 2 * kTablePad) / kTableStep)) + 1;
    for (int g = 0; g < kGeometricClassCount; ++g) {
        const double t = static_cast<double>(c0) / cfg.sigma_disp[g];
        if (!(t > 1e-12 && t < kTableMaxT)) continue;  // exact path handles these cheaply
        Table& tab = tables_[g];
        tab.t = t;
        tab.mu_lo = -kTablePad;
        tab.logz.resize(nodes);
        for (int i = 0; i < nodes; ++i)
            tab.logz[i] = log_gaussian_partition_exact(t, tab.mu_lo + i * kTableStep, d_count_);
        tabulated_ = true;
    }
}

double DisparitySensor::log_partition(GeometricClass g, double t, double mu) const {
    const Table& tab = tables_[static_cast<int>(g)];
    if (tab.t == t) {
        const double x = (mu - tab.mu_lo) / kTableStep;
        const int n = static_cast<int>(tab.logz.size());
        if (x >= 1.0 && x <= n - 3.0) {
            // Catmull-Rom through the four surrounding nodes
            const int i = static_cast<int>(x);
            const double f = x - i;
            const double p0 = tab.logz[i - 1], p1 = tab.logz[i], p2 = tab.logz[i + 1],
                         p3 = tab.logz[i + 2];
            return p1 + 0.5 * f *
                            (p2 - p0 +
                             f * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                  f * (3.0 * (p1 - p2) + p3 - p0)));
        }
    }
    return log_gaussian_partition_exact(t, mu, d_count_);
}

MixtureTerms mixture_terms(const StixelModelConfig& cfg) {
    MixtureTerms m;
    m.d_count = discrete_disparity_count(cfg.d_max);
    m.log_p_val = std::log(cfg.p_val);
    m.log_not_p_val = std::log1p(-cfg.p_val);
    m.log_out = cfg.p_out > 0.0 ? std::log(cfg.p_out) - std::log(static_cast<double>(m.d_count))
                                : kNegInf;
    m.log_inlier = cfg.p_out < 1.0 ? std::log1p(-cfg.p_out) : kNegInf;
    return m;
}

namespace detail {

double disparity_row_cost(float d, float c, const Plane& plane, GeometricClass g, int v,
                          double sigma_g, const MixtureTerms& mix, const DisparitySensor& sensor) {
    if (!disparity_valid(d)) return -mix.log_not_p_val;

    const double t = static_cast<double>(c) / sigma_g;
    const double mu = plane_disparity(plane, v);
    const double delta = t * (static_cast<double>(d) - mu);
    const double log_gauss = mix.log_inlier - delta * delta - sensor.log_partition(g, t, mu);
    return -mix.log_p_val - logsumexp2(mix.log_out, log_gauss);
}

}  // namespace detail

double disparity_pixel_cost(float d, float c, const Stixel& stixel, int v,
                            const StixelModelConfig& cfg, const DisparitySensor& sensor) {
    const MixtureTerms mix = mixture_terms(cfg);
    return detail::disparity_row_cost(d, c, stixel.plane, stixel.geom_class, v,
                                      cfg.sigma_for(stixel.geom_class), mix, sensor);
}

double disparity_pixel_cost(float d, float c, const Stixel& stixel, int v,
                            const StixelModelConfig& cfg) {
    DisparityColumn one;
    one.values = Eigen::VectorXf::Constant(1, kInvalidDisparity);
    one.confidences = Eigen::VectorXf::Constant(1, c);
    one.d_max = static_cast<float>(cfg.d_max);
    // a single-row column is trivially uniform, so this still uses the table
    // policy only when it matches the pipeline's; exactness is preserved either way
    const DisparitySensor sensor(one, cfg);
    return disparity_pixel_cost(d, c, stixel, v, cfg, sensor);
}

SegmentDataCost segment_data_cost(int v_b, int v_t, GeometricClass geom, int sem_class,
                                  const Plane& plane, const DisparityColumn& dcol,
                                  const SemanticColumn& scol, const StixelModelConfig& cfg) {
    if (v_b < 1 || v_t < v_b || v_t > dcol.height()) throw Error("segment_data_cost: bad row range");
    if (dcol.height() != scol.height()) throw HeightMismatch("segment_data_cost: column heights differ");

    const MixtureTerms mix = mixture_terms(cfg);
    const DisparitySensor sensor(dcol, cfg);
    const double sigma_g = cfg.sigma_for(geom);

    SegmentDataCost out;
    for (int v = v_b; v <= v_t; ++v) {
        const float d = dcol.values[v - 1];
        const float c = dcol.confidences[v - 1];
        out.total += detail::disparity_row_cost(d, c, plane, geom, v, sigma_g, mix, sensor);
        out.total += semantic_pixel_cost(scol.scores(v - 1, sem_class), cfg.w_l);
        if (disparity_valid(d)) ++out.valid_count;
    }
    return out;
}

}  // namespace stixel
