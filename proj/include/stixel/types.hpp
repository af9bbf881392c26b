#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "stixel/errors.hpp"

namespace stixel {

// Row convention used everywhere: v = 1 is the BOTTOM image row of a column,
// v = h the top. Image buffers keep the usual file order (row 0 = top); the
// column extractors flip.

enum class GeometricClass : std::uint8_t { Ground = 0, Object = 1, Sky = 2 };

inline constexpr int kGeometricClassCount = 3;

inline const char* to_string(GeometricClass g) {
    switch (g) {
        case GeometricClass::Ground: return "ground";
        case GeometricClass::Object: return "object";
        case GeometricClass::Sky: return "sky";
    }
    return "?";
}

/// Disparity plane over rows: d(v) = b*v + a.
struct Plane {
    double a = 0.0;  // disparity offset (px)
    double b = 0.0;  // disparity slope (px per row)
};

template <typename Scalar>
inline Scalar plane_disparity(const Plane& p, Scalar v) {
    return static_cast<Scalar>(p.b) * v + static_cast<Scalar>(p.a);
}

inline double plane_disparity(const Plane& p, int v) {
    return p.b * static_cast<double>(v) + p.a;
}

struct Stixel {
    int v_bottom = 1;  // 1-based, inclusive
    int v_top = 1;     // 1-based, inclusive, >= v_bottom
    GeometricClass geom_class = GeometricClass::Object;
    int sem_class = 0;
    Plane plane;
};

/// One column fully tiled by connected stixels: stixels[0].v_bottom == 1,
/// stixels[i].v_bottom == stixels[i-1].v_top + 1, stixels.back().v_top == h.
struct StixelColumn {
    std::vector<Stixel> stixels;
    int height = 0;

    static StixelColumn from_stixels(std::vector<Stixel> s, int h) {
        if (h < 1) throw Error("StixelColumn: height must be >= 1");
        if (s.empty()) throw Error("StixelColumn: empty");
        int expect_bottom = 1;
        for (const Stixel& st : s) {
            if (st.v_bottom != expect_bottom)
                throw Error("StixelColumn: segments must be connected and start at row 1");
            if (st.v_top < st.v_bottom || st.v_top > h)
                throw Error("StixelColumn: segment rows out of range");
            expect_bottom = st.v_top + 1;
        }
        if (s.back().v_top != h) throw Error("StixelColumn: last segment must end at row h");
        StixelColumn col;
        col.stixels = std::move(s);
        col.height = h;
        return col;
    }
};

inline constexpr float kInvalidDisparity = std::numeric_limits<float>::quiet_NaN();

inline bool disparity_valid(float d) {
    return std::isfinite(d);
}

/// Per-column disparity measurements, bottom-up (index 0 = row v=1).
/// Invalid pixels carry NaN; valid entries lie in [0, d_max].
struct DisparityColumn {
    Eigen::VectorXf values;
    Eigen::VectorXf confidences;  // in [0,1]
    float d_max = 128.f;

    int height() const { return static_cast<int>(values.size()); }

    static DisparityColumn create(Eigen::VectorXf values, Eigen::VectorXf confidences, float d_max) {
        if (values.size() < 1) throw Error("DisparityColumn: h must be >= 1");
        if (values.size() != confidences.size())
            throw Error("DisparityColumn: values/confidences length mismatch");
        if (!(d_max > 0)) throw Error("DisparityColumn: d_max must be positive");
        for (Eigen::Index i = 0; i < values.size(); ++i) {
            const float d = values[i];
            if (disparity_valid(d) && (d < 0.f || d > d_max))
                throw Error("DisparityColumn: disparity outside [0, d_max]");
            const float c = confidences[i];
            if (!(c >= 0.f && c <= 1.f)) throw Error("DisparityColumn: confidence outside [0,1]");
        }
        DisparityColumn col;
        col.values = std::move(values);
        col.confidences = std::move(confidences);
        col.d_max = d_max;
        return col;
    }
};

/// Per-column normalized semantic scores, h x C, bottom-up rows.
struct SemanticColumn {
    Eigen::MatrixXf scores;

    int height() const { return static_cast<int>(scores.rows()); }
    int class_count() const { return static_cast<int>(scores.cols()); }

    static SemanticColumn create(Eigen::MatrixXf scores) {
        if (scores.rows() < 1 || scores.cols() < 1)
            throw Error("SemanticColumn: need h >= 1 and C >= 1");
        for (Eigen::Index r = 0; r < scores.rows(); ++r) {
            float sum = 0.f;
            for (Eigen::Index c = 0; c < scores.cols(); ++c) {
                const float s = scores(r, c);
                if (!(s >= 0.f)) throw Error("SemanticColumn: negative score");
                sum += s;
            }
            if (std::abs(sum - 1.f) > 1e-6f) throw Error("SemanticColumn: row scores must sum to 1");
        }
        SemanticColumn col;
        col.scores = std::move(scores);
        return col;
    }
};

// Dense image storage. Row 0 = top image row, matching file order; column
// extraction flips into the bottom-up v convention.
using ImageF = Eigen::MatrixXf;
using ImageU8 = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Per-class score planes sharing one geometry.
struct SemanticImage {
    std::vector<ImageF> channels;

    int width() const { return channels.empty() ? 0 : static_cast<int>(channels[0].cols()); }
    int height() const { return channels.empty() ? 0 : static_cast<int>(channels[0].rows()); }
    int class_count() const { return static_cast<int>(channels.size()); }
};

}  // namespace stixel
