#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "pose.hpp"

namespace muontomo {

/// Half-space {p : normal . p <= offset}.
struct HalfSpace {
    Vec3 normal;
    double offset{0.0};
};

/// Square-based pyramid in the world frame: origin at the base center, z up,
/// base edges aligned with x and y, apex at (0, 0, height).
class PyramidModel {
  public:
    explicit PyramidModel(double base_side_m = 230.33, double height_m = 138.7)
        : base_side_(base_side_m), height_(height_m) {
        if (!(base_side_m > 0.0)) throw ValidationError("pyramid.base_side_m must be > 0");
        if (!(height_m > 0.0)) throw ValidationError("pyramid.height_m must be > 0");
        const double h = half_side();
        const double H = height_;
        // Unnormalized face planes keep the apex and base corners exactly on
        // their boundaries: H*x + h*z <= H*h evaluates both sides with the
        // same products.
        planes_ = {{
            {{0.0, 0.0, -1.0}, 0.0},
            {{H, 0.0, h}, H * h},
            {{-H, 0.0, h}, H * h},
            {{0.0, H, h}, H * h},
            {{0.0, -H, h}, H * h},
        }};
    }

    double base_side() const { return base_side_; }
    double height() const { return height_; }
    double half_side() const { return base_side_ / 2.0; }
    /// Radius of the circle through the four base corners.
    double circumradius() const { return half_side() * std::numbers::sqrt2; }
    const std::array<HalfSpace, 5>& half_spaces() const { return planes_; }

    /// Boundary points count as inside.
    bool contains(const Vec3& p) const {
        for (const auto& hs : planes_) {
            const double scale = std::max(1.0, std::abs(hs.offset));
            if (dot(hs.normal, p) > hs.offset + 1e-12 * scale) return false;
        }
        return true;
    }

    struct Vertex {
        std::string label;
        Vec3 point;
    };

    /// Apex and the four base corners, sorted by label.
    std::vector<Vertex> silhouette_vertices() const {
        const double h = half_side();
        return {{"apex", {0.0, 0.0, height_}},
                {"base_mm", {-h, -h, 0.0}},
                {"base_mp", {-h, h, 0.0}},
                {"base_pm", {h, -h, 0.0}},
                {"base_pp", {h, h, 0.0}}};
    }

  private:
    double base_side_;
    double height_;
    std::array<HalfSpace, 5> planes_{};
};

struct WorldRay {
    Vec3 point;
    Vec3 direction;  ///< unit
};

inline bool contains(const PyramidModel& pyramid, const Vec3& point) {
    return pyramid.contains(point);
}

/// Parameter interval [enter, exit] of the ray inside the solid, for t >= 0.
/// Returns enter > exit when the ray misses.
struct ClipInterval {
    double enter{0.0};
    double exit{0.0};
    bool empty() const { return !(exit > enter); }
    double length() const { return empty() ? 0.0 : exit - enter; }
};

inline ClipInterval clip(const PyramidModel& pyramid, const WorldRay& ray) {
    double enter = 0.0;
    double exit = std::numeric_limits<double>::infinity();
    for (const auto& hs : pyramid.half_spaces()) {
        const double rate = dot(hs.normal, ray.direction);
        const double slack = hs.offset - dot(hs.normal, ray.point);
        if (rate == 0.0) {
            if (slack < 0.0) return {1.0, 0.0};
            continue;
        }
        const double t = slack / rate;
        if (rate > 0.0) {
            exit = std::min(exit, t);
        } else {
            enter = std::max(enter, t);
        }
        if (enter > exit) return {1.0, 0.0};
    }
    return {enter, exit};
}

/// Length (m) of the forward ray inside the pyramid; 0 on a miss.
inline double path_length(const PyramidModel& pyramid, const WorldRay& ray) {
    return clip(pyramid, ray).length();
}

struct VertexMargin {
    std::string label;
    double margin_rad{0.0};  ///< negative when outside the trajectory range
    bool subtended{false};
};

struct SubtensionReport {
    bool all_subtended{false};
    std::vector<VertexMargin> vertices;
};

/// Checks that each silhouette vertex falls within the posed detector's
/// extreme trajectory angles, seen from the pose reference point.
///
/// The horizontal margin is atan((nx-1)*pitch/D) minus the vertex bearing from
/// the facing direction; the vertical margin does the same with the elevation
/// and ny. A vertex's margin is the smaller of the two.
inline SubtensionReport subtends(const DetectorConfig& config, const DetectorPose& pose,
                                 const PyramidModel& pyramid) {
    config.validate();
    const double d = config.panel_separation_cm;
    const double max_h = std::atan2((config.nx - 1) * config.pixel_pitch_cm, d);
    const double max_v = std::atan2((config.ny - 1) * config.pixel_pitch_cm, d);

    SubtensionReport report;
    report.all_subtended = true;
    for (const auto& v : pyramid.silhouette_vertices()) {
        const Vec3 rel = v.point - pose.position;
        const double ahead = dot(rel, pose.facing());
        const double across = dot(rel, pose.lateral());
        const double bearing = std::atan2(across, ahead);
        const double elevation = std::atan2(rel.z, ahead);
        const double margin = std::min(max_h - std::abs(bearing), max_v - std::abs(elevation));
        const bool ok = margin >= 0.0;
        report.all_subtended = report.all_subtended && ok;
        report.vertices.push_back({v.label, margin, ok});
    }
    return report;
}

}  // namespace muontomo
