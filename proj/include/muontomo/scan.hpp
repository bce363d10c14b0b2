#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pyramid.hpp"
#include "sinogram.hpp"

namespace muontomo {

enum class ScanAxis { x, y };

struct ScanPlan {
    std::string label;
    std::vector<DetectorPose> poses;
    /// Skips the footprint check; set for the literal in-footprint offset.
    bool allow_inside{false};
};

/// Detector poses marched along one side of the pyramid.
///
/// Axis x: poses travel along x on the -y side at y = -(base/2 + standoff),
/// facing +y. Axis y: poses travel along y on the -x side at
/// x = -(base/2 + standoff), facing +x. Centers are symmetric about zero and
/// span (count-1)*step. `elevation_m` is the height of the bottom pixel row.
///
/// With `literal_offset` the panel is placed at -(base/2) + standoff, inside
/// the footprint, and the plan is flagged to skip footprint validation.
inline ScanPlan linear_scan(ScanAxis axis, double standoff_m, double step_m, int count,
                            const PyramidModel& pyramid = PyramidModel{},
                            double elevation_m = 0.01, int row = 0,
                            bool literal_offset = false) {
    if (count < 1) throw ValidationError("plan.count must be >= 1");
    if (!(step_m >= 0.0)) throw ValidationError("plan.step_m must be >= 0");
    if (!(standoff_m > 0.0)) throw ValidationError("plan.standoff_m must be > 0");

    const double h = pyramid.half_side();
    const double offset = literal_offset ? -h + standoff_m : -(h + standoff_m);
    ScanPlan plan;
    plan.label = std::string(axis == ScanAxis::x ? "x" : "y") + "-scan";
    plan.allow_inside = literal_offset;
    for (int k = 0; k < count; ++k) {
        const double along = (k - (count - 1) / 2.0) * step_m;
        DetectorPose pose = axis == ScanAxis::x
                                ? DetectorPose({along, offset, elevation_m}, 0.0, row)
                                : DetectorPose({offset, along, elevation_m},
                                               -std::numbers::pi / 2.0, row);
        const Vec3& p = pose.position;
        if (!literal_offset && std::abs(p.x) <= h && std::abs(p.y) <= h) {
            throw ValidationError(plan.label + " pose " + std::to_string(k) +
                                  " lies inside the pyramid footprint");
        }
        plan.poses.push_back(pose);
    }
    return plan;
}

/// World corners of both panels of a posed detector.
inline std::vector<Vec3> panel_corners(const DetectorConfig& config, const DetectorPose& pose) {
    const double w = config.panel_width_cm();
    const double t = config.ny * config.pixel_pitch_cm;
    std::vector<Vec3> out;
    for (double depth : {0.0, -config.panel_separation_cm}) {
        for (double across : {0.0, w}) {
            for (double up : {0.0, t}) out.push_back(to_world(config, pose, {across, up, depth}));
        }
    }
    return out;
}

/// Throws a ValidationError naming the first pose whose detector volume
/// reaches into the pyramid.
inline void validate_plan(const DetectorConfig& config, const ScanPlan& plan,
                          const PyramidModel& pyramid) {
    if (plan.poses.empty()) throw ValidationError("plan '" + plan.label + "' has no poses");
    for (std::size_t k = 0; k < plan.poses.size(); ++k) {
        validate_row(config, plan.poses[k]);
        if (plan.allow_inside) continue;
        for (const auto& c : panel_corners(config, plan.poses[k])) {
            if (pyramid.contains(c)) {
                throw ValidationError("plan '" + plan.label + "' pose " + std::to_string(k) +
                                      " places the detector inside the pyramid");
            }
        }
    }
}

/// Concatenates the poses of several plans.
inline ScanPlan combine_plans(const std::vector<ScanPlan>& plans) {
    ScanPlan out;
    for (const auto& p : plans) {
        if (!out.label.empty()) out.label += "+";
        out.label += p.label;
        out.allow_inside = out.allow_inside || p.allow_inside;
        out.poses.insert(out.poses.end(), p.poses.begin(), p.poses.end());
    }
    return out;
}

/// Grid spec whose xi axis spans the pyramid's circumscribed radius.
inline GridSpec grid_spec_for(const PyramidModel& pyramid, double phi_deg = 1.0,
                              double xi_m = 1.0) {
    GridSpec s;
    s.phi_bin_width_rad = phi_deg * std::numbers::pi / 180.0;
    s.xi_bin_width_m = xi_m;
    s.xi_extent_m = pyramid.circumradius();
    return s;
}

/// Union of the row sinograms of every pose. The pyramid only enters through
/// plan validation; sampling itself is pure detector geometry.
inline CoverageGrid plan_coverage(const DetectorConfig& config, const ScanPlan& plan,
                                  const PyramidModel& pyramid, const GridSpec& spec) {
    config.validate();
    validate_plan(config, plan, pyramid);
    CoverageGrid grid(spec);
    for (const auto& pose : plan.poses) {
        CoverageGrid part(spec);
        part.add(row_sinogram(config, pose));
        grid.merge(part);
    }
    return grid;
}

/// Forward-projected footprint of one in-row direction class.
struct ResolutionCell {
    Vec3 center;
    double extent_x{0.0};
    double extent_y{0.0};
    int m{0};
    int n{0};
};

/// Transverse footprint (m) of a pixel-pair solid angle at range R from the
/// pair midpoint: pitch * R / (D/2).
inline double footprint_extent(const DetectorConfig& config, double range_m) {
    return config.pixel_pitch_cm * range_m / (config.panel_separation_cm / 2.0);
}

/// Midpoint between the panels at the center of the pose's bottom row.
inline Vec3 pair_midpoint(const DetectorConfig& config, const DetectorPose& pose) {
    return pose.position - pose.facing() * (config.panel_separation_cm / 200.0);
}

/// Horizontal distance from the pose's central pair midpoint to the pyramid axis.
inline double center_target_distance(const DetectorConfig& config, const DetectorPose& pose) {
    const Vec3 mid = pair_midpoint(config, pose);
    return std::hypot(mid.x, mid.y);
}

/// One cell per in-row class m in (-nx, nx).
///
/// Each class is represented by the pair whose midpoint sits closest to the
/// panel center; the cell is centered at range R along its sight line.
inline std::vector<ResolutionCell> resolution_grid(const DetectorConfig& config,
                                                   const DetectorPose& pose,
                                                   double target_distance_m) {
    config.validate();
    validate_row(config, pose);
    if (!(target_distance_m > 0.0)) throw ValidationError("target distance must be > 0");
    const double extent = footprint_extent(config, target_distance_m);
    std::vector<ResolutionCell> out;
    out.reserve(static_cast<std::size_t>(2 * config.nx - 1));
    for (int m = -(config.nx - 1); m <= config.nx - 1; ++m) {
        const int back_i = (config.nx - 1 - m) / 2;
        const int front_i = back_i + m;
        const Vec3 f = posed_pixel_center(config, pose, {front_i, pose.row, Panel::front});
        const Vec3 b = posed_pixel_center(config, pose, {back_i, pose.row, Panel::back});
        const Vec3 sight = direction_to_world(pose, sight_vector(config, m, 0));
        const Vec3 mid = (f + b) * 0.5;
        out.push_back({mid + sight * target_distance_m, extent, extent, m, 0});
    }
    return out;
}

struct ClassRatio {
    int m{0};
    double ratio{0.0};
};

/// Footprint extent over the straight-ahead xi sampling pitch (one pixel),
/// per in-row class.
inline std::vector<ClassRatio> oversampling_ratio(const DetectorConfig& config,
                                                  double target_distance_m) {
    config.validate();
    if (!(target_distance_m > 0.0)) throw ValidationError("target distance must be > 0");
    const double ratio =
        footprint_extent(config, target_distance_m) / (config.pixel_pitch_cm / 100.0);
    std::vector<ClassRatio> out;
    for (int m = -(config.nx - 1); m <= config.nx - 1; ++m) out.push_back({m, ratio});
    return out;
}

}  // namespace muontomo
