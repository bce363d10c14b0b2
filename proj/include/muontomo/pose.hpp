#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "detector.hpp"

namespace muontomo {

/// Normalizes an angle to (-pi, pi].
inline double wrap_angle(double a) {
    constexpr double pi = std::numbers::pi;
    a = std::remainder(a, 2.0 * pi);
    if (a <= -pi) a += 2.0 * pi;
    return a;
}

/// Rigid placement of a detector in the pyramid frame (m, z up).
///
/// `position` is the world point of the center of the front panel's bottom
/// row of pixel centers. At yaw 0 the panels face +y and pixel column i
/// increases toward +x.
struct DetectorPose {
    Vec3 position;
    double yaw{0.0};
    int row{0};

    DetectorPose() = default;
    DetectorPose(Vec3 pos, double yaw_rad, int row_j = 0)
        : position(pos), yaw(wrap_angle(yaw_rad)), row(row_j) {}

    /// Unit vector along the straight-ahead sight line.
    Vec3 facing() const { return {-std::sin(yaw), std::cos(yaw), 0.0}; }
    /// Unit vector along increasing pixel column.
    Vec3 lateral() const { return {std::cos(yaw), std::sin(yaw), 0.0}; }
};

/// Maps a detector-frame point (cm) to the world frame (m) for this pose.
inline Vec3 to_world(const DetectorConfig& config, const DetectorPose& pose, const Vec3& local_cm) {
    const double across = (local_cm.x - config.panel_width_cm() / 2.0) / 100.0;
    const double up = (local_cm.y - config.pixel_pitch_cm / 2.0) / 100.0;
    const double ahead = local_cm.z / 100.0;
    return pose.position + pose.lateral() * across + pose.facing() * ahead + Vec3{0.0, 0.0, up};
}

/// Rotates a detector-frame direction into the world frame.
inline Vec3 direction_to_world(const DetectorPose& pose, const Vec3& local) {
    return pose.lateral() * local.x + pose.facing() * local.z + Vec3{0.0, 0.0, local.y};
}

inline Vec3 posed_pixel_center(const DetectorConfig& config, const DetectorPose& pose,
                               const PixelIndex& p) {
    return to_world(config, pose, pixel_center(config, p));
}

inline void validate_row(const DetectorConfig& config, const DetectorPose& pose) {
    if (pose.row < 0 || pose.row >= config.ny) {
        throw BoundsError("row " + std::to_string(pose.row) + " outside 0.." +
                          std::to_string(config.ny - 1));
    }
}

}  // namespace muontomo
