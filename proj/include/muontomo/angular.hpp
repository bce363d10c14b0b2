#pragma once

#include <cmath>
#include <vector>

#include "detector.hpp"

namespace muontomo {

/// Angular resolution of the (m, n) class without tilt correction, in sr.
///
/// A / r^2 with A the pixel area and r the distance from the midpoint of the
/// pair to either pixel, i.e. half the center-to-center distance. For the
/// straight-ahead class this is pitch^2 / (D/2)^2.
inline double solid_angle_untilted(const DetectorConfig& config, int m, int n) {
    const double dx = m * config.pixel_pitch_cm;
    const double dy = n * config.pixel_pitch_cm;
    const double d = config.panel_separation_cm;
    const double r_half_sq = (dx * dx + dy * dy + d * d) / 4.0;
    return config.pixel_area_cm2() / r_half_sq;
}

/// cos of the horizontal and vertical tilt of the class's sight line.
struct TiltCosines {
    double horizontal{1.0};
    double vertical{1.0};
};

inline TiltCosines tilt_cosines(const DetectorConfig& config, int m, int n) {
    const double d = config.panel_separation_cm;
    const double dx = m * config.pixel_pitch_cm;
    const double dy = n * config.pixel_pitch_cm;
    return {d / std::sqrt(d * d + dx * dx), d / std::sqrt(d * d + dy * dy)};
}

/// Untilted value scaled by the per-axis projected-area cosines.
inline double solid_angle_tilted(const DetectorConfig& config, int m, int n) {
    if (m == 0 && n == 0) return solid_angle_untilted(config, 0, 0);
    const TiltCosines c = tilt_cosines(config, m, n);
    return solid_angle_untilted(config, m, n) * c.horizontal * c.vertical;
}

/// Signed (theta, psi) angles of the class's sight line, for plotting maps.
struct SightAngles {
    double theta{0.0};  ///< horizontal, atan(m*pitch / D)
    double psi{0.0};    ///< vertical, atan(n*pitch / D)
};

inline SightAngles angular_map_axes(const DetectorConfig& config, int m, int n) {
    return {std::atan2(m * config.pixel_pitch_cm, config.panel_separation_cm),
            std::atan2(n * config.pixel_pitch_cm, config.panel_separation_cm)};
}

struct AcceptanceEntry {
    DirectionClass cls;
    double solid_angle_untilted_sr{0.0};
    double solid_angle_tilted_sr{0.0};
    double detection_area_cm2{0.0};
    double acceptance_cm2sr{0.0};
};

/// Detection area times angular resolution, per direction class, in the
/// order produced by direction_classes(). With tilt == false the untilted
/// solid angle is used instead.
inline std::vector<AcceptanceEntry> acceptance_map(const DetectorConfig& config,
                                                   bool tilt = true) {
    const auto classes = direction_classes(config);
    std::vector<AcceptanceEntry> out;
    out.reserve(classes.size());
    for (const auto& c : classes) {
        AcceptanceEntry e;
        e.cls = c;
        e.solid_angle_untilted_sr = solid_angle_untilted(config, c.m, c.n);
        e.solid_angle_tilted_sr = solid_angle_tilted(config, c.m, c.n);
        e.detection_area_cm2 = static_cast<double>(c.count) * config.pixel_area_cm2();
        e.acceptance_cm2sr =
            e.detection_area_cm2 * (tilt ? e.solid_angle_tilted_sr : e.solid_angle_untilted_sr);
        out.push_back(e);
    }
    return out;
}

}  // namespace muontomo
