#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "errors.hpp"
#include "vec3.hpp"

namespace muontomo {

/// Two parallel pixelated panels inside a shipping container.
///
/// Detector frame (cm): x runs along the panel rows (pixel column i),
/// y runs up the panel (pixel row j), z is the separation axis. The front
/// panel sits at z = 0 and the back panel at z = -panel_separation, so
/// every trajectory points toward +z.
struct DetectorConfig {
    double pixel_pitch_cm{2.0};
    int nx{480};
    int ny{240};
    double panel_separation_cm{200.0};

    // Container envelope in metres. Only the width and depth constrain the
    // panels; the height is descriptive.
    double container_width_m{9.6};
    double container_height_m{2.4};
    double container_depth_m{2.0};

    bool operator==(const DetectorConfig&) const = default;

    void validate() const {
        if (nx < 1) throw ValidationError("detector.nx must be >= 1");
        if (ny < 1) throw ValidationError("detector.ny must be >= 1");
        if (!(pixel_pitch_cm > 0.0)) throw ValidationError("detector.pixel_pitch_cm must be > 0");
        if (!(panel_separation_cm > 0.0)) {
            throw ValidationError("detector.panel_separation_cm must be > 0");
        }
        if (nx * pixel_pitch_cm > container_width_m * 100.0 + 1e-9) {
            throw ValidationError("detector.nx * detector.pixel_pitch_cm exceeds container_width_m");
        }
        if (panel_separation_cm > container_depth_m * 100.0 + 1e-9) {
            throw ValidationError("detector.panel_separation_cm exceeds container_depth_m");
        }
    }

    double panel_width_cm() const { return nx * pixel_pitch_cm; }
    double pixel_area_cm2() const { return pixel_pitch_cm * pixel_pitch_cm; }
    std::int64_t pixels_per_panel() const { return std::int64_t{nx} * ny; }
};

/// Configuration used for the cross-check against the 16x16, 5 cm, 80 cm
/// telescope of the reference acceptance study.
inline DetectorConfig reference_telescope_config() {
    DetectorConfig c;
    c.pixel_pitch_cm = 5.0;
    c.nx = 16;
    c.ny = 16;
    c.panel_separation_cm = 80.0;
    return c;
}

enum class Panel { front, back };

struct PixelIndex {
    int i{0};
    int j{0};
    Panel panel{Panel::front};
};

/// All pixel pairs sharing the displacement (m, n) = (front.i - back.i,
/// front.j - back.j). Every pair in the class has the same direction of sight.
struct DirectionClass {
    int m{0};
    int n{0};
    std::int64_t count{0};
    Vec3 sight;
};

/// Pixel-pair trajectory in the detector frame (cm). The origin is the
/// front-pixel center; the direction points from back pixel to front pixel.
struct Trajectory {
    Vec3 origin;
    Vec3 direction;
};

inline Vec3 pixel_center(const DetectorConfig& config, const PixelIndex& p) {
    if (p.i < 0 || p.i >= config.nx || p.j < 0 || p.j >= config.ny) {
        throw BoundsError("pixel (" + std::to_string(p.i) + ", " + std::to_string(p.j) +
                          ") outside " + std::to_string(config.nx) + "x" +
                          std::to_string(config.ny) + " grid");
    }
    const double half = config.pixel_pitch_cm / 2.0;
    return {config.pixel_pitch_cm * p.i + half, config.pixel_pitch_cm * p.j + half,
            p.panel == Panel::front ? 0.0 : -config.panel_separation_cm};
}

/// Number of pixel pairs with displacement (m, n).
inline std::int64_t class_count(const DetectorConfig& config, int m, int n) {
    return std::int64_t{config.nx - std::abs(m)} * (config.ny - std::abs(n));
}

inline Vec3 sight_vector(const DetectorConfig& config, int m, int n) {
    return normalize(
        {m * config.pixel_pitch_cm, n * config.pixel_pitch_cm, config.panel_separation_cm});
}

/// Enumerates the (2nx-1)(2ny-1) direction-of-sight classes, ordered by m then n.
///
/// This is the only full-scale representation of the detector: the nominal
/// (nx*ny)^2 pixel pairs are never materialized.
inline std::vector<DirectionClass> direction_classes(const DetectorConfig& config) {
    config.validate();
    std::vector<DirectionClass> out;
    out.reserve(static_cast<std::size_t>(2 * config.nx - 1) * (2 * config.ny - 1));
    for (int m = -(config.nx - 1); m <= config.nx - 1; ++m) {
        for (int n = -(config.ny - 1); n <= config.ny - 1; ++n) {
            out.push_back({m, n, class_count(config, m, n), sight_vector(config, m, n)});
        }
    }
    return out;
}

inline Trajectory trajectory(const DetectorConfig& config, const PixelIndex& front,
                             const PixelIndex& back) {
    if (front.panel != Panel::front || back.panel != Panel::back) {
        throw ValidationError("trajectory needs one front-panel and one back-panel pixel");
    }
    const Vec3 f = pixel_center(config, front);
    const Vec3 b = pixel_center(config, back);
    return {f, normalize(f - b)};
}

/// (nx*ny)^2, in closed form.
inline std::int64_t total_path_count(const DetectorConfig& config) {
    config.validate();
    const std::int64_t p = config.pixels_per_panel();
    return p * p;
}

}  // namespace muontomo
