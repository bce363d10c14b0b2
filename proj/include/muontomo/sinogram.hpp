#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "pose.hpp"

namespace muontomo {

/// One projection line in normal form: x*cos(phi) + y*sin(phi) = xi.
///
/// phi is kept in (-pi/2, pi/2]; the line (phi + pi, -xi) is the same line
/// and is folded onto this half-range on construction.
struct SinogramSample {
    double phi{0.0};
    double xi{0.0};
};

inline SinogramSample fold_sample(double phi, double xi) {
    constexpr double pi = std::numbers::pi;
    phi = wrap_angle(phi);
    if (phi > pi / 2.0) {
        phi -= pi;
        xi = -xi;
    } else if (phi <= -pi / 2.0) {
        phi += pi;
        xi = -xi;
    }
    return {phi, xi};
}

/// In-slice trajectory angle psi = atan2(D, m*pitch) in the detector frame.
/// pi/2 is straight ahead; psi(-m) = pi - psi(m).
inline double trajectory_angle(const DetectorConfig& config, int m) {
    return std::atan2(config.panel_separation_cm, m * config.pixel_pitch_cm);
}

/// Sinogram coordinates of the world line through a front/back column pair
/// in the pose's row.
///
/// phi depends only on the class m = front_i - back_i and the yaw, so every
/// pair of one class yields bit-identical phi.
inline SinogramSample sinogram_point(const DetectorConfig& config, const DetectorPose& pose,
                                     int front_i, int back_i) {
    validate_row(config, pose);
    const Vec3 front =
        posed_pixel_center(config, pose, {front_i, pose.row, Panel::front});
    if (back_i < 0 || back_i >= config.nx) {
        throw BoundsError("back column " + std::to_string(back_i) + " outside 0.." +
                          std::to_string(config.nx - 1));
    }
    const int m = front_i - back_i;
    const Vec3 dir = direction_to_world(
        pose, {m * config.pixel_pitch_cm, 0.0, config.panel_separation_cm});
    const double phi = std::atan2(dir.y, dir.x) - std::numbers::pi / 2.0;
    const double xi = front.x * std::cos(phi) + front.y * std::sin(phi);
    return fold_sample(phi, xi);
}

/// All nx^2 column pairs of the pose's row, ordered by front column then
/// back column.
inline std::vector<SinogramSample> row_sinogram(const DetectorConfig& config,
                                                 const DetectorPose& pose) {
    config.validate();
    validate_row(config, pose);
    std::vector<SinogramSample> out;
    out.reserve(static_cast<std::size_t>(config.nx) * config.nx);
    for (int f = 0; f < config.nx; ++f) {
        for (int b = 0; b < config.nx; ++b) {
            out.push_back(sinogram_point(config, pose, f, b));
        }
    }
    return out;
}

/// Bin layout for coverage accumulation.
struct GridSpec {
    double phi_bin_width_rad{std::numbers::pi / 180.0};
    double xi_bin_width_m{1.0};
    /// Largest |xi| a line through the target can have (the circumradius of
    /// the pyramid base by default).
    double xi_extent_m{230.33 / 2.0 * std::numbers::sqrt2};

    void validate() const {
        if (!(phi_bin_width_rad > 0.0)) throw ValidationError("binning.phi_deg must be > 0");
        if (!(xi_bin_width_m > 0.0)) throw ValidationError("binning.xi_m must be > 0");
        if (!(xi_extent_m > 0.0)) throw ValidationError("xi extent must be > 0");
        const double bins = std::numbers::pi / phi_bin_width_rad;
        if (std::abs(bins - std::round(bins)) > 1e-6 * bins) {
            throw ValidationError("binning.phi_deg must divide 180 evenly");
        }
    }
};

/// Binned hit counts over (phi, xi).
///
/// phi bin k is centered on -pi/2 + k*width; bin 0 straddles the fold at
/// +-pi/2, so samples landing past pi/2 - width/2 wrap into it with xi
/// negated. The xi axis covers [-K*w, K*w) with K = ceil(extent / w); every
/// such bin intersects the reachable band and counts toward the fraction.
/// Samples with xi outside the axis are tallied in out_of_range().
class CoverageGrid {
  public:
    explicit CoverageGrid(const GridSpec& spec) : spec_(spec) {
        spec_.validate();
        n_phi_ = static_cast<int>(std::lround(std::numbers::pi / spec_.phi_bin_width_rad));
        half_xi_ = static_cast<int>(std::ceil(spec_.xi_extent_m / spec_.xi_bin_width_m - 1e-9));
        half_xi_ = std::max(half_xi_, 1);
        hits_.assign(static_cast<std::size_t>(n_phi_) * n_xi(), 0);
    }

    const GridSpec& spec() const { return spec_; }
    int n_phi() const { return n_phi_; }
    int n_xi() const { return 2 * half_xi_; }

    double phi_bin_lo(int k) const {
        return -std::numbers::pi / 2.0 + (k - 0.5) * spec_.phi_bin_width_rad;
    }
    double xi_bin_lo(int k) const { return (k - half_xi_) * spec_.xi_bin_width_m; }

    void add(const SinogramSample& s) {
        ++total_;
        const double u = (s.phi + std::numbers::pi / 2.0) / spec_.phi_bin_width_rad + 0.5;
        int kp = static_cast<int>(std::floor(u));
        double xi = s.xi;
        if (kp >= n_phi_) {
            kp -= n_phi_;
            xi = -xi;
        }
        kp = std::clamp(kp, 0, n_phi_ - 1);
        const double v = std::floor(xi / spec_.xi_bin_width_m) + half_xi_;
        if (v < 0.0 || v >= n_xi()) {
            ++out_of_range_;
            return;
        }
        ++hits_[index(kp, static_cast<int>(v))];
    }

    void add(std::span<const SinogramSample> samples) {
        for (const auto& s : samples) add(s);
    }

    /// Bin-wise sum. Both grids must share a GridSpec.
    CoverageGrid& merge(const CoverageGrid& other) {
        if (other.n_phi_ != n_phi_ || other.half_xi_ != half_xi_ ||
            other.spec_.xi_bin_width_m != spec_.xi_bin_width_m) {
            throw ValidationError("cannot merge coverage grids with different binning");
        }
        for (std::size_t i = 0; i < hits_.size(); ++i) hits_[i] += other.hits_[i];
        total_ += other.total_;
        out_of_range_ += other.out_of_range_;
        return *this;
    }

    std::int64_t hits(int phi_bin, int xi_bin) const { return hits_[index(phi_bin, xi_bin)]; }
    std::int64_t total_hits() const { return total_; }
    std::int64_t out_of_range() const { return out_of_range_; }
    std::int64_t reachable_bins() const { return static_cast<std::int64_t>(hits_.size()); }

    std::int64_t nonempty_bins() const {
        std::int64_t n = 0;
        for (auto h : hits_) n += h > 0 ? 1 : 0;
        return n;
    }

    double covered_fraction() const {
        return static_cast<double>(nonempty_bins()) / static_cast<double>(reachable_bins());
    }

    /// phi bin whose center is nearest the given angle (after folding).
    int phi_bin_of(double phi) const {
        const auto s = fold_sample(phi, 0.0);
        const int k = static_cast<int>(
            std::floor((s.phi + std::numbers::pi / 2.0) / spec_.phi_bin_width_rad + 0.5));
        return k >= n_phi_ ? k - n_phi_ : k;
    }

  private:
    std::size_t index(int kp, int kx) const {
        return static_cast<std::size_t>(kp) * n_xi() + kx;
    }

    GridSpec spec_;
    int n_phi_{0};
    int half_xi_{0};
    std::vector<std::int64_t> hits_;
    std::int64_t total_{0};
    std::int64_t out_of_range_{0};
};

inline CoverageGrid accumulate_coverage(std::span<const SinogramSample> samples,
                                        const GridSpec& spec) {
    CoverageGrid grid(spec);
    grid.add(samples);
    return grid;
}

}  // namespace muontomo
