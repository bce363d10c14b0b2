#pragma once

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "angular.hpp"
#include "config.hpp"
#include "csv.hpp"

// CSV data products behind the CLI subcommands. Each command validates the
// run config, writes its product(s) under `out_dir` and prints a short
// summary to `log`.

namespace muontomo {

/// Process exit codes.
enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_io = 2, exit_not_subtended = 3 };

struct CommandResult {
    int exit_code{exit_ok};
    std::vector<std::filesystem::path> products;
};

namespace detail {

inline std::filesystem::path prepare_out_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string() +
                      (ec ? ": " + ec.message() : std::string{}));
    }
    return dir;
}

}  // namespace detail

inline CommandResult cmd_acceptance(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                    std::ostream& log) {
    cfg.detector.validate();
    const auto path = detail::prepare_out_dir(out_dir) / "classes.csv";
    CsvWriter csv(path, {"m", "n", "count", "theta_rad", "psi_rad", "solid_angle_untilted_sr",
                         "solid_angle_tilted_sr", "detection_area_cm2", "acceptance_cm2sr"});
    double peak = 0.0;
    for (const auto& e : acceptance_map(cfg.detector, cfg.tilt)) {
        const auto axes = angular_map_axes(cfg.detector, e.cls.m, e.cls.n);
        csv.field(e.cls.m).field(e.cls.n).field(e.cls.count);
        csv.field(axes.theta).field(axes.psi);
        csv.field(e.solid_angle_untilted_sr).field(e.solid_angle_tilted_sr);
        csv.field(e.detection_area_cm2).field(e.acceptance_cm2sr);
        csv.end_row();
        peak = std::max(peak, e.acceptance_cm2sr);
    }
    csv.commit();
    log << "classes " << csv.rows() << "\n"
        << "total_paths " << total_path_count(cfg.detector) << "\n"
        << "peak_solid_angle_sr "
        << format_double(cfg.tilt ? solid_angle_tilted(cfg.detector, 0, 0)
                                  : solid_angle_untilted(cfg.detector, 0, 0))
        << "\n"
        << "peak_acceptance_cm2sr " << format_double(peak) << "\n";
    return {exit_ok, {path}};
}

inline CommandResult cmd_sinogram(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                  std::ostream& log) {
    cfg.validate();
    const auto dir = detail::prepare_out_dir(out_dir);
    const ScanPlan plan = combine_plans(cfg.scan_plans());
    const GridSpec spec = cfg.grid_spec();

    CsvWriter sino(dir / "sinogram.csv", {"pose_id", "phi_rad", "xi_m"});
    CoverageGrid grid(spec);
    for (std::size_t id = 0; id < plan.poses.size(); ++id) {
        auto samples = row_sinogram(cfg.detector, plan.poses[id]);
        grid.add(samples);
        std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
            return a.phi < b.phi || (a.phi == b.phi && a.xi < b.xi);
        });
        for (const auto& s : samples) {
            sino.field(static_cast<std::int64_t>(id)).field(s.phi).field(s.xi);
            sino.end_row();
        }
    }
    sino.commit();

    CsvWriter cov(dir / "coverage.csv", {"phi_bin_lo_rad", "xi_bin_lo_m", "hits"});
    for (int kp = 0; kp < grid.n_phi(); ++kp) {
        for (int kx = 0; kx < grid.n_xi(); ++kx) {
            cov.field(grid.phi_bin_lo(kp)).field(grid.xi_bin_lo(kx)).field(grid.hits(kp, kx));
            cov.end_row();
        }
    }
    cov.commit();

    log << "poses " << plan.poses.size() << "\n"
        << "samples " << grid.total_hits() << "\n"
        << "out_of_range " << grid.out_of_range() << "\n"
        << "covered_fraction " << format_double(grid.covered_fraction()) << "\n";
    return {exit_ok, {dir / "sinogram.csv", dir / "coverage.csv"}};
}

inline CommandResult cmd_pathlength(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                    std::ostream& log) {
    cfg.validate();
    const auto path = detail::prepare_out_dir(out_dir) / "pathlength.csv";
    const ScanPlan plan = combine_plans(cfg.scan_plans());
    const PyramidModel pyramid = cfg.pyramid();
    const auto& det = cfg.detector;

    CsvWriter csv(path, {"pose_id", "front_i", "back_i", "length_m"});
    double longest = 0.0;
    for (std::size_t id = 0; id < plan.poses.size(); ++id) {
        const auto& pose = plan.poses[id];
        for (int f = 0; f < det.nx; ++f) {
            const Vec3 origin = posed_pixel_center(det, pose, {f, pose.row, Panel::front});
            for (int b = 0; b < det.nx; ++b) {
                const Vec3 dir = direction_to_world(pose, sight_vector(det, f - b, 0));
                const double len = path_length(pyramid, {origin, dir});
                longest = std::max(longest, len);
                csv.field(static_cast<std::int64_t>(id)).field(f).field(b).field(len);
                csv.end_row();
            }
        }
    }
    csv.commit();
    log << "rays " << csv.rows() << "\n"
        << "max_length_m " << format_double(longest) << "\n";
    return {exit_ok, {path}};
}

inline CommandResult cmd_range(const RunConfig& cfg, const std::filesystem::path& out_dir,
                               std::ostream& log) {
    cfg.validate();
    const auto path = detail::prepare_out_dir(out_dir) / "range.csv";
    const auto report = subtends(cfg.detector, cfg.primary_pose(), cfg.pyramid());
    CsvWriter csv(path, {"vertex", "margin_rad", "subtended"});
    for (const auto& v : report.vertices) {
        csv.field(v.label).field(v.margin_rad).field(v.subtended);
        csv.end_row();
    }
    csv.commit();
    log << "subtended " << (report.all_subtended ? "true" : "false") << "\n";
    return {report.all_subtended ? exit_ok : exit_not_subtended, {path}};
}

inline CommandResult cmd_resolution(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                    std::ostream& log) {
    cfg.validate();
    const auto path = detail::prepare_out_dir(out_dir) / "resolution.csv";
    const DetectorPose pose = cfg.primary_pose();
    const double range =
        cfg.target_distance_m.value_or(center_target_distance(cfg.detector, pose));
    const auto cells = resolution_grid(cfg.detector, pose, range);
    CsvWriter csv(path, {"m", "center_x_m", "center_y_m", "extent_m"});
    for (const auto& c : cells) {
        csv.field(c.m).field(c.center.x).field(c.center.y).field(c.extent_x);
        csv.end_row();
    }
    csv.commit();
    const double extent = footprint_extent(cfg.detector, range);
    log << "target_distance_m " << format_double(range) << "\n"
        << "center_extent_m " << format_double(extent) << "\n"
        << "oversampling " << format_double(oversampling_ratio(cfg.detector, range).front().ratio)
        << "\n";
    return {exit_ok, {path}};
}

}  // namespace muontomo
