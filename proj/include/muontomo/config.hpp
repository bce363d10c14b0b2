#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "csv.hpp"
#include "scan.hpp"

namespace muontomo {

/// One `[plan]` section: a linear scan along one side of the pyramid.
struct PlanConfig {
    ScanAxis axis{ScanAxis::x};
    double standoff_m{25.0};
    double step_m{20.0};
    int count{1};
    double elevation_m{0.01};
    bool literal_offset{false};

    bool operator==(const PlanConfig&) const = default;
};

/// Everything a CLI run needs.
///
/// Text form is sectioned key = value; `#` and `;` start comment lines and
/// `[plan]` may repeat. When no plan is given, a single centered pose at
/// 25 m standoff is used.
struct RunConfig {
    DetectorConfig detector;
    double base_side_m{230.33};
    double height_m{138.7};
    std::vector<PlanConfig> plans{PlanConfig{}};
    double phi_bin_deg{1.0};
    double xi_bin_m{1.0};
    int row{0};
    bool tilt{true};
    std::optional<double> target_distance_m;
    std::string output_dir{"out"};

    bool operator==(const RunConfig&) const = default;

    PyramidModel pyramid() const { return PyramidModel(base_side_m, height_m); }

    GridSpec grid_spec() const { return grid_spec_for(pyramid(), phi_bin_deg, xi_bin_m); }

    std::vector<ScanPlan> scan_plans() const {
        std::vector<ScanPlan> out;
        const PyramidModel p = pyramid();
        for (const auto& pc : plans) {
            out.push_back(linear_scan(pc.axis, pc.standoff_m, pc.step_m, pc.count, p,
                                      pc.elevation_m, row, pc.literal_offset));
        }
        return out;
    }

    /// First pose of the first plan; the subject of single-pose analyses.
    DetectorPose primary_pose() const { return scan_plans().front().poses.front(); }

    void validate() const {
        detector.validate();
        (void)pyramid();
        grid_spec().validate();
        if (plans.empty()) throw ValidationError("at least one [plan] is required");
        if (row < 0 || row >= detector.ny) {
            throw ValidationError("analysis.row must be in 0.." + std::to_string(detector.ny - 1));
        }
        if (target_distance_m && !(*target_distance_m > 0.0)) {
            throw ValidationError("analysis.target_distance_m must be > 0");
        }
        const PyramidModel p = pyramid();
        const auto plans_built = scan_plans();
        for (const auto& sp : plans_built) validate_plan(detector, sp, p);
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view v, const std::string& key) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ValidationError(key + ": expected a number, got '" + std::string(v) + "'");
    }
    return out;
}

inline int parse_int(std::string_view v, const std::string& key) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ValidationError(key + ": expected an integer, got '" + std::string(v) + "'");
    }
    return out;
}

inline bool parse_bool(std::string_view v, const std::string& key) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ValidationError(key + ": expected true or false, got '" + std::string(v) + "'");
}

}  // namespace detail

/// Parses the sectioned text form. Unknown sections and keys are rejected
/// with the offending name and line number.
inline RunConfig parse_run_config(std::string_view text) {
    using namespace detail;
    RunConfig cfg;
    bool saw_plan = false;
    std::string section;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";

        if (line.front() == '[') {
            if (line.back() != ']') throw ValidationError(where + "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section == "plan") {
                if (!saw_plan) cfg.plans.clear();
                saw_plan = true;
                cfg.plans.emplace_back();
            } else if (section != "detector" && section != "pyramid" && section != "binning" &&
                       section != "analysis" && section != "output") {
                throw ValidationError(where + "unknown section [" + section + "]");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ValidationError(where + "expected key = value");
        if (section.empty()) throw ValidationError(where + "key outside of any section");
        const std::string_view k = trim(line.substr(0, eq));
        const std::string_view v = trim(line.substr(eq + 1));
        const std::string key = section + "." + std::string(k);

        if (section == "detector") {
            auto& d = cfg.detector;
            if (k == "pixel_pitch_cm") d.pixel_pitch_cm = parse_double(v, key);
            else if (k == "nx") d.nx = parse_int(v, key);
            else if (k == "ny") d.ny = parse_int(v, key);
            else if (k == "panel_separation_cm") d.panel_separation_cm = parse_double(v, key);
            else if (k == "container_width_m") d.container_width_m = parse_double(v, key);
            else if (k == "container_height_m") d.container_height_m = parse_double(v, key);
            else if (k == "container_depth_m") d.container_depth_m = parse_double(v, key);
            else throw ValidationError(where + "unknown key " + key);
        } else if (section == "pyramid") {
            if (k == "base_side_m") cfg.base_side_m = parse_double(v, key);
            else if (k == "height_m") cfg.height_m = parse_double(v, key);
            else throw ValidationError(where + "unknown key " + key);
        } else if (section == "plan") {
            auto& p = cfg.plans.back();
            if (k == "axis") {
                if (v == "x") p.axis = ScanAxis::x;
                else if (v == "y") p.axis = ScanAxis::y;
                else throw ValidationError(where + key + ": expected x or y");
            } else if (k == "standoff_m") p.standoff_m = parse_double(v, key);
            else if (k == "step_m") p.step_m = parse_double(v, key);
            else if (k == "count") p.count = parse_int(v, key);
            else if (k == "elevation_m") p.elevation_m = parse_double(v, key);
            else if (k == "literal_offset") p.literal_offset = parse_bool(v, key);
            else throw ValidationError(where + "unknown key " + key);
        } else if (section == "binning") {
            if (k == "phi_deg") cfg.phi_bin_deg = parse_double(v, key);
            else if (k == "xi_m") cfg.xi_bin_m = parse_double(v, key);
            else throw ValidationError(where + "unknown key " + key);
        } else if (section == "analysis") {
            if (k == "row") cfg.row = parse_int(v, key);
            else if (k == "tilt") cfg.tilt = parse_bool(v, key);
            else if (k == "target_distance_m") {
                if (v == "auto") cfg.target_distance_m.reset();
                else cfg.target_distance_m = parse_double(v, key);
            } else throw ValidationError(where + "unknown key " + key);
        } else if (section == "output") {
            if (k == "dir") cfg.output_dir = std::string(v);
            else throw ValidationError(where + "unknown key " + key);
        }
    }
    return cfg;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

inline std::string to_string(const RunConfig& cfg) {
    std::string s;
    auto kv = [&s](std::string_view k, const std::string& v) {
        s.append(k).append(" = ").append(v).push_back('\n');
    };
    const auto& d = cfg.detector;
    s += "[detector]\n";
    kv("pixel_pitch_cm", format_double(d.pixel_pitch_cm));
    kv("nx", std::to_string(d.nx));
    kv("ny", std::to_string(d.ny));
    kv("panel_separation_cm", format_double(d.panel_separation_cm));
    kv("container_width_m", format_double(d.container_width_m));
    kv("container_height_m", format_double(d.container_height_m));
    kv("container_depth_m", format_double(d.container_depth_m));
    s += "\n[pyramid]\n";
    kv("base_side_m", format_double(cfg.base_side_m));
    kv("height_m", format_double(cfg.height_m));
    for (const auto& p : cfg.plans) {
        s += "\n[plan]\n";
        kv("axis", p.axis == ScanAxis::x ? "x" : "y");
        kv("standoff_m", format_double(p.standoff_m));
        kv("step_m", format_double(p.step_m));
        kv("count", std::to_string(p.count));
        kv("elevation_m", format_double(p.elevation_m));
        kv("literal_offset", p.literal_offset ? "true" : "false");
    }
    s += "\n[binning]\n";
    kv("phi_deg", format_double(cfg.phi_bin_deg));
    kv("xi_m", format_double(cfg.xi_bin_m));
    s += "\n[analysis]\n";
    kv("row", std::to_string(cfg.row));
    kv("tilt", cfg.tilt ? "true" : "false");
    kv("target_distance_m",
       cfg.target_distance_m ? format_double(*cfg.target_distance_m) : std::string("auto"));
    s += "\n[output]\n";
    kv("dir", cfg.output_dir);
    return s;
}

}  // namespace muontomo
