#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "muontomo/muontomo.hpp"

namespace {

using Command = muontomo::CommandResult (*)(const muontomo::RunConfig&,
                                            const std::filesystem::path&, std::ostream&);

struct Options {
    std::string config_path;
    std::string out_dir;
    std::optional<int> row;
    bool no_tilt{false};
};

void add_common(CLI::App* sub, Options& opt) {
    sub->add_option("--config", opt.config_path, "run configuration file");
    sub->add_option("--out", opt.out_dir, "output directory (overrides [output] dir)");
    sub->add_option("--row", opt.row, "pixel row j to analyse");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric muon-tomography simulator for a two-panel detector and a pyramid"};
    app.require_subcommand(1);

    Options opt;
    struct Entry {
        const char* name;
        const char* help;
        Command run;
    };
    const Entry entries[] = {
        {"acceptance", "per-class angular resolution and acceptance -> classes.csv",
         muontomo::cmd_acceptance},
        {"sinogram", "sinogram samples and binned coverage -> sinogram.csv, coverage.csv",
         muontomo::cmd_sinogram},
        {"pathlength", "in-row trajectory path lengths -> pathlength.csv",
         muontomo::cmd_pathlength},
        {"range", "silhouette subtension check -> range.csv", muontomo::cmd_range},
        {"resolution", "forward-projected resolution -> resolution.csv",
         muontomo::cmd_resolution},
    };
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, opt);
        if (std::string(e.name) == "acceptance") {
            sub->add_flag("--no-tilt", opt.no_tilt, "use the untilted solid angle for acceptance");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : muontomo::exit_validation;
    }

    try {
        muontomo::RunConfig cfg;
        if (!opt.config_path.empty()) cfg = muontomo::load_run_config(opt.config_path);
        if (opt.row) cfg.row = *opt.row;
        if (opt.no_tilt) cfg.tilt = false;
        const std::filesystem::path out = opt.out_dir.empty() ? cfg.output_dir : opt.out_dir;

        for (const auto& e : entries) {
            if (app.got_subcommand(e.name)) return e.run(cfg, out, std::cout).exit_code;
        }
    } catch (const muontomo::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return muontomo::exit_validation;
    } catch (const muontomo::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return muontomo::exit_io;
    }
    return muontomo::exit_validation;
}
