#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "muontomo/config.hpp"

using namespace muontomo;

namespace {

std::string expect_validation_error(const std::string& text) {
    try {
        (void)parse_run_config(text);
    } catch (const ValidationError& e) {
        return e.what();
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return {};
}

const std::filesystem::path kConfigs = std::filesystem::path(MUONTOMO_SOURCE_DIR) / "configs";

}  // namespace

TEST(RunConfig, EmptyTextGivesDefaults) {
    const RunConfig cfg = parse_run_config("");
    EXPECT_EQ(cfg, RunConfig{});
    ASSERT_EQ(cfg.plans.size(), 1u);
    EXPECT_EQ(cfg.plans[0].count, 1);
    EXPECT_NO_THROW(cfg.validate());
}

TEST(RunConfig, ParsesSectionsAndRepeatedPlans) {
    const RunConfig cfg = parse_run_config(R"(
# comment
[detector]
pixel_pitch_cm = 5
nx = 16
ny = 16
panel_separation_cm = 80

[plan]
axis = x
count = 11
[plan]
axis = y
standoff_m = 30.5
literal_offset = false

[analysis]
row = 3
tilt = false
target_distance_m = 12.5
)");
    EXPECT_EQ(cfg.detector, reference_telescope_config());
    ASSERT_EQ(cfg.plans.size(), 2u);
    EXPECT_EQ(cfg.plans[0].axis, ScanAxis::x);
    EXPECT_EQ(cfg.plans[0].count, 11);
    EXPECT_EQ(cfg.plans[1].axis, ScanAxis::y);
    EXPECT_EQ(cfg.plans[1].standoff_m, 30.5);
    EXPECT_EQ(cfg.row, 3);
    EXPECT_FALSE(cfg.tilt);
    EXPECT_EQ(cfg.target_distance_m, 12.5);
}

TEST(RunConfig, RoundTripIsIdempotent) {
    RunConfig cfg;
    cfg.detector.pixel_pitch_cm = 0.1 + 0.2;  // not exactly representable in short form
    cfg.base_side_m = 230.33;
    cfg.plans = {PlanConfig{ScanAxis::x, 25, 20, 11, 0.01, false},
                 PlanConfig{ScanAxis::y, 1.0 / 3.0, 0, 2, 0.5, true}};
    cfg.target_distance_m = 141.165;
    cfg.output_dir = "some/dir";
    const std::string once = to_string(cfg);
    const RunConfig parsed = parse_run_config(once);
    EXPECT_EQ(parsed, cfg);
    EXPECT_EQ(to_string(parsed), once);
}

TEST(RunConfig, ShippedConfigsLoad) {
    for (const char* name :
         {"single_pose.ini", "two_detector.ini", "reference_telescope.ini", "half_height.ini"}) {
        const RunConfig cfg = load_run_config(kConfigs / name);
        EXPECT_NO_THROW(cfg.validate()) << name;
        EXPECT_EQ(parse_run_config(to_string(cfg)), cfg) << name;
    }
    EXPECT_EQ(load_run_config(kConfigs / "two_detector.ini").plans.size(), 2u);
}

TEST(RunConfig, ErrorsNameTheField) {
    EXPECT_NE(expect_validation_error("[detector]\nbogus = 1\n").find("detector.bogus"),
              std::string::npos);
    EXPECT_NE(expect_validation_error("[nowhere]\n").find("[nowhere]"), std::string::npos);
    EXPECT_NE(expect_validation_error("[detector]\nnx = 4.5\n").find("detector.nx"),
              std::string::npos);
    EXPECT_NE(expect_validation_error("[plan]\naxis = z\n").find("plan.axis"), std::string::npos);
    EXPECT_NE(expect_validation_error("[analysis]\ntilt = yes\n").find("analysis.tilt"),
              std::string::npos);
    EXPECT_NE(expect_validation_error("nx = 3\n").find("line 1"), std::string::npos);
    EXPECT_NE(expect_validation_error("[detector\n").find("malformed"), std::string::npos);
    EXPECT_NE(expect_validation_error("[detector]\nnx\n").find("key = value"), std::string::npos);
}

TEST(RunConfig, ValidateCatchesOwningModuleErrors) {
    RunConfig cfg;
    cfg.detector.nx = 0;
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg = {};
    cfg.row = 240;
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg = {};
    cfg.phi_bin_deg = 0.7;
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg = {};
    cfg.plans[0].count = 0;
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg = {};
    cfg.height_m = 0;
    EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(RunConfig, MissingFileIsIoError) {
    EXPECT_THROW(load_run_config("/nonexistent/cfg.ini"), IoError);
}
