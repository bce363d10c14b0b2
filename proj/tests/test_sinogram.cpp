#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "muontomo/sinogram.hpp"

using namespace muontomo;

namespace {

constexpr double pi = std::numbers::pi;

// 25 m standoff from a 230.33 m base.
const Vec3 baseline_position{0.0, -(230.33 / 2.0 + 25.0), 0.01};

// Angular distance between two phi values modulo pi.
double phi_diff(double a, double b) {
    double d = std::remainder(a - b, pi);
    return std::abs(d);
}

}  // namespace

TEST(TrajectoryAngle, Examples) {
    const DetectorConfig d;
    EXPECT_EQ(trajectory_angle(d, 0), pi / 2);
    EXPECT_DOUBLE_EQ(trajectory_angle(d, 100), pi / 4);
    for (int m : {1, 37, 479}) {
        EXPECT_DOUBLE_EQ(trajectory_angle(d, -m), pi - trajectory_angle(d, m));
    }
}

TEST(SinogramPoint, CenteredStraightRayIsOrigin) {
    DetectorConfig d;
    d.nx = 479;  // odd, so column 239 sits on the pose axis
    const DetectorPose pose(baseline_position, 0.0);
    const auto s = sinogram_point(d, pose, 239, 239);
    EXPECT_EQ(s.phi, 0.0);
    EXPECT_NEAR(s.xi, 0.0, 1e-12);
}

TEST(SinogramPoint, BoundsErrors) {
    const DetectorConfig d;
    const DetectorPose pose(baseline_position, 0.0);
    EXPECT_THROW(sinogram_point(d, pose, 480, 0), BoundsError);
    EXPECT_THROW(sinogram_point(d, pose, 0, -1), BoundsError);
    const DetectorPose bad_row(baseline_position, 0.0, 240);
    EXPECT_THROW(sinogram_point(d, bad_row, 0, 0), BoundsError);
}

TEST(SinogramPoint, BothPixelCentersLieOnTheLine) {
    const DetectorConfig d;
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> col(0, d.nx - 1), row(0, d.ny - 1);
    std::uniform_real_distribution<double> pos(-300.0, 300.0), yaw(-pi, pi);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const DetectorPose pose({pos(rng), pos(rng), 0.01}, yaw(rng), row(rng));
        const int f = col(rng), b = col(rng);
        const auto s = sinogram_point(d, pose, f, b);
        ASSERT_GT(s.phi, -pi / 2);
        ASSERT_LE(s.phi, pi / 2);
        const Vec3 pf = posed_pixel_center(d, pose, {f, pose.row, Panel::front});
        const Vec3 pb = posed_pixel_center(d, pose, {b, pose.row, Panel::back});
        const double xf = pf.x * std::cos(s.phi) + pf.y * std::sin(s.phi);
        const double xb = pb.x * std::cos(s.phi) + pb.y * std::sin(s.phi);
        worst = std::max({worst, std::abs(xf - s.xi), std::abs(xb - s.xi)});
    }
    EXPECT_LE(worst, 1e-9);
}

TEST(RowSinogram, CountAndStraightBand) {
    const DetectorConfig d;
    const DetectorPose pose(baseline_position, 0.0);
    const auto samples = row_sinogram(d, pose);
    ASSERT_EQ(samples.size(), 480u * 480u);
    double lo = 1e9, hi = -1e9;
    for (int f = 0; f < d.nx; ++f) {
        const auto& s = samples[static_cast<std::size_t>(f) * d.nx + f];
        EXPECT_EQ(s.phi, 0.0);
        lo = std::min(lo, s.xi);
        hi = std::max(hi, s.xi);
    }
    EXPECT_NEAR(lo, -4.79, 1e-12);
    EXPECT_NEAR(hi, 4.79, 1e-12);
}

TEST(RowSinogram, ParallelClassesShareExactPhi) {
    DetectorConfig d;
    d.nx = 60;
    const DetectorPose pose({13.2, -150.0, 0.01}, 0.3);
    const auto samples = row_sinogram(d, pose);
    for (int f = 0; f < d.nx; ++f)
        for (int b = 0; b < d.nx; ++b) {
            const int m = f - b;
            const int f0 = std::max(0, m);
            const auto& ref = samples[static_cast<std::size_t>(f0) * d.nx + (f0 - m)];
            EXPECT_EQ(samples[static_cast<std::size_t>(f) * d.nx + b].phi, ref.phi);
        }
}

TEST(RowSinogram, PhiRangeMatchesExtremeClass) {
    const DetectorConfig d;
    const DetectorPose pose(baseline_position, 0.0);
    const auto samples = row_sinogram(d, pose);
    const auto [mn, mx] = std::minmax_element(
        samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.phi < b.phi; });
    const double half = pi / 2 - std::atan2(200.0, 479.0 * 2.0);
    EXPECT_NEAR(mn->phi, -half, 1e-12);
    EXPECT_NEAR(mx->phi, half, 1e-12);
}

TEST(RowSinogram, TranslationShiftsStraightXi) {
    DetectorConfig d;
    d.nx = 40;
    const DetectorPose a({0, -140, 0.01}, 0.0);
    const DetectorPose b({17.25, -140, 0.01}, 0.0);
    const auto sa = row_sinogram(d, a);
    const auto sb = row_sinogram(d, b);
    for (int f = 0; f < d.nx; ++f) {
        const auto k = static_cast<std::size_t>(f) * d.nx + f;
        ASSERT_EQ(sa[k].phi, 0.0);
        EXPECT_NEAR(sb[k].xi - sa[k].xi, 17.25, 1e-12);
    }
}

TEST(RowSinogram, YawShiftsPhi) {
    DetectorConfig d;
    d.nx = 30;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> delta(-pi, pi);
    for (int trial = 0; trial < 20; ++trial) {
        const double dy = delta(rng);
        const DetectorPose a({5, -140, 0.01}, 0.2);
        const DetectorPose b({5, -140, 0.01}, 0.2 + dy);
        const auto sa = row_sinogram(d, a);
        const auto sb = row_sinogram(d, b);
        for (std::size_t k = 0; k < sa.size(); ++k) {
            EXPECT_NEAR(phi_diff(sb[k].phi, sa[k].phi + dy), 0.0, 1e-12);
        }
    }
}

TEST(Coverage, EmptyAndSingle) {
    const GridSpec spec;
    const auto empty = accumulate_coverage({}, spec);
    EXPECT_EQ(empty.covered_fraction(), 0.0);
    EXPECT_EQ(empty.total_hits(), 0);

    const SinogramSample one{0.1, 3.3};
    const auto g = accumulate_coverage(std::span(&one, 1), spec);
    EXPECT_EQ(g.nonempty_bins(), 1);
    EXPECT_EQ(g.total_hits(), 1);
    EXPECT_DOUBLE_EQ(g.covered_fraction(), 1.0 / static_cast<double>(g.reachable_bins()));
}

TEST(Coverage, Layout) {
    const GridSpec spec;  // 1 deg, 1 m, 162.87 m
    CoverageGrid g(spec);
    EXPECT_EQ(g.n_phi(), 180);
    EXPECT_EQ(g.n_xi(), 2 * 163);
    EXPECT_EQ(g.reachable_bins(), 180 * 326);
    EXPECT_EQ(g.phi_bin_of(0.0), 90);
    EXPECT_EQ(g.phi_bin_of(pi / 2), 0);
    EXPECT_EQ(g.phi_bin_of(-pi / 2 + 1e-9), 0);
    EXPECT_NEAR(g.phi_bin_lo(90), -0.5 * pi / 180, 1e-15);
    EXPECT_EQ(g.xi_bin_lo(163), 0.0);
}

TEST(Coverage, FoldWrapsNearPlusMinusHalfPi) {
    CoverageGrid g(GridSpec{});
    g.add({pi / 2, 10.5});           // straddle bin, xi negated
    g.add({-pi / 2 + 1e-6, -10.5});  // same line family from the other side
    EXPECT_EQ(g.nonempty_bins(), 1);
    EXPECT_EQ(g.hits(0, 163 - 11), 2);
}

TEST(Coverage, OutOfRangeStillCounted) {
    CoverageGrid g(GridSpec{});
    g.add({0.0, 500.0});
    EXPECT_EQ(g.total_hits(), 1);
    EXPECT_EQ(g.out_of_range(), 1);
    EXPECT_EQ(g.nonempty_bins(), 0);
}

TEST(Coverage, MergeIsAssociativeAndConservesHits) {
    const DetectorConfig d;
    const GridSpec spec;
    std::vector<std::vector<SinogramSample>> parts;
    for (double x : {-40.0, 0.0, 40.0}) parts.push_back(row_sinogram(d, {{x, -140.165, 0.01}, 0.0}));

    CoverageGrid left(spec), right(spec), all(spec);
    CoverageGrid a = accumulate_coverage(parts[0], spec);
    CoverageGrid b = accumulate_coverage(parts[1], spec);
    CoverageGrid c = accumulate_coverage(parts[2], spec);
    left.merge(a).merge(b).merge(c);
    CoverageGrid bc = b;
    bc.merge(c);
    right.merge(a).merge(bc);
    for (const auto& p : parts) all.add(p);
    for (int kp = 0; kp < all.n_phi(); ++kp)
        for (int kx = 0; kx < all.n_xi(); ++kx) {
            ASSERT_EQ(left.hits(kp, kx), all.hits(kp, kx));
            ASSERT_EQ(right.hits(kp, kx), all.hits(kp, kx));
        }
    EXPECT_EQ(all.total_hits(), 3 * 480 * 480);
    EXPECT_GE(all.covered_fraction(), 0.0);
    EXPECT_LE(all.covered_fraction(), 1.0);
}

TEST(Coverage, SpecValidation) {
    GridSpec bad;
    bad.phi_bin_width_rad = 0.7 * pi / 180;
    EXPECT_THROW(CoverageGrid{bad}, ValidationError);
    bad = {};
    bad.xi_bin_width_m = 0;
    EXPECT_THROW(CoverageGrid{bad}, ValidationError);
}
