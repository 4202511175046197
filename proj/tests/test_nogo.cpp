#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxdis/nogo.hpp"

using namespace maxdis;
using namespace maxdis::nogo;

namespace {

const Profile kBump2 = make_bump(2.0);

std::vector<SpacetimePoint> annulus_points(int n, unsigned seed) {
    return diffops::sample_points(n, 1.2, 2.8, 0.0, 0.5, seed);
}

}  // namespace

TEST_CASE("rot_e1 profile: divergence of the pair stays bounded away from zero") {
    const auto pe = profile_rot_e1(kBump2);
    const auto pts = annulus_points(30, 3);
    diffops::FDScheme scheme;
    scheme.step = 2e-3;
    const auto rep = modulated_div_obstruction(pe, pts, scheme);
    REQUIRE(rep.levels.size() == 3);

    // mesh independence: the max residual barely changes under refinement
    CHECK(rep.levels.back().max_abs_div > 0.9 * rep.levels.front().max_abs_div);
    CHECK(rep.max_abs_div > 0.01);

    // derived oracle: for e = f Phi1 only B fails, with div B = 2 omega1 f / r^2
    double expected_max = 0.0;
    for (const auto& p : pts) {
        const double r = norm(p.x);
        expected_max = std::max(expected_max,
                                std::abs(2.0 * (p.x.x / r) * kBump2.value(r - p.t) / (r * r)));
    }
    CHECK(rep.max_abs_div == doctest::Approx(expected_max).epsilon(1e-3));

    // pointwise agreement with the closed form at one deliberate point
    const SpacetimePoint pt{0.2, {1.5, 0.3, 0.4}};
    const auto single = modulated_div_obstruction(pe, {pt}, scheme);
    const double r = norm(pt.x);
    const double expected = std::abs(2.0 * (pt.x.x / r) * kBump2.value(r - pt.t) / (r * r));
    CHECK(single.max_abs_div == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("obstruction grows with the angular derivative magnitude") {
    // e_k = f(s) cos(k omega1) Phi1: larger k means faster angular variation.
    // Sample a dense meridian so each mode's angular peak is seen.
    diffops::FDScheme scheme;
    scheme.step = 1e-3;
    scheme.refinement_levels = 2;
    std::vector<SpacetimePoint> pts;
    for (int i = 0; i <= 80; ++i) {
        const double mu = -0.95 + 1.9 * i / 80.0;
        pts.push_back({0.0, 1.5 * Vec3{mu, std::sqrt(1.0 - mu * mu), 0.0}});
    }
    double prev = 0.0;
    for (const int k : {1, 2, 4, 8}) {
        auto pe = [k](double s, const Vec3& omega) {
            const Profile& f = kBump2;
            return f.value(s) * std::cos(k * omega.x) * cross(omega, Vec3{1, 0, 0});
        };
        const auto rep = modulated_div_obstruction(pe, pts, scheme);
        CHECK(rep.max_abs_div > prev);
        prev = rep.max_abs_div;
    }
}

TEST_CASE("zero profile is rejected") {
    auto zero = [](double, const Vec3&) { return Vec3{}; };
    diffops::FDScheme scheme;
    CHECK_THROWS_AS(modulated_div_obstruction(zero, annulus_points(5, 1), scheme),
                    std::invalid_argument);
    CHECK_THROWS_AS(modulated_div_obstruction(profile_rot_e1(kBump2), {}, scheme),
                    std::invalid_argument);
}

TEST_CASE("the true solutions pass the same divergence test the modulated waves fail") {
    // contrast at the same mesh: FD residuals of the analytic family converge
    // to zero, the modulated-wave divergence does not
    const auto pts = annulus_points(30, 3);
    diffops::FDScheme scheme;
    scheme.step = 2e-3;
    const auto solution = diffops::maxwell_residual_suite(kBump2, pts, scheme);
    const auto modulated = modulated_div_obstruction(profile_rot_e1(kBump2), pts, scheme);
    CHECK(modulated.max_abs_div > 10.0 * solution.residual_norms.back());
    CHECK(solution.estimated_order > 1.8);
}

TEST_CASE("quiet spots of tangential profiles") {
    // omega ^ e1 vanishes at +-e1
    const auto qs1 = quiet_spot_find(profile_rot_e1(kBump2), 0.5, 64);
    CHECK(qs1.min_norm < 1e-6 * qs1.field_scale);
    CHECK(std::abs(std::abs(qs1.omega_star.x) - 1.0) < 1e-3);

    // meridional field also vanishes at +-e1
    const auto qs2 = quiet_spot_find(profile_merid_e1(kBump2), 0.5, 64);
    CHECK(qs2.min_norm < 1e-6 * qs2.field_scale);

    // rotated field omega ^ v vanishes at +-v
    const Vec3 v{0.6, 0.0, 0.8};
    auto rot_v = [&](double s, const Vec3& omega) { return kBump2.value(s) * cross(omega, v); };
    const auto qs3 = quiet_spot_find(rot_v, 0.5, 64);
    CHECK(qs3.min_norm < 1e-6 * qs3.field_scale);
    CHECK(std::abs(std::abs(dot(qs3.omega_star, v)) - 1.0) < 1e-3);

    CHECK_THROWS_AS(quiet_spot_find(profile_rot_e1(kBump2), 0.5, 8), std::invalid_argument);
}

TEST_CASE("refinement drives the certified minimum toward zero") {
    const auto coarse = quiet_spot_find(profile_rot_e1(kBump2), 0.5, 16);
    const auto fine = quiet_spot_find(profile_rot_e1(kBump2), 0.5, 128);
    CHECK(fine.min_norm <= coarse.min_norm);
    CHECK(fine.min_norm < 1e-8 * fine.field_scale);
}

TEST_CASE("georgiev-style profile: singular on the axis, residual grows toward it") {
    const auto pe = profile_georgiev(kBump2);
    CHECK_THROWS_AS(pe(0.5, Vec3{0.0, 0.0, 1.0}), std::domain_error);

    diffops::FDScheme scheme;
    scheme.step = 5e-4;
    scheme.refinement_levels = 2;
    double prev = 0.0;
    for (const double rho_cyl : {0.8, 0.4, 0.2, 0.1}) {
        std::vector<SpacetimePoint> pts;
        for (int k = 0; k < 12; ++k) {
            const double phi = 2.0 * M_PI * k / 12.0;
            pts.push_back({0.25, {rho_cyl * std::cos(phi), rho_cyl * std::sin(phi), 1.3}});
        }
        const auto rep = modulated_div_obstruction(pe, pts, scheme);
        CHECK(rep.max_abs_div > prev);
        prev = rep.max_abs_div;
    }
}
