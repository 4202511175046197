#include "maxdis/nogo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace maxdis::nogo {

DivObstructionReport modulated_div_obstruction(const TangentialProfile& profile_e,
                                               const std::vector<SpacetimePoint>& points,
                                               const diffops::FDScheme& scheme) {
    if (points.empty()) throw std::invalid_argument("modulated_div_obstruction: no points");

    double profile_scale = 0.0;
    for (const auto& pt : points) {
        const double r = norm(pt.x);
        profile_scale = std::max(profile_scale, norm(profile_e(r - pt.t, pt.x / r)));
    }
    if (profile_scale == 0.0) {
        throw std::invalid_argument("modulated_div_obstruction: profile vanishes at every sample");
    }

    DivObstructionReport rep;
    diffops::FDScheme level = scheme;
    for (int l = 0; l < scheme.refinement_levels; ++l) {
        DivLevel dl;
        dl.step = level.step;
        dl.min_abs_div = std::numeric_limits<double>::infinity();
        for (const auto& pt : points) {
            auto E_at = [&](const Vec3& x) { return modulated_wave(profile_e, {pt.t, x}).E; };
            auto B_at = [&](const Vec3& x) { return modulated_wave(profile_e, {pt.t, x}).B; };
            const double d = std::max(std::abs(diffops::fd_div(E_at, pt.x, level)),
                                      std::abs(diffops::fd_div(B_at, pt.x, level)));
            dl.min_abs_div = std::min(dl.min_abs_div, d);
            dl.max_abs_div = std::max(dl.max_abs_div, d);
        }
        rep.levels.push_back(dl);
        level.step *= 0.5;
    }
    rep.min_abs_div = rep.levels.back().min_abs_div;
    rep.max_abs_div = rep.levels.back().max_abs_div;
    return rep;
}

QuietSpot quiet_spot_find(const TangentialProfile& profile_e, double s, int resolution) {
    if (resolution < 16) {
        throw std::invalid_argument("quiet_spot_find: resolution must be >= 16 per axis");
    }
    auto omega_of = [](double theta, double phi) -> Vec3 {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                std::cos(theta)};
    };
    auto value = [&](double theta, double phi) { return norm(profile_e(s, omega_of(theta, phi))); };

    // coarse scan, keeping the best few cells as refinement seeds
    struct Seed { double theta, phi, v; };
    std::vector<Seed> seeds;
    QuietSpot out;
    for (int i = 0; i <= resolution; ++i) {
        const double theta = M_PI * double(i) / resolution;
        for (int j = 0; j < 2 * resolution; ++j) {
            const double phi = M_PI * double(j) / resolution;
            const double v = value(theta, phi);
            out.field_scale = std::max(out.field_scale, v);
            seeds.push_back({theta, phi, v});
        }
    }
    std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) { return a.v < b.v; });
    seeds.resize(5);

    double best_v = std::numeric_limits<double>::infinity();
    double best_theta = 0.0, best_phi = 0.0;
    for (const auto& seed : seeds) {
        double ct = seed.theta, cp = seed.phi, cv = seed.v;
        double half = M_PI / resolution;  // current search half-width
        for (int zoom = 0; zoom < 40; ++zoom) {
            for (int i = -2; i <= 2; ++i) {
                for (int j = -2; j <= 2; ++j) {
                    const double th = ct + half * i / 2.0;
                    const double ph = cp + half * j / 2.0;
                    const double v = value(th, ph);
                    if (v < cv) { cv = v; ct = th; cp = ph; }
                }
            }
            half *= 0.6;
        }
        if (cv < best_v) { best_v = cv; best_theta = ct; best_phi = cp; }
    }
    out.min_norm = best_v;
    out.omega_star = omega_of(best_theta, best_phi);
    return out;
}

TangentialProfile profile_rot_e1(const Profile& f) {
    return [f](double s, const Vec3& omega) { return f.value(s) * cross(omega, Vec3{1, 0, 0}); };
}

TangentialProfile profile_merid_e1(const Profile& f) {
    return [f](double s, const Vec3& omega) {
        return f.value(s) * cross(omega, cross(omega, Vec3{1, 0, 0}));
    };
}

TangentialProfile profile_rot_e2(const Profile& f) {
    return [f](double s, const Vec3& omega) { return f.value(s) * cross(omega, Vec3{0, 1, 0}); };
}

TangentialProfile profile_georgiev(const Profile& f) {
    return [f](double s, const Vec3& omega) {
        const double rho2 = omega.x * omega.x + omega.y * omega.y;
        if (rho2 < 1e-14) {
            throw std::domain_error("georgiev profile is singular on the x3 axis");
        }
        return (f.value(s) / rho2) * cross(omega, Vec3{0, 0, 1});
    };
}

}  // namespace maxdis::nogo
