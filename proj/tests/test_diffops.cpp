#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxdis/diffops.hpp"

using namespace maxdis;
using namespace maxdis::diffops;

namespace {

const FDScheme kDefault{};  // step 1e-3, order 2, 3 levels

// fits the order of |value(step) - exact| under halvings
double observed_order(const std::function<double(double)>& value_at, double exact,
                      double step0, int levels = 3) {
    std::vector<double> errs, steps;
    double h = step0;
    for (int l = 0; l < levels; ++l) {
        errs.push_back(std::abs(value_at(h) - exact));
        steps.push_back(h);
        h *= 0.5;
    }
    return convergence_order(errs, steps);
}

}  // namespace

TEST_CASE("oracle self-test on polynomial fields") {
    // constant vector field: curl is zero to machine precision
    auto constant = [](const Vec3&) { return Vec3{1.0, -2.0, 0.5}; };
    CHECK(norm_inf(fd_curl(constant, {1.0, 0.5, 0.7}, kDefault)) < 1e-12);

    // F(x) = x: divergence 3
    auto identity = [](const Vec3& x) { return x; };
    CHECK(fd_div(identity, {1.0, 1.0, 1.0}, kDefault) == doctest::Approx(3.0).epsilon(1e-10));

    // gradient field has zero curl
    auto grad_phi = [](const Vec3& x) {
        // grad of x1^2 x2 + x3^3: (2 x1 x2, x1^2, 3 x3^2)
        return Vec3{2.0 * x.x * x.y, x.x * x.x, 3.0 * x.z * x.z};
    };
    CHECK(norm_inf(fd_curl(grad_phi, {0.9, 1.2, -0.7}, kDefault)) < 1e-9);

    // known curl: F = (x2 x3, x3 x1, x1 x2) has curl 0; F = (-x2, x1, 0) has curl (0,0,2)
    auto rot = [](const Vec3& x) { return Vec3{-x.y, x.x, 0.0}; };
    CHECK(norm_inf(fd_curl(rot, {1.0, 2.0, 0.3}, kDefault) - Vec3{0, 0, 2}) < 1e-10);
}

TEST_CASE("domain guard rejects stencils near the origin") {
    auto f = [](const Vec3& x) { return x; };
    FDScheme wide{};
    wide.step = 0.2;
    CHECK_THROWS_AS(fd_div(f, {0.6, 0.0, 0.0}, wide), std::domain_error);
    CHECK_NOTHROW(fd_div(f, {1.0, 0.0, 0.0}, wide));
}

TEST_CASE("curl of the latitude field matches the closed form") {
    // F(x) = (x/|x|) ^ e1; at x = e3 the curl is -Phi2 - 2 e1 = (-1, 0, 0)
    auto F = [](const Vec3& x) { return cross(x / norm(x), Vec3{1, 0, 0}); };
    const Vec3 c = fd_curl(F, {0.0, 0.0, 1.0}, kDefault);
    CHECK(norm_inf(c - Vec3{-1, 0, 0}) < 1e-6);

    // and the identity holds at second order at random annulus points
    const auto pts = sample_points(25, 1.0, 3.0, 0, 1, 7);
    for (const auto& p : pts) {
        auto exact_at = [&](const Vec3& x) {
            const double r = norm(x);
            const Vec3 omega = x / r;
            const Vec3 phi2 = cross(omega, cross(omega, Vec3{1, 0, 0}));
            return -1.0 / r * phi2 - 2.0 / r * Vec3{1, 0, 0};
        };
        auto err_at = [&](double h) {
            FDScheme s{};
            s.step = h;
            return norm_inf(fd_curl(F, p.x, s) - exact_at(p.x));
        };
        const double order = observed_order(err_at, 0.0, 2e-3);
        CHECK(order > 1.7);
        CHECK(order < 2.5);
    }
}

TEST_CASE("product rule curl(phi W) = grad(phi)^W + phi curl W at scheme order") {
    auto phi = [](const Vec3& x) { return std::sin(x.x) * x.z + std::exp(0.3 * x.y); };
    auto W = [](const Vec3& x) { return Vec3{x.y * x.z, std::cos(x.x), x.x * x.x}; };
    auto phiW = [&](const Vec3& x) { return phi(x) * W(x); };

    const auto pts = sample_points(10, 1.0, 2.5, 0, 1, 13);
    for (const auto& p : pts) {
        auto defect = [&](double h) {
            FDScheme s{};
            s.step = h;
            const Vec3 left = fd_curl(phiW, p.x, s);
            const Vec3 right = cross(fd_grad(phi, p.x, s), W(p.x)) + phi(p.x) * fd_curl(W, p.x, s);
            return norm_inf(left - right);
        };
        const double order = convergence_order({defect(4e-3), defect(2e-3), defect(1e-3)},
                                               {4e-3, 2e-3, 1e-3});
        CHECK(order > 1.7);
    }
}

TEST_CASE("closed-form curl chain for the analytic electric field") {
    const Profile ex = make_exponential(0.25);
    const double t0 = 0.4;

    // phi = f'/r - f/r^2 with f = h' (so E = phi * Phi1)
    auto phi = [&](const Vec3& x) {
        const double r = norm(x);
        return ex.deriv(r + t0, 2) / r - ex.deriv(r + t0, 1) / (r * r);
    };
    // eq. for grad phi: dr phi = f''/r - 2 f'/r^2 + 2 f/r^3
    auto grad_exact = [&](const Vec3& x) {
        const double r = norm(x);
        const double s = r + t0;
        const double d = ex.deriv(s, 3) / r - 2.0 * ex.deriv(s, 2) / (r * r) +
                         2.0 * ex.deriv(s, 1) / (r * r * r);
        return d * (x / r);
    };
    // full curl: (f''/r - 3 f'/r^2 + 3 f/r^3) Phi2 - 2 (f'/r^2 - f/r^3) e1
    auto curl_exact = [&](const Vec3& x) {
        const double r = norm(x);
        const double s = r + t0;
        const Vec3 omega = x / r;
        const Vec3 phi2 = cross(omega, cross(omega, Vec3{1, 0, 0}));
        const double c2 = ex.deriv(s, 3) / r - 3.0 * ex.deriv(s, 2) / (r * r) +
                          3.0 * ex.deriv(s, 1) / (r * r * r);
        const double c3 = -2.0 * (ex.deriv(s, 2) / (r * r) - ex.deriv(s, 1) / (r * r * r));
        return c2 * phi2 + c3 * Vec3{1, 0, 0};
    };
    auto E_field = [&](const Vec3& x) { return eval_E(ex, {t0, x}); };

    const auto pts = sample_points(20, 1.0, 3.0, 0, 1, 19);
    for (const auto& p : pts) {
        auto grad_err = [&](double h) {
            FDScheme s{};
            s.step = h;
            return norm_inf(fd_grad(phi, p.x, s) - grad_exact(p.x));
        };
        auto curl_err = [&](double h) {
            FDScheme s{};
            s.step = h;
            return norm_inf(fd_curl(E_field, p.x, s) - curl_exact(p.x));
        };
        CHECK(grad_err(1e-3) < 1e-5);
        CHECK(curl_err(1e-3) < 1e-5);
        const double order = observed_order(curl_err, 0.0, 2e-3);
        CHECK(order > 1.7);
        CHECK(order < 2.5);
    }
}

TEST_CASE("divergence of the analytic fields converges to zero at order 2") {
    for (const Profile& prof : {make_exponential(0.25), make_bump(6.0)}) {
        const double t0 = 0.8;
        auto E_field = [&](const Vec3& x) { return eval_E(prof, {t0, x}); };
        auto B_field = [&](const Vec3& x) { return eval_B(prof, {t0, x}); };
        const auto pts = sample_points(15, 1.0, 3.0, 0, 1, 23);
        for (const auto& p : pts) {
            auto divE = [&](double h) {
                FDScheme s{};
                s.step = h;
                return std::abs(fd_div(E_field, p.x, s));
            };
            auto divB = [&](double h) {
                FDScheme s{};
                s.step = h;
                return std::abs(fd_div(B_field, p.x, s));
            };
            CHECK(divE(1e-3) < 1e-5);
            CHECK(divB(1e-3) < 1e-5);
        }
    }
}

TEST_CASE("d'Alembertian residuals") {
    // linear in t: box = 0 up to rounding
    auto linear = [](double t, const Vec3& x) { return std::vector<double>{3.0 * t + x.x}; };
    const auto b0 = fd_box(linear, {0.5, {1, 1, 1}}, kDefault);
    CHECK(std::abs(b0[0]) < 1e-7);

    // field pair components solve the wave equation
    const Profile ex = make_exponential(0.25);
    auto pair6 = [&](double t, const Vec3& x) {
        const auto fs = eval_pair(ex, {t, x});
        return std::vector<double>{fs.E.x, fs.E.y, fs.E.z, fs.B.x, fs.B.y, fs.B.z};
    };
    const SpacetimePoint pt{0.6, {1.1, -0.8, 0.9}};
    for (double v : fd_box(pair6, pt, kDefault)) CHECK(std::abs(v) < 1e-5);

    auto box_err = [&](double h) {
        FDScheme s{};
        s.step = h;
        double worst = 0.0;
        for (double v : fd_box(pair6, pt, s)) worst = std::max(worst, std::abs(v));
        return worst;
    };
    const double order = observed_order(box_err, 0.0, 4e-3);
    CHECK(order > 1.7);
    CHECK(order < 2.5);
}

TEST_CASE("maxwell_residual on the analytic solution") {
    const Profile ex = make_exponential(0.25);
    const SpacetimePoint pt{0.3, {0.9, 0.7, 1.1}};
    const auto rep = maxwell_residual(ex, pt, kDefault);
    REQUIRE(rep.residual_norms.size() == 3);
    CHECK(rep.residual_norms.front() < 1e-5);
    CHECK(rep.estimated_order > 1.8);
    CHECK(rep.estimated_order < 2.3);
    CHECK(rep.points_tested == 1);

    // zero profile: residuals are exactly zero, order pegged at the floor
    auto z = [](double) { return 0.0; };
    const Profile zero = make_custom(z, z, z, z);
    const auto zrep = maxwell_residual(zero, pt, kDefault);
    for (double n : zrep.residual_norms) CHECK(n == 0.0);
    CHECK(std::isinf(zrep.estimated_order));

    // bump outside its support: identically zero fields
    const Profile b = make_bump(1.05);
    const auto brep = maxwell_residual(b, {1.0, {1.5, 0.5, 0.5}}, kDefault);
    for (double n : brep.residual_norms) CHECK(n == 0.0);

    FDScheme bad{};
    bad.refinement_levels = 1;
    CHECK_THROWS_AS(maxwell_residual(ex, pt, bad), std::invalid_argument);
}

TEST_CASE("fourth-order scheme converges at order 4") {
    const Profile ex = make_exponential(0.25);
    auto E_field = [&](double t) {
        return [&ex, t](const Vec3& x) { return eval_E(ex, {t, x}); };
    };
    const Vec3 x{1.2, 0.4, 0.9};
    // exact curl from the closed-form chain with f = h'
    const double t0 = 0.2;
    auto curl_exact = [&]() {
        const double r = norm(x);
        const double s = r + t0;
        const Vec3 omega = x / r;
        const Vec3 phi2 = cross(omega, cross(omega, Vec3{1, 0, 0}));
        const double c2 = ex.deriv(s, 3) / r - 3.0 * ex.deriv(s, 2) / (r * r) +
                          3.0 * ex.deriv(s, 1) / (r * r * r);
        const double c3 = -2.0 * (ex.deriv(s, 2) / (r * r) - ex.deriv(s, 1) / (r * r * r));
        return c2 * phi2 + c3 * Vec3{1, 0, 0};
    }();
    auto err = [&](double h) {
        FDScheme s{};
        s.order = 4;
        s.step = h;
        return norm_inf(fd_curl(E_field(t0), x, s) - curl_exact);
    };
    const double order = convergence_order({err(2e-2), err(1e-2), err(5e-3)}, {2e-2, 1e-2, 5e-3});
    CHECK(order > 3.5);
}

TEST_CASE("convergence_order edge cases") {
    CHECK(convergence_order({4e-6, 1e-6, 2.5e-7}, {2e-3, 1e-3, 5e-4}) ==
          doctest::Approx(2.0).epsilon(1e-6));
    CHECK(convergence_order({3.0, 3.0, 3.0}, {2e-3, 1e-3, 5e-4}) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::isinf(convergence_order({0.0, 1e-6}, {2e-3, 1e-3})));
    CHECK_THROWS_AS(convergence_order({1e-6}, {1e-3}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_order({1e-6, 1e-6}, {1e-3, 1e-3}), std::invalid_argument);
}

TEST_CASE("low-discrepancy sampler is deterministic and in range") {
    const auto a = sample_points(100, 1.0, 3.0, 0.0, 2.0, 9);
    const auto b = sample_points(100, 1.0, 3.0, 0.0, 2.0, 9);
    const auto c = sample_points(100, 1.0, 3.0, 0.0, 2.0, 10);
    REQUIRE(a.size() == 100);
    bool all_same = true, any_diff = false;
    for (size_t i = 0; i < a.size(); ++i) {
        all_same = all_same && norm(a[i].x - b[i].x) == 0.0 && a[i].t == b[i].t;
        any_diff = any_diff || norm(a[i].x - c[i].x) > 0.0;
        const double r = norm(a[i].x);
        CHECK(r >= 1.0);
        CHECK(r <= 3.0);
        CHECK(a[i].t >= 0.0);
        CHECK(a[i].t <= 2.0);
    }
    CHECK(all_same);
    CHECK(any_diff);
}
