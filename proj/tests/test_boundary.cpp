#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxdis/boundary.hpp"
#include "maxdis/diffops.hpp"

using namespace maxdis;
using namespace maxdis::boundary;

namespace {

std::vector<BoundaryFrame> random_frames(int n, unsigned seed) {
    std::vector<BoundaryFrame> frames;
    for (const auto& p : diffops::sample_points(n, 0.9, 1.1, 0, 1, seed)) {
        frames.push_back(BoundaryFrame::at(p.x / norm(p.x)));
    }
    return frames;
}

}  // namespace

TEST_CASE("frame validation") {
    CHECK_THROWS_AS(BoundaryFrame::at({0.0, 0.0, 1.5}), std::invalid_argument);
    const auto f = BoundaryFrame::at({0.0, 1.0, 0.0});
    CHECK(norm(f.n - Vec3{0, 1, 0}) == 0.0);
}

TEST_CASE("tangential part") {
    const auto pole = BoundaryFrame::at({0.0, 0.0, 1.0});
    CHECK(norm(tangential_part(pole.n, pole)) == 0.0);
    CHECK(norm(tangential_part({1, 0, 0}, pole) - Vec3{1, 0, 0}) == 0.0);

    // tangential part of e1 is -Phi2 at every frame
    for (const auto& f : random_frames(30, 41)) {
        const Vec3 phi2{f.n.x * f.n.x - 1.0, f.n.x * f.n.y, f.n.x * f.n.z};
        CHECK(norm(tangential_part({1, 0, 0}, f) + phi2) < 1e-14);
    }
}

TEST_CASE("A(n) kernel, eigenspaces, self-adjointness") {
    for (const auto& f : random_frames(25, 7)) {
        // kernel: fields parallel to n
        const FieldSample k{1.3 * f.n, -0.4 * f.n};
        const auto Ak = apply_An(k, f);
        CHECK(norm(Ak.E) < 1e-14);
        CHECK(norm(Ak.B) < 1e-14);

        // E_{+-} = {E_tan = +- n ^ B_tan, no normal parts} maps to -+ u
        const Vec3 a = std::abs(f.n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        const Vec3 t1 = cross(f.n, a) / norm(cross(f.n, a));
        const Vec3 Btan = 0.7 * t1 + 0.2 * cross(f.n, t1);
        for (const double sign : {+1.0, -1.0}) {
            const FieldSample u{sign * cross(f.n, Btan), Btan};
            const auto Au = apply_An(u, f);
            CHECK(norm(Au.E + sign * u.E) < 1e-14);
            CHECK(norm(Au.B + sign * u.B) < 1e-14);
        }

        // <A(n)u, v> = <u, A(n)v>
        const FieldSample u{{0.3, -1.1, 0.5}, {0.9, 0.2, -0.7}};
        const FieldSample v{{-0.6, 0.4, 1.2}, {0.1, -0.8, 0.3}};
        const auto Au = apply_An(u, f);
        const auto Av = apply_An(v, f);
        CHECK(dot(Au.E, v.E) + dot(Au.B, v.B) ==
              doctest::Approx(dot(u.E, Av.E) + dot(u.B, Av.B)).epsilon(1e-13));
    }
}

TEST_CASE("A(n) spectrum is {-1,-1,0,0,1,1} and rank is 4") {
    const double expected[6] = {-1, -1, 0, 0, 1, 1};
    for (const auto& f : random_frames(100, 3)) {
        const auto ev = an_spectrum(f);
        for (int i = 0; i < 6; ++i) {
            CHECK(std::abs(ev[static_cast<size_t>(i)] - expected[i]) < 1e-10);
        }
    }
}

TEST_CASE("quad_form equals the measured kappa times the Poynting flux") {
    const double kappa = measured_kappa();
    CHECK(kappa == doctest::Approx(2.0).epsilon(1e-12));
    for (const auto& f : random_frames(40, 11)) {
        const FieldSample u{{0.4, -0.9, 1.3}, {-0.2, 0.8, 0.6}};
        const double lhs = quad_form(u, f);
        const double rhs = kappa * dot(cross(u.E, u.B), f.n);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

        // kernel vectors annihilate the form
        CHECK(quad_form({2.0 * f.n, -0.5 * f.n}, f) == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("strict dissipativity identity on N_0") {
    // u in N_0 with only tangential components: <A(n)u,u> = -||u_tan||^2
    for (const auto& f : random_frames(25, 21)) {
        const Vec3 a = std::abs(f.n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        const Vec3 t1 = cross(f.n, a) / norm(cross(f.n, a));
        const Vec3 Btan = 1.1 * t1 - 0.6 * cross(f.n, t1);
        const FieldSample u{cross(f.n, Btan), Btan};
        const double utan2 = norm2(u.E) + norm2(u.B);
        CHECK(quad_form(u, f) == doctest::Approx(-utan2).epsilon(1e-13));
    }
}

TEST_CASE("matched exponential profile satisfies the eps boundary condition") {
    for (const double eps : {0.05, 0.1, 0.25}) {
        const Profile prof = make_exponential(eps);
        for (const auto& p : diffops::sample_points(30, 0.9, 1.1, 0.0, 2.0, 29)) {
            const Vec3 omega = p.x / norm(p.x);
            const auto frame = BoundaryFrame::at(omega);
            const FieldSample u = eval_pair(prof, {p.t, omega});
            const double scale = norm(u.E) + norm(u.B) + 1e-300;
            CHECK(norm(neps_residual(u, frame, eps)) <= 1e-12 * scale);
        }
    }
    // zero fields give a zero residual
    const auto f = BoundaryFrame::at({0, 0, 1});
    CHECK(norm(neps_residual({{0, 0, 0}, {0, 0, 0}}, f, 0.3)) == 0.0);
}

TEST_CASE("eps = 0 residual reduces to the residue identity") {
    const Profile b = make_bump(2.0);
    for (const auto& p : diffops::sample_points(20, 0.9, 1.1, 0.0, 0.8, 31)) {
        const Vec3 omega = p.x / norm(p.x);
        const auto frame = BoundaryFrame::at(omega);
        const FieldSample u = eval_pair(b, {p.t, omega});
        const Vec3 expected = -b.value(1.0 + p.t) * Vec3{0.0, omega.z, -omega.y};
        CHECK(norm(neps_residual(u, frame, 0.0) - expected) < 1e-13 * (1.0 + norm(expected)));
    }
}

TEST_CASE("residue identity on spheres of radius rho") {
    // at the pole: LHS = RHS = -h(1) (0,1,0)
    for (const Profile& prof : {make_exponential(0.25), make_bump(2.0)}) {
        const auto [lhs, rhs] = residue_identity(prof, {0.0, 0.0, 1.0}, 0.0);
        const double h1 = prof.value(1.0);
        CHECK(norm(lhs - Vec3{0.0, -h1, 0.0}) < 1e-13 * (1 + std::abs(h1)));
        CHECK(norm(rhs - Vec3{0.0, -h1, 0.0}) < 1e-15);
    }

    // bump past its support: both sides vanish
    {
        const auto [lhs, rhs] = residue_identity(make_bump(1.05), {0.0, 2.0, 0.0}, 1.0);
        CHECK(norm(lhs) == 0.0);
        CHECK(norm(rhs) == 0.0);
    }

    // dense sample over rho in [1,3], t in [0,2]
    for (const Profile& prof : {make_exponential(0.1), make_bump(2.0)}) {
        for (const auto& p : diffops::sample_points(200, 1.0, 3.0, 0.0, 2.0, 37)) {
            const auto [lhs, rhs] = residue_identity(prof, p.x, p.t);
            CHECK(norm(lhs - rhs) <= 1e-12 * (1.0 + norm(rhs)));
        }
    }

    // eps-residual at general rho matches (eps h''/rho - eps h'/rho^2 - h/rho^3) Phi1
    const Profile prof = make_exponential(0.25);
    const double eps = 0.25;
    for (const auto& p : diffops::sample_points(40, 1.0, 3.0, 0.0, 1.0, 43)) {
        const double rho = norm(p.x);
        const Vec3 omega = p.x / rho;
        const FieldSample u = eval_pair(prof, {p.t, p.x});
        const Vec3 Etan = u.E;  // E is tangential
        const Vec3 nB = cross(omega, u.B - dot(u.B, omega) * omega);
        const Vec3 res = (1.0 + eps) * Etan - nB;
        const double s = rho + p.t;
        const double coef = eps * prof.deriv(s, 2) / rho - eps * prof.deriv(s, 1) / (rho * rho) -
                            prof.value(s) / (rho * rho * rho);
        const Vec3 expected = coef * Vec3{0.0, omega.z, -omega.y};
        CHECK(norm(res - expected) <= 1e-12 * (1.0 + norm(expected)));
    }
}

TEST_CASE("membership in N_eps only sees tangential components") {
    // adding kernel vectors (normal E and B parts) leaves the residual alone
    const double eps = 0.25;
    for (const auto& f : random_frames(20, 47)) {
        const Vec3 a = std::abs(f.n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        const Vec3 t1 = cross(f.n, a) / norm(cross(f.n, a));
        const Vec3 Btan = 0.8 * t1 - 1.3 * cross(f.n, t1);
        const FieldSample u{cross(f.n, Btan) / (1.0 + eps), Btan};
        CHECK(norm(neps_residual(u, f, eps)) < 1e-14);  // u in N_eps

        const FieldSample shifted{u.E + 2.7 * f.n, u.B - 1.9 * f.n};
        CHECK(norm(neps_residual(shifted, f, eps) - neps_residual(u, f, eps)) < 1e-14);
    }
}

TEST_CASE("dissipativity scan") {
    // eps = 0: the strict identity makes every ratio exactly -1
    const auto zero = dissipativity_scan(0.0, 2000, 5);
    CHECK(zero.min_margin == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(zero.c_estimate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(zero.dim_check);
    CHECK(zero.kernel_check);

    // eps = 0.25: ratio is the constant -2(1+eps)/((1+eps)^2+1)
    const auto scan = dissipativity_scan(0.25, 10000, 7);
    CHECK(scan.min_margin < 0.0);
    CHECK(scan.c_estimate > 0.0);
    const double expected = -2.0 * 1.25 / (1.25 * 1.25 + 1.0);
    CHECK(scan.min_margin == doctest::Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(dissipativity_scan(-1.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(dissipativity_scan(0.25, 0, 1), std::invalid_argument);
}

TEST_CASE("boundary space validation") {
    CHECK_THROWS_AS(BoundarySpace::make_eps(0.0), std::invalid_argument);
    CHECK_THROWS_AS(BoundarySpace::make_eps(1.0), std::invalid_argument);
    CHECK(BoundarySpace::make_eps(0.25).coefficient(3.0) == 0.25);

    CHECK_THROWS_AS(BoundarySpace::make_gamma([](double) { return 1.5; }, 1.0),
                    std::invalid_argument);
    const auto g = BoundarySpace::make_gamma([](double t) { return 0.1 * t; }, 1.0);
    CHECK(g.coefficient(0.5) == doctest::Approx(0.05));
}

TEST_CASE("Q polynomial") {
    CHECK(q_poly(1.0, 1.0) == 4.0);
    CHECK(q_poly(0.0, 1.0) == -2.0);
    // independent reduction: Q(1, b) = 12 - 8 b^2
    for (const double b : {1.0, 1.02, 1.05, 1.2}) {
        CHECK(q_poly(1.0, b) == doctest::Approx(12.0 - 8.0 * b * b).epsilon(1e-14));
    }
}

TEST_CASE("find_mu certifies Q >= 3 on the square") {
    CHECK_THROWS_AS(find_mu(50), std::invalid_argument);
    const double mu = find_mu(400);
    CHECK(mu > 0.04);
    CHECK(mu <= 1.0);
    // Q(1, B) = 12 - 8 B^2 crosses 3 at B = sqrt(9/8): mu cannot beat that
    CHECK(mu < 0.0607);
    // verification on a fine independent grid, including every smaller mu'
    double worst = 1e9;
    for (int i = 0; i <= 500; ++i) {
        for (int j = 0; j <= 500; ++j) {
            worst = std::min(worst, q_poly(1.0 + mu * i / 500.0, 1.0 + mu * j / 500.0));
        }
    }
    CHECK(worst >= 3.0);
    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
        CHECK(q_poly(1.0 + frac * mu, 1.0 + frac * mu) >= 3.0);
    }
}

TEST_CASE("gamma of t") {
    // numerator (b^2 - b^2)^4 kills gamma at t = b - 1
    CHECK(gamma_of_t(0.05, 1.05) == 0.0);
    CHECK(gamma_of_t(0.3, 1.05) == 0.0);  // extension by zero
    // frozen from independent evaluation: (1.05^2-1)^4 / Q(1, 1.05)
    CHECK(gamma_of_t(0.0, 1.05) == doctest::Approx(3.4711097189465409e-5).epsilon(1e-13));
    // Q(1, 1.3) < 0: the construction rejects b this large
    CHECK_THROWS_AS(gamma_of_t(0.0, 1.3), std::runtime_error);
}

TEST_CASE("constructed gamma cancels the boundary residual for the bump") {
    const double b = 1.05;
    const Profile prof = make_bump(b);
    for (int i = 0; i <= 20; ++i) {
        const double t = (b - 1.0) * i / 20.0;
        const double g = gamma_of_t(std::min(t, b - 1.0 - 1e-9), b);
        for (const auto& p : diffops::sample_points(5, 0.9, 1.1, 0, 1, 53u + unsigned(i))) {
            const Vec3 omega = p.x / norm(p.x);
            const auto frame = BoundaryFrame::at(omega);
            const FieldSample u = eval_pair(prof, {t, omega});
            const double scale = norm(u.E) + norm(u.B) + 1e-300;
            CHECK(norm(neps_residual(u, frame, g)) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("choose_b meets the budget and is monotone in delta") {
    const double b_half = choose_b(0.5);
    CHECK(b_half > 1.0);
    CHECK(b_half <= 1.0 + find_mu());
    CHECK(gamma_sup(b_half) <= 0.25);

    const double b_small = choose_b(0.01);
    CHECK(gamma_sup(b_small) <= 0.005);
    CHECK(b_small < b_half);  // smaller budget pushes b toward 1

    CHECK_THROWS_AS(choose_b(0.0), std::invalid_argument);
    CHECK_THROWS_AS(choose_b(1.0), std::invalid_argument);
}
