#pragma once

#include <array>
#include <functional>
#include <utility>

#include "maxdis/fields.hpp"
#include "maxdis/profile.hpp"
#include "maxdis/vec3.hpp"

namespace maxdis::boundary {

// Point on the unit sphere with its outward unit normal n = x/|x|.  This
// orientation is the one that closes the boundary algebra below; see the
// README note on the sign convention.
struct BoundaryFrame {
    Vec3 x{};
    Vec3 n{};

    // Throws std::invalid_argument unless | |x| - 1 | < 1e-12.
    static BoundaryFrame at(const Vec3& x_on_sphere);
};

// Homogeneous dissipative boundary condition on |x| = 1:
//   Eps:    (1 + eps) E_tan = n ^ B_tan,      eps in (0, 1)
//   Gamma:  (1 + gamma(t)) E_tan = n ^ B_tan, sup |gamma| < 1 on [0, t_end]
struct BoundarySpace {
    enum class Kind { Eps, Gamma };
    Kind kind = Kind::Eps;
    double eps = 0.0;
    std::function<double(double)> gamma;
    double t_end = 0.0;

    static BoundarySpace make_eps(double eps);
    static BoundarySpace make_gamma(std::function<double(double)> gamma, double t_end);

    // eps, or gamma(t) for the time-dependent condition.
    double coefficient(double t) const;
};

// v - (v.n) n.
Vec3 tangential_part(const Vec3& v, const BoundaryFrame& frame);

// Boundary symbol of the Maxwell operator: A(n)(E, B) = (-n^B, n^E).
// Self-adjoint, eigenvalues {-1, -1, 0, 0, 1, 1}; the kernel is the fields
// with E and B both parallel to n.
FieldSample apply_An(const FieldSample& u, const BoundaryFrame& frame);

// <A(n)u, u>.  Numerically equals kappa * (E^B).n with kappa = 2 for this
// symbol convention; see measured_kappa().
double quad_form(const FieldSample& u, const BoundaryFrame& frame);

// The constant relating <A(n)u, u> to the Poynting flux (E^B).n, measured
// once from a randomized cross-check and cached.  Throws if the ratio is not
// constant across samples.
double measured_kappa();

// (1 + eps) E_tan - n ^ B_tan.
Vec3 neps_residual(const FieldSample& u, const BoundaryFrame& frame, double eps);

// Both sides of the residue identity on the sphere |x| = rho:
//   E_tan - n^B_tan  =  -(h(rho + t)/rho^3) (omega ^ e1).
// Returned as (computed LHS from the field formulas, closed-form RHS).
std::pair<Vec3, Vec3> residue_identity(const Profile& p, const Vec3& x, double t);

struct ScanResult {
    double min_margin = 0.0;   // worst (largest) ratio quad_form / ||u_tan||^2
    double c_estimate = 0.0;   // -min_margin
    bool dim_check = false;    // the sampled space is 4-dimensional
    bool kernel_check = false; // Ker A(n) is contained in N_eps
    int samples = 0;
};

// Randomized dissipativity scan over u in N_eps = {(1+eps)E_tan = n^B_tan}:
// the 4 free parameters are (B_tan in the tangent plane, E.n, B.n).  Requires
// eps > -1 so that E_tan = (1+eps)^{-1} n^B_tan is defined.
ScanResult dissipativity_scan(double eps, int samples, unsigned seed);

// Q(y, b) = 2(3y^4 - 2(b^2-1)y^2 - b^4) + 2y(b^2 - y^2)^2, the polynomial
// with h'' - h' = Q/(b^2-y^2)^4 * h for the bump profile.  Q(1,1) = 4.
double q_poly(double y, double b);

// Largest grid-certified mu in (0, 1] with Q >= 3 on [1, 1+mu]^2.  The
// certificate combines node values with a Lipschitz bound over the cell
// diameter.  resolution = grid points per axis, >= 100.
double find_mu(int resolution = 400);

// Time-dependent boundary coefficient for the bump solution:
//   gamma(t) = (b^2 - (1+t)^2)^4 / Q(1+t, b)  on 0 <= t <= b-1,  0 after.
// The extension past t = b-1 is identically 0 (C^3 at the junction; the
// numerator has a fourth-order zero there).  Throws std::runtime_error if
// Q(1+t, b) <= 0 inside the window (b chosen too large).
double gamma_of_t(double t, double b);

// Picks b in (1, 1+mu) with sup_{[0, b-1]} |gamma| <= delta/2, by bisection
// on the dense-grid supremum.  Any b below 1+mu satisfies the bound with
// room to spare, so the bisection target is the fraction delta/2 of the
// supremum at the certified cap; that keeps b strictly monotone in delta.
double choose_b(double delta);

// sup over t in [0, b-1] of |gamma(t)| on a dense grid.
double gamma_sup(double b, int grid = 2048);

// 6x6 matrix of A(n) in the (E, B) component basis, row-major.
std::array<double, 36> an_matrix(const BoundaryFrame& frame);

// Sorted eigenvalues of an_matrix (symmetric Jacobi iteration).
std::array<double, 6> an_spectrum(const BoundaryFrame& frame);

}  // namespace maxdis::boundary
