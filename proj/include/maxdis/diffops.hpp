#pragma once

#include <functional>
#include <vector>

#include "maxdis/fields.hpp"
#include "maxdis/vec3.hpp"

namespace maxdis::diffops {

// Central-difference scheme used by the oracle.  The oracle is deliberately
// independent of every analytic derivative it checks: no closed-form
// derivative of the fields is ever used here, only point evaluations.
struct FDScheme {
    double step = 1e-3;       // spatial and temporal step
    int order = 2;            // central-difference accuracy, 2 or 4
    int refinement_levels = 3;  // step halvings for order estimation
};

// Residual norms across refinement levels plus a fitted convergence order.
struct ResidualReport {
    std::vector<double> residual_norms;  // one per level, coarsest first
    std::vector<double> steps;
    double estimated_order = 0.0;  // +inf when the norms sit at the zero floor
    int points_tested = 0;
};

using VectorField = std::function<Vec3(const Vec3&)>;
using ScalarField = std::function<double(const Vec3&)>;
using SpacetimeField = std::function<std::vector<double>(double, const Vec3&)>;

Vec3 fd_grad(const ScalarField& f, const Vec3& x, const FDScheme& scheme);
Vec3 fd_curl(const VectorField& F, const Vec3& x, const FDScheme& scheme);
double fd_div(const VectorField& F, const Vec3& x, const FDScheme& scheme);

// d'Alembertian u_tt - Laplace(u), componentwise.
std::vector<double> fd_box(const SpacetimeField& u, const SpacetimePoint& pt,
                           const FDScheme& scheme);

// Per-level max of ||dE/dt - curl B||, ||dB/dt + curl E||, |div E|, |div B|
// at one interior point, with the order fitted across levels.
ResidualReport maxwell_residual(const Profile& p, const SpacetimePoint& pt,
                                const FDScheme& scheme);

// Same residual aggregated as the max over a batch of points per level.
ResidualReport maxwell_residual_suite(const Profile& p,
                                      const std::vector<SpacetimePoint>& pts,
                                      const FDScheme& scheme);

// Least-squares slope of log(norm) against log(step).  Requires >= 2 levels
// and strictly decreasing steps.  Any zero norm means the sequence is already
// at the floor: returns +infinity.
double convergence_order(const std::vector<double>& norms, const std::vector<double>& steps);

// Deterministic low-discrepancy (Halton) sample of points in
// {r_lo <= |x| <= r_hi} x {t_lo <= t <= t_hi}; seed offsets the sequence.
std::vector<SpacetimePoint> sample_points(int n, double r_lo, double r_hi, double t_lo,
                                          double t_hi, unsigned seed = 0);

}  // namespace maxdis::diffops
