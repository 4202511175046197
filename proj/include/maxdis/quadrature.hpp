#pragma once

#include <vector>

#include "maxdis/boundary.hpp"
#include "maxdis/profile.hpp"

namespace maxdis::quadrature {

// Product quadrature on the shell {1 <= |x| <= r_max}: Gauss-Legendre in r
// and in cos(theta), uniform trapezoid in phi.  The integrands here are
// smooth and azimuthally simple, so the product rule converges spectrally
// and its exactness is easy to certify.
struct ShellGrid {
    double r_max = 2.0;
    int n_r = 64, n_theta = 16, n_phi = 32;
    int exactness_degree = 0;  // spherical polynomial degree the rule integrates exactly

    std::vector<double> r_nodes, r_weights;    // on [1, r_max]
    std::vector<double> mu_nodes, mu_weights;  // cos(theta) on [-1, 1]

    static ShellGrid make(double r_max, int n_r = 64, int n_theta = 16, int n_phi = 32);
};

// Default truncation radius: 1 + 20/|r| for the exponential profile (tail
// below e^{-40} relative) and the support edge b for the bump.
double default_r_max(const Profile& p);

struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> energy;  // shell integral of |E|^2 + |B|^2
    std::vector<double> flux;    // sphere integral of <A(n)u, u>
};

// Gauss-Legendre nodes/weights on [-1, 1] (Newton iteration on P_n).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct ShellEnergyResult {
    double value = 0.0;
    double tail_bound = 0.0;        // analytic bound on the truncated r > r_max part
    double quad_error_estimate = 0.0;  // relative, from comparison with a coarser rule
    bool accuracy_warning = false;
};

// Integral of |E|^2 + |B|^2 over the shell at time t.
double shell_energy(const Profile& p, double t, const ShellGrid& grid);

// Same, with the exponential tail bound and a coarse-grid error estimate.
// accuracy_warning is set when the estimate exceeds rel_tol.
ShellEnergyResult shell_energy_detailed(const Profile& p, double t, const ShellGrid& grid,
                                        double rel_tol = 1e-8);

// Sphere integral of <A(n)u, u> for the analytic pair at |x| = 1.  The
// boundary space does not enter the value; it is accepted so callers can
// carry the experiment description through.
double boundary_flux(const Profile& p, double t, const ShellGrid& grid,
                     const boundary::BoundarySpace* space = nullptr);

struct EnergyIdentityResult {
    double lhs = 0.0;       // centered difference of shell_energy in t
    double rhs = 0.0;       // boundary flux
    double mismatch = 0.0;  // |lhs - rhs| / |rhs|
    bool inconclusive = false;  // tail bound exceeded the tolerance
};

// d/dt integral |u|^2 = boundary integral <A(n)u, u>, checked at time t with
// a centered difference of width dt.
EnergyIdentityResult energy_identity_check(const Profile& p, double t, const ShellGrid& grid,
                                           double dt, double tail_tol = 1e-8);

// Least-squares slope of log(energy) against t, divided by 2 (field rate).
// Samples with non-positive energy are excluded; at least 3 positive samples
// are required.
double decay_rate(const EnergyTrace& trace);

// Energy/flux trace of the analytic solution at evenly spaced times.
EnergyTrace energy_trace(const Profile& p, double t0, double t1, int samples,
                         const ShellGrid& grid);

}  // namespace maxdis::quadrature
