#include "maxdis/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "maxdis/fields.hpp"

namespace maxdis::quadrature {

namespace {

// Kahan-compensated accumulator; keeps the quadrature sums independent of
// evaluation order to ~1 ulp per term.
struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

double energy_density(const Profile& p, double t, const Vec3& x) {
    const FieldSample u = eval_pair(p, {t, x});
    return norm2(u.E) + norm2(u.B);
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    nodes.assign(static_cast<size_t>(n), 0.0);
    weights.assign(static_cast<size_t>(n), 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<size_t>(i)] = -x;
        nodes[static_cast<size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[static_cast<size_t>(i)] = w;
        weights[static_cast<size_t>(n - 1 - i)] = w;
    }
}

ShellGrid ShellGrid::make(double r_max, int n_r, int n_theta, int n_phi) {
    if (!(r_max > 1.0)) throw std::invalid_argument("ShellGrid: r_max must exceed 1");
    if (n_r < 4 || n_theta < 4 || n_phi < 4) {
        throw std::invalid_argument("ShellGrid: node counts must be >= 4");
    }
    ShellGrid g;
    g.r_max = r_max;
    g.n_r = n_r;
    g.n_theta = n_theta;
    g.n_phi = n_phi;
    gauss_legendre(n_theta, g.mu_nodes, g.mu_weights);
    std::vector<double> xn, xw;
    gauss_legendre(n_r, xn, xw);
    const double mid = 0.5 * (r_max + 1.0), half = 0.5 * (r_max - 1.0);
    g.r_nodes.resize(static_cast<size_t>(n_r));
    g.r_weights.resize(static_cast<size_t>(n_r));
    for (int i = 0; i < n_r; ++i) {
        g.r_nodes[static_cast<size_t>(i)] = mid + half * xn[static_cast<size_t>(i)];
        g.r_weights[static_cast<size_t>(i)] = half * xw[static_cast<size_t>(i)];
    }
    // trapezoid in phi is exact for trig polynomials of degree < n_phi
    g.exactness_degree = std::min(2 * n_theta - 1, n_phi - 1);
    return g;
}

double default_r_max(const Profile& p) {
    switch (p.kind()) {
        case Profile::Kind::Exponential:
            return 1.0 + 20.0 / std::abs(p.rate());
        case Profile::Kind::Bump:
            return std::max(p.width(), 1.0 + 1e-3);
        case Profile::Kind::Custom:
            return 8.0;
    }
    return 8.0;
}

namespace {

// integral over the sphere |x| = r of f(x) dsigma, via the grid's angular rule
template <typename F>
double sphere_integral(const ShellGrid& g, double r, const F& f) {
    Kahan acc;
    const double dphi = 2.0 * M_PI / g.n_phi;
    for (int i = 0; i < g.n_theta; ++i) {
        const double mu = g.mu_nodes[static_cast<size_t>(i)];
        const double wmu = g.mu_weights[static_cast<size_t>(i)];
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int j = 0; j < g.n_phi; ++j) {
            const double phi = dphi * j;
            const Vec3 omega{st * std::cos(phi), st * std::sin(phi), mu};
            acc.add(wmu * dphi * f(r * omega));
        }
    }
    return r * r * acc.sum;
}

double shell_energy_on(const Profile& p, double t, const ShellGrid& g) {
    Kahan acc;
    for (int k = 0; k < g.n_r; ++k) {
        const double r = g.r_nodes[static_cast<size_t>(k)];
        acc.add(g.r_weights[static_cast<size_t>(k)] *
                sphere_integral(g, r, [&](const Vec3& x) { return energy_density(p, t, x); }));
    }
    return acc.sum;
}

// Analytic bound on the exponential-profile energy beyond r_max:
// |E|^2 + |B|^2 <= M^2 e^{2 rho (r + t)} with M collecting the coefficient
// magnitudes, and the radial integral of r^2 e^{2 rho r} has a closed form.
double exp_tail_bound(const Profile& p, double t, double r_max) {
    const double rho = p.rate();
    const double a = -2.0 * rho;  // > 0
    const double M = (rho * rho + std::abs(rho)) + (rho * rho + 3.0 * std::abs(rho) + 3.0) +
                     2.0 * (std::abs(rho) + 1.0);
    const double integral =
        std::exp(-a * r_max) * (r_max * r_max / a + 2.0 * r_max / (a * a) + 2.0 / (a * a * a));
    return 4.0 * M_PI * M * M * std::exp(2.0 * rho * t) * integral;
}

}  // namespace

double shell_energy(const Profile& p, double t, const ShellGrid& grid) {
    return shell_energy_on(p, t, grid);
}

ShellEnergyResult shell_energy_detailed(const Profile& p, double t, const ShellGrid& grid,
                                        double rel_tol) {
    ShellEnergyResult res;
    res.value = shell_energy_on(p, t, grid);
    if (p.kind() == Profile::Kind::Exponential) {
        res.tail_bound = exp_tail_bound(p, t, grid.r_max);
    }
    // error estimate against a finer rule; the difference bounds the error of
    // the requested grid, not of the reference
    const ShellGrid finer =
        ShellGrid::make(grid.r_max, grid.n_r + 7, grid.n_theta + 5, grid.n_phi + 4);
    const double ref_val = shell_energy_on(p, t, finer);
    const double scale = std::max(std::abs(ref_val), 1e-300);
    res.quad_error_estimate = std::abs(res.value - ref_val) / scale;
    res.accuracy_warning = res.quad_error_estimate > rel_tol;
    return res;
}

double boundary_flux(const Profile& p, double t, const ShellGrid& grid,
                     const boundary::BoundarySpace*) {
    return sphere_integral(grid, 1.0, [&](const Vec3& x) {
        const FieldSample u = eval_pair(p, {t, x});
        return boundary::quad_form(u, {x, x});
    });
}

EnergyIdentityResult energy_identity_check(const Profile& p, double t, const ShellGrid& grid,
                                           double dt, double tail_tol) {
    if (!(dt > 0.0)) throw std::invalid_argument("energy_identity_check: dt must be positive");
    EnergyIdentityResult res;
    const double ep = shell_energy(p, t + dt, grid);
    const double em = shell_energy(p, t - dt, grid);
    res.lhs = (ep - em) / (2.0 * dt);
    res.rhs = boundary_flux(p, t, grid);
    res.mismatch = std::abs(res.lhs - res.rhs) / std::max(std::abs(res.rhs), 1e-300);
    if (p.kind() == Profile::Kind::Exponential) {
        const double tail = exp_tail_bound(p, t, grid.r_max);
        const double scale = std::max(std::abs(shell_energy(p, t, grid)), 1e-300);
        res.inconclusive = tail / scale > tail_tol;
    }
    return res;
}

double decay_rate(const EnergyTrace& trace) {
    if (trace.times.size() != trace.energy.size()) {
        throw std::invalid_argument("decay_rate: times/energy length mismatch");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < trace.times.size(); ++i) {
        if (!(trace.energy[i] > 0.0)) continue;  // fit window excludes the floor
        const double x = trace.times[i], y = std::log(trace.energy[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 3) throw std::invalid_argument("decay_rate: need >= 3 samples with positive energy");
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return 0.5 * slope;
}

EnergyTrace energy_trace(const Profile& p, double t0, double t1, int samples,
                         const ShellGrid& grid) {
    if (samples < 2) throw std::invalid_argument("energy_trace: need >= 2 samples");
    if (!(t1 > t0)) throw std::invalid_argument("energy_trace: t1 must exceed t0");
    EnergyTrace tr;
    for (int i = 0; i < samples; ++i) {
        const double t = t0 + (t1 - t0) * double(i) / (samples - 1);
        tr.times.push_back(t);
        tr.energy.push_back(shell_energy(p, t, grid));
        tr.flux.push_back(boundary_flux(p, t, grid));
    }
    return tr;
}

}  // namespace maxdis::quadrature
