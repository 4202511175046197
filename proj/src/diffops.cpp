#include "maxdis/diffops.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace maxdis::diffops {

namespace {

// Stencil points must stay away from the field singularity at the origin.
void check_stencil(const Vec3& x, double radius) {
    if (norm(x) - radius < 0.5) {
        throw std::domain_error("FD stencil too close to the origin (|x| - radius < 0.5)");
    }
}

double stencil_radius(const FDScheme& s) { return (s.order == 4 ? 2.0 : 1.0) * s.step; }

Vec3 shift(const Vec3& x, int j, double d) {
    Vec3 y = x;
    y[j] += d;
    return y;
}

// First derivative of a scalar component along axis j.
template <typename Eval>
double d1(const Eval& f, const Vec3& x, int j, double h, int order) {
    if (order == 4) {
        return (-f(shift(x, j, 2 * h)) + 8.0 * f(shift(x, j, h)) - 8.0 * f(shift(x, j, -h)) +
                f(shift(x, j, -2 * h))) /
               (12.0 * h);
    }
    return (f(shift(x, j, h)) - f(shift(x, j, -h))) / (2.0 * h);
}

void validate_scheme(const FDScheme& s) {
    if (!(s.step > 0.0)) throw std::invalid_argument("FDScheme: step must be positive");
    if (s.order != 2 && s.order != 4) throw std::invalid_argument("FDScheme: order must be 2 or 4");
}

}  // namespace

Vec3 fd_grad(const ScalarField& f, const Vec3& x, const FDScheme& scheme) {
    validate_scheme(scheme);
    check_stencil(x, stencil_radius(scheme));
    Vec3 g;
    for (int j = 0; j < 3; ++j) g[j] = d1(f, x, j, scheme.step, scheme.order);
    return g;
}

Vec3 fd_curl(const VectorField& F, const Vec3& x, const FDScheme& scheme) {
    validate_scheme(scheme);
    check_stencil(x, stencil_radius(scheme));
    const double h = scheme.step;
    auto comp = [&F](int c) { return [&F, c](const Vec3& y) { return F(y)[c]; }; };
    Vec3 curl;
    curl[0] = d1(comp(2), x, 1, h, scheme.order) - d1(comp(1), x, 2, h, scheme.order);
    curl[1] = d1(comp(0), x, 2, h, scheme.order) - d1(comp(2), x, 0, h, scheme.order);
    curl[2] = d1(comp(1), x, 0, h, scheme.order) - d1(comp(0), x, 1, h, scheme.order);
    return curl;
}

double fd_div(const VectorField& F, const Vec3& x, const FDScheme& scheme) {
    validate_scheme(scheme);
    check_stencil(x, stencil_radius(scheme));
    double div = 0.0;
    for (int j = 0; j < 3; ++j) {
        div += d1([&F, j](const Vec3& y) { return F(y)[j]; }, x, j, scheme.step, scheme.order);
    }
    return div;
}

std::vector<double> fd_box(const SpacetimeField& u, const SpacetimePoint& pt,
                           const FDScheme& scheme) {
    validate_scheme(scheme);
    check_stencil(pt.x, stencil_radius(scheme));
    const double h = scheme.step;
    const size_t k = u(pt.t, pt.x).size();

    auto second = [&](const std::function<std::vector<double>(double)>& f) {
        std::vector<double> out(k, 0.0);
        if (scheme.order == 4) {
            const auto fp2 = f(2 * h), fp1 = f(h), f0 = f(0.0), fm1 = f(-h), fm2 = f(-2 * h);
            for (size_t c = 0; c < k; ++c) {
                out[c] = (-fp2[c] + 16.0 * fp1[c] - 30.0 * f0[c] + 16.0 * fm1[c] - fm2[c]) /
                         (12.0 * h * h);
            }
        } else {
            const auto fp = f(h), f0 = f(0.0), fm = f(-h);
            for (size_t c = 0; c < k; ++c) out[c] = (fp[c] - 2.0 * f0[c] + fm[c]) / (h * h);
        }
        return out;
    };

    std::vector<double> box = second([&](double d) { return u(pt.t + d, pt.x); });
    for (int j = 0; j < 3; ++j) {
        const auto lap_j = second([&](double d) { return u(pt.t, shift(pt.x, j, d)); });
        for (size_t c = 0; c < k; ++c) box[c] -= lap_j[c];
    }
    return box;
}

namespace {

// max of the four Maxwell residual norms at one point for a given step.
double maxwell_norm(const Profile& p, const SpacetimePoint& pt, const FDScheme& s) {
    const double h = s.step;
    auto E_at = [&p](double t) {
        return [&p, t](const Vec3& x) { return eval_E(p, {t, x}); };
    };
    auto B_at = [&p](double t) {
        return [&p, t](const Vec3& x) { return eval_B(p, {t, x}); };
    };

    Vec3 Et, Bt;
    if (s.order == 4) {
        Et = (-eval_E(p, {pt.t + 2 * h, pt.x}) + 8.0 * eval_E(p, {pt.t + h, pt.x}) -
              8.0 * eval_E(p, {pt.t - h, pt.x}) + eval_E(p, {pt.t - 2 * h, pt.x})) /
             (12.0 * h);
        Bt = (-eval_B(p, {pt.t + 2 * h, pt.x}) + 8.0 * eval_B(p, {pt.t + h, pt.x}) -
              8.0 * eval_B(p, {pt.t - h, pt.x}) + eval_B(p, {pt.t - 2 * h, pt.x})) /
             (12.0 * h);
    } else {
        Et = (eval_E(p, {pt.t + h, pt.x}) - eval_E(p, {pt.t - h, pt.x})) / (2.0 * h);
        Bt = (eval_B(p, {pt.t + h, pt.x}) - eval_B(p, {pt.t - h, pt.x})) / (2.0 * h);
    }

    const Vec3 curlB = fd_curl(B_at(pt.t), pt.x, s);
    const Vec3 curlE = fd_curl(E_at(pt.t), pt.x, s);
    const double divE = fd_div(E_at(pt.t), pt.x, s);
    const double divB = fd_div(B_at(pt.t), pt.x, s);

    double m = norm_inf(Et - curlB);
    m = std::max(m, norm_inf(Bt + curlE));
    m = std::max(m, std::abs(divE));
    return std::max(m, std::abs(divB));
}

}  // namespace

ResidualReport maxwell_residual(const Profile& p, const SpacetimePoint& pt,
                                const FDScheme& scheme) {
    return maxwell_residual_suite(p, {pt}, scheme);
}

ResidualReport maxwell_residual_suite(const Profile& p,
                                      const std::vector<SpacetimePoint>& pts,
                                      const FDScheme& scheme) {
    validate_scheme(scheme);
    if (scheme.refinement_levels < 2) {
        throw std::invalid_argument("maxwell_residual: need at least 2 refinement levels");
    }
    if (pts.empty()) throw std::invalid_argument("maxwell_residual: no points");
    ResidualReport rep;
    rep.points_tested = static_cast<int>(pts.size());
    FDScheme level = scheme;
    for (int l = 0; l < scheme.refinement_levels; ++l) {
        double worst = 0.0;
        for (const auto& pt : pts) worst = std::max(worst, maxwell_norm(p, pt, level));
        rep.residual_norms.push_back(worst);
        rep.steps.push_back(level.step);
        level.step *= 0.5;
    }
    rep.estimated_order = convergence_order(rep.residual_norms, rep.steps);
    return rep;
}

double convergence_order(const std::vector<double>& norms, const std::vector<double>& steps) {
    if (norms.size() != steps.size() || norms.size() < 2) {
        throw std::invalid_argument("convergence_order: need >= 2 matching levels");
    }
    for (size_t i = 1; i < steps.size(); ++i) {
        if (!(steps[i] < steps[i - 1])) {
            throw std::invalid_argument("convergence_order: steps must be strictly decreasing");
        }
    }
    for (double n : norms) {
        if (n == 0.0) return std::numeric_limits<double>::infinity();  // already at the floor
    }
    // least-squares slope of log(norm) vs log(step)
    const size_t m = norms.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        const double lx = std::log(steps[i]);
        const double ly = std::log(norms[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double n = static_cast<double>(m);
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

double halton(unsigned long long i, unsigned base) {
    double f = 1.0, v = 0.0;
    while (i > 0) {
        f /= base;
        v += f * static_cast<double>(i % base);
        i /= base;
    }
    return v;
}

}  // namespace

std::vector<SpacetimePoint> sample_points(int n, double r_lo, double r_hi, double t_lo,
                                          double t_hi, unsigned seed) {
    if (n < 1) throw std::invalid_argument("sample_points: n must be >= 1");
    if (!(r_lo > 0.0 && r_hi > r_lo)) throw std::invalid_argument("sample_points: bad radii");
    std::vector<SpacetimePoint> pts;
    pts.reserve(static_cast<size_t>(n));
    const double r3lo = r_lo * r_lo * r_lo, r3hi = r_hi * r_hi * r_hi;
    for (int i = 0; i < n; ++i) {
        const unsigned long long idx = static_cast<unsigned long long>(i) + 1 + seed;
        const double t = t_lo + (t_hi - t_lo) * halton(idx, 2);
        const double r = std::cbrt(r3lo + (r3hi - r3lo) * halton(idx, 3));  // volume-uniform
        const double mu = 2.0 * halton(idx, 5) - 1.0;
        const double phi = 2.0 * M_PI * halton(idx, 7);
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        pts.push_back({t, {r * st * std::cos(phi), r * st * std::sin(phi), r * mu}});
    }
    return pts;
}

}  // namespace maxdis::diffops
