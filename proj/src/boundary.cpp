#include "maxdis/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace maxdis::boundary {

namespace {

// splitmix64: tiny, portable generator so scan results do not depend on the
// standard library's distribution implementations.
struct Rng {
    uint64_t state;
    explicit Rng(unsigned seed) : state(0x9E3779B97F4A7C15ull ^ (uint64_t(seed) * 0xBF58476D1CE4E5B9ull + 1)) {}
    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() {  // (0, 1)
        return (double(next() >> 11) + 0.5) * 0x1.0p-53;
    }
    double normal() {  // Box-Muller
        const double u1 = uniform(), u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    Vec3 unit_vector() {
        const double mu = 2.0 * uniform() - 1.0;
        const double phi = 2.0 * M_PI * uniform();
        const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        return {s * std::cos(phi), s * std::sin(phi), mu};
    }
};

}  // namespace

BoundaryFrame BoundaryFrame::at(const Vec3& x_on_sphere) {
    if (std::abs(norm(x_on_sphere) - 1.0) >= 1e-12) {
        throw std::invalid_argument("BoundaryFrame: point must lie on the unit sphere");
    }
    return {x_on_sphere, x_on_sphere};
}

BoundarySpace BoundarySpace::make_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("BoundarySpace: eps must lie in (0, 1)");
    }
    BoundarySpace s;
    s.kind = Kind::Eps;
    s.eps = eps;
    return s;
}

BoundarySpace BoundarySpace::make_gamma(std::function<double(double)> gamma, double t_end) {
    if (!gamma) throw std::invalid_argument("BoundarySpace: gamma function required");
    if (!(t_end > 0.0)) throw std::invalid_argument("BoundarySpace: t_end must be positive");
    // sup |gamma| < 1 over the window, checked on a dense grid
    const int n = 10000;
    for (int i = 0; i <= n; ++i) {
        const double t = t_end * double(i) / n;
        if (!(std::abs(gamma(t)) < 1.0)) {
            throw std::invalid_argument("BoundarySpace: |gamma| must stay below 1 on the window");
        }
    }
    BoundarySpace s;
    s.kind = Kind::Gamma;
    s.gamma = std::move(gamma);
    s.t_end = t_end;
    return s;
}

double BoundarySpace::coefficient(double t) const {
    return kind == Kind::Eps ? eps : gamma(t);
}

Vec3 tangential_part(const Vec3& v, const BoundaryFrame& frame) {
    return v - dot(v, frame.n) * frame.n;
}

FieldSample apply_An(const FieldSample& u, const BoundaryFrame& frame) {
    return {-cross(frame.n, u.B), cross(frame.n, u.E)};
}

double quad_form(const FieldSample& u, const BoundaryFrame& frame) {
    const FieldSample Au = apply_An(u, frame);
    return dot(Au.E, u.E) + dot(Au.B, u.B);
}

double measured_kappa() {
    static const double kappa = [] {
        Rng rng(12345);
        double value = 0.0;
        bool have = false;
        for (int i = 0; i < 256; ++i) {
            const BoundaryFrame frame = BoundaryFrame::at(rng.unit_vector());
            const FieldSample u{{rng.normal(), rng.normal(), rng.normal()},
                                {rng.normal(), rng.normal(), rng.normal()}};
            const double poynting = dot(cross(u.E, u.B), frame.n);
            if (std::abs(poynting) < 1e-3) continue;  // skip near-degenerate draws
            const double ratio = quad_form(u, frame) / poynting;
            if (!have) {
                value = ratio;
                have = true;
            } else if (std::abs(ratio - value) > 1e-10 * std::abs(value)) {
                throw std::runtime_error("quad_form / Poynting ratio is not constant");
            }
        }
        if (!have) throw std::runtime_error("kappa measurement produced no usable samples");
        return value;
    }();
    return kappa;
}

Vec3 neps_residual(const FieldSample& u, const BoundaryFrame& frame, double eps) {
    const Vec3 Etan = tangential_part(u.E, frame);
    const Vec3 nBtan = cross(frame.n, tangential_part(u.B, frame));
    return (1.0 + eps) * Etan - nBtan;
}

std::pair<Vec3, Vec3> residue_identity(const Profile& p, const Vec3& x, double t) {
    const double rho = norm(x);
    if (!(rho > 0.0)) throw std::invalid_argument("residue_identity: |x| must be positive");
    const Vec3 n = x / rho;
    const FieldSample u = eval_pair(p, {t, x});
    const Vec3 lhs = tangential_part(u.E, {x, n}) - cross(n, tangential_part(u.B, {x, n}));
    const Vec3 phi1{0.0, n.z, -n.y};
    const Vec3 rhs = -(p.value(rho + t) / (rho * rho * rho)) * phi1;
    return {lhs, rhs};
}

ScanResult dissipativity_scan(double eps, int samples, unsigned seed) {
    if (samples < 1) throw std::invalid_argument("dissipativity_scan: samples must be >= 1");
    if (!(eps > -1.0)) {
        throw std::invalid_argument("dissipativity_scan: eps must exceed -1 (1+eps = 0 is singular)");
    }
    Rng rng(seed);
    ScanResult res;
    res.samples = samples;
    res.min_margin = -std::numeric_limits<double>::infinity();

    for (int i = 0; i < samples; ++i) {
        const BoundaryFrame frame = BoundaryFrame::at(rng.unit_vector());
        // tangent-plane basis
        const Vec3 a = std::abs(frame.n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        const Vec3 t1v = cross(frame.n, a) / norm(cross(frame.n, a));
        const Vec3 t2v = cross(frame.n, t1v);
        // free parameters of N_eps: B_tan (2), E.n, B.n
        const Vec3 Btan = rng.normal() * t1v + rng.normal() * t2v;
        const Vec3 Etan = cross(frame.n, Btan) / (1.0 + eps);
        const FieldSample u{Etan + rng.normal() * frame.n, Btan + rng.normal() * frame.n};

        const double utan2 = norm2(Etan) + norm2(Btan);
        if (utan2 < 1e-12) continue;  // kernel direction, ratio undefined
        const double ratio = quad_form(u, frame) / utan2;
        res.min_margin = std::max(res.min_margin, ratio);
    }
    res.c_estimate = -res.min_margin;

    // dim N_eps = 4: the four parameter directions stay linearly independent
    {
        const BoundaryFrame frame = BoundaryFrame::at({0.0, 0.0, 1.0});
        const Vec3 t1v{1, 0, 0}, t2v{0, 1, 0};
        std::array<FieldSample, 4> basis{
            FieldSample{cross(frame.n, t1v) / (1.0 + eps), t1v},
            FieldSample{cross(frame.n, t2v) / (1.0 + eps), t2v},
            FieldSample{frame.n, {0, 0, 0}},
            FieldSample{{0, 0, 0}, frame.n}};
        // Gram determinant of the 4 six-vectors
        double g[4][4];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                g[i][j] = dot(basis[i].E, basis[j].E) + dot(basis[i].B, basis[j].B);
        // Gaussian elimination
        double det = 1.0;
        for (int c = 0; c < 4; ++c) {
            int piv = c;
            for (int r_ = c + 1; r_ < 4; ++r_)
                if (std::abs(g[r_][c]) > std::abs(g[piv][c])) piv = r_;
            if (piv != c) { std::swap(g[piv], g[c]); det = -det; }
            det *= g[c][c];
            if (g[c][c] == 0.0) break;
            for (int r_ = c + 1; r_ < 4; ++r_) {
                const double f = g[r_][c] / g[c][c];
                for (int cc = c; cc < 4; ++cc) g[r_][cc] -= f * g[c][cc];
            }
        }
        res.dim_check = std::abs(det) > 1e-12;

        // Ker A(n) = {(alpha n, beta n)} sits inside N_eps: tangential parts vanish
        const FieldSample k1{frame.n, {0, 0, 0}}, k2{{0, 0, 0}, frame.n};
        res.kernel_check = norm(neps_residual(k1, frame, eps)) < 1e-14 &&
                           norm(neps_residual(k2, frame, eps)) < 1e-14;
    }
    return res;
}

double q_poly(double y, double b) {
    const double y2 = y * y, b2 = b * b;
    const double d = b2 - y2;
    return 2.0 * (3.0 * y2 * y2 - 2.0 * (b2 - 1.0) * y2 - b2 * b2) + 2.0 * y * d * d;
}

namespace {

// Bound on ||grad Q|| over [1, Y]^2, monotone in Y.
double q_grad_bound(double Y) {
    const double A = Y * Y - 1.0;  // |b^2 - y^2| <= A on the square
    const double by = 24.0 * Y * Y * Y + 8.0 * A * Y + 2.0 * A * A + 8.0 * Y * Y * A;
    const double bb = 16.0 * Y * Y * Y + 8.0 * Y * Y * A;
    return std::sqrt(by * by + bb * bb);
}

// Grid-plus-Lipschitz certificate that Q >= 3 on [1, 1+mu]^2.
bool certify_q_ge3(double mu, int n) {
    const double hi = 1.0 + mu;
    const double cell = mu / (n - 1);
    const double slack = q_grad_bound(hi) * cell * M_SQRT2 / 2.0;  // half cell diagonal
    for (int i = 0; i < n; ++i) {
        const double y = 1.0 + mu * double(i) / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double b = 1.0 + mu * double(j) / (n - 1);
            if (q_poly(y, b) - slack < 3.0) return false;
        }
    }
    return true;
}

}  // namespace

double find_mu(int resolution) {
    if (resolution < 100) throw std::invalid_argument("find_mu: resolution must be >= 100");
    // Q(1,1) = 4 > 3, so a positive mu exists; bisect the certified predicate.
    double lo = 0.0, hi = 1.0;
    if (certify_q_ge3(1.0, resolution)) return 1.0;
    // grow lo to a certifiable start
    double probe = 1e-3;
    while (probe < 1.0 && certify_q_ge3(probe, resolution)) {
        lo = probe;
        probe *= 2.0;
    }
    hi = std::min(1.0, probe);
    for (int it = 0; it < 50 && hi - lo > 1e-9; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (certify_q_ge3(mid, resolution)) lo = mid;
        else hi = mid;
    }
    return lo;
}

double gamma_of_t(double t, double b) {
    if (!(b > 1.0)) throw std::invalid_argument("gamma_of_t: b must exceed 1");
    if (t < 0.0 || t >= b - 1.0) return 0.0;
    const double y = 1.0 + t;
    const double q = q_poly(y, b);
    if (!(q > 0.0)) {
        throw std::runtime_error("gamma_of_t: Q(1+t, b) <= 0 at t = " + std::to_string(t) +
                                 "; b chosen too large");
    }
    const double d = b * b - y * y;
    const double d2 = d * d;
    return d2 * d2 / q;
}

double gamma_sup(double b, int grid) {
    double sup = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double t = (b - 1.0) * double(i) / grid;
        sup = std::max(sup, std::abs(gamma_of_t(std::min(t, b - 1.0), b)));
    }
    return sup;
}

double choose_b(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("choose_b: delta must lie in (0, 1)");
    }
    static const double mu = find_mu();
    const double b_cap = 1.0 + mu;
    // gamma_sup is tiny throughout (1, 1+mu], so sup <= delta/2 alone never
    // binds; target the delta/2 fraction of the supremum at the cap so the
    // result shrinks toward 1 as delta does.
    const double target = 0.5 * delta * gamma_sup(b_cap);
    double lo = 1.0 + 1e-9, hi = b_cap;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (gamma_sup(mid) <= target) lo = mid;
        else hi = mid;
    }
    return lo;
}

std::array<double, 36> an_matrix(const BoundaryFrame& frame) {
    std::array<double, 36> m{};
    for (int c = 0; c < 6; ++c) {
        FieldSample e{};
        if (c < 3) e.E[c] = 1.0;
        else e.B[c - 3] = 1.0;
        const FieldSample Ae = apply_An(e, frame);
        for (int r = 0; r < 3; ++r) {
            m[static_cast<size_t>(r * 6 + c)] = Ae.E[r];
            m[static_cast<size_t>((r + 3) * 6 + c)] = Ae.B[r];
        }
    }
    return m;
}

std::array<double, 6> an_spectrum(const BoundaryFrame& frame) {
    auto m = an_matrix(frame);
    auto at = [&m](int r, int c) -> double& { return m[static_cast<size_t>(r * 6 + c)]; };
    // cyclic Jacobi sweeps; the matrix is symmetric so this converges fast
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 6; ++p)
            for (int q = p + 1; q < 6; ++q) off += at(p, q) * at(p, q);
        if (off < 1e-30) break;
        for (int p = 0; p < 6; ++p) {
            for (int q = p + 1; q < 6; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = 0.5 * (at(q, q) - at(p, p)) / apq;
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 6; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < 6; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::array<double, 6> ev{};
    for (int i = 0; i < 6; ++i) ev[static_cast<size_t>(i)] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace maxdis::boundary
