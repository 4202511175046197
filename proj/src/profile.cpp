#include "maxdis/profile.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace maxdis {

namespace {

// Support-edge cushion: within 1e-12 of |y| = b everything is pinned to an
// exact 0.  The exponential factor underflows long before that, so no value
// is lost, and the support boundary becomes bit-exact.
constexpr double kEdgeCushion = 1e-12;

// Bump derivatives as rational prefactors times h itself:
//   h'   = -2y / d^2                                  * h,   d := b^2 - y^2
//   h''  = 2(3y^4 - 2(b^2-1)y^2 - b^4) / d^4           * h   =: P2/d^4 * h
//   h''' = (P2'(y) d^2 + 8y P2 d - 2y P2) / d^6        * h,  P2' = 8y(3y^2 - (b^2-1))
// The h''' form comes from differentiating the h'' prefactor once more; this
// keeps every order as (polynomial / power of d) * h, which stays finite all
// the way to the support edge because h decays faster than any rational
// blow-up.
double bump_deriv(double b, double y, int order) {
    const double ay = std::abs(y);
    if (ay >= b - kEdgeCushion) return 0.0;
    const double d = b * b - y * y;
    const double h = std::exp(-1.0 / d);
    if (h == 0.0) return 0.0;
    switch (order) {
        case 0:
            return h;
        case 1:
            return -2.0 * y / (d * d) * h;
        case 2: {
            const double p2 = 2.0 * (3.0 * y * y * y * y - 2.0 * (b * b - 1.0) * y * y - b * b * b * b);
            return p2 / (d * d * d * d) * h;
        }
        case 3: {
            const double y2 = y * y;
            const double p2 = 2.0 * (3.0 * y2 * y2 - 2.0 * (b * b - 1.0) * y2 - b * b * b * b);
            const double p2p = 8.0 * y * (3.0 * y2 - (b * b - 1.0));
            const double num = p2p * d * d + 8.0 * y * p2 * d - 2.0 * y * p2;
            const double d2 = d * d;
            return num / (d2 * d2 * d2) * h;
        }
        default:
            throw std::invalid_argument("profile derivative order must be in {0,1,2,3}");
    }
}

}  // namespace

Profile make_exponential(double epsilon) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("make_exponential: epsilon must be positive, got " +
                                    std::to_string(epsilon));
    }
    Profile p;
    p.kind_ = Profile::Kind::Exponential;
    p.rate_ = (1.0 - std::sqrt(1.0 + 4.0 / epsilon)) / 2.0;
    return p;
}

Profile make_bump(double b) {
    if (!(b > 1.0)) {
        throw std::invalid_argument("make_bump: b must exceed 1, got " + std::to_string(b));
    }
    Profile p;
    p.kind_ = Profile::Kind::Bump;
    p.width_ = b;
    return p;
}

Profile make_custom(std::function<double(double)> h,
                    std::function<double(double)> h1,
                    std::function<double(double)> h2,
                    std::function<double(double)> h3) {
    if (!h) throw std::invalid_argument("make_custom: h is required");
    Profile p;
    p.kind_ = Profile::Kind::Custom;
    p.fn_ = {std::move(h), std::move(h1), std::move(h2), std::move(h3)};
    p.max_order_ = 0;
    for (int k = 1; k < 4 && p.fn_[static_cast<size_t>(k)]; ++k) p.max_order_ = k;
    return p;
}

double Profile::deriv(double s, int order) const {
    if (order < 0 || order > 3) {
        throw std::invalid_argument("profile derivative order must be in {0,1,2,3}");
    }
    switch (kind_) {
        case Kind::Exponential: {
            double rk = 1.0;
            for (int k = 0; k < order; ++k) rk *= rate_;
            return rk * std::exp(rate_ * s);
        }
        case Kind::Bump:
            return bump_deriv(width_, s, order);
        case Kind::Custom: {
            const auto& f = fn_[static_cast<size_t>(order)];
            if (!f) {
                throw std::invalid_argument("custom profile: derivative order " +
                                            std::to_string(order) + " not supplied");
            }
            return f(s);
        }
    }
    return 0.0;  // unreachable
}

std::vector<double> eval_derivs(const Profile& p, double s, int max_order) {
    if (max_order < 0 || max_order > 3) {
        throw std::invalid_argument("eval_derivs: max_order must be in {0,1,2,3}");
    }
    std::vector<double> out;
    out.reserve(static_cast<size_t>(max_order) + 1);
    for (int k = 0; k <= max_order; ++k) out.push_back(p.deriv(s, k));
    return out;
}

}  // namespace maxdis
