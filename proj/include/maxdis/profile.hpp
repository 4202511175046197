#pragma once

#include <array>
#include <functional>
#include <vector>

namespace maxdis {

// Scalar profile h(s) together with its first three derivatives.  The whole
// solution family is generated by this single function: the electric and
// magnetic fields are combinations of h, h', h'' evaluated at s = |x| + t,
// and the reduced radial system additionally needs h'''.
//
// Three families are supported:
//   Exponential:  h(s) = exp(r*s), r < 0 chosen from the boundary parameter.
//   Bump:         h(y) = exp(-1/(b^2 - y^2)) for |y| < b, 0 otherwise, b > 1.
//   Custom:       caller-supplied handles for h and whichever derivatives
//                 are available.
//
// Profiles are immutable after construction and evaluation is pure, so they
// are safe to share across threads.
//
// The constructions downstream assume h and its derivatives are integrable
// on [0, inf); the two built-in families satisfy this, custom profiles are
// the caller's responsibility (nothing is checked).
class Profile {
public:
    enum class Kind { Exponential, Bump, Custom };

    // A default-constructed profile is an empty Custom: assignable, but any
    // evaluation throws until a real profile is copied in.
    Profile() = default;

    Kind kind() const { return kind_; }
    // Exponential rate r (only meaningful for Kind::Exponential).
    double rate() const { return rate_; }
    // Bump half-width b (only meaningful for Kind::Bump).
    double width() const { return width_; }

    // h^(order)(s), order in {0,1,2,3}.
    double deriv(double s, int order) const;
    double value(double s) const { return deriv(s, 0); }

    // Highest derivative order this profile can evaluate (3 for the built-in
    // families, depends on the supplied handles for Custom).
    int max_order() const { return max_order_; }

    friend Profile make_exponential(double epsilon);
    friend Profile make_bump(double b);
    friend Profile make_custom(std::function<double(double)> h,
                               std::function<double(double)> h1,
                               std::function<double(double)> h2,
                               std::function<double(double)> h3);

private:
    Kind kind_ = Kind::Custom;
    double rate_ = 0.0;
    double width_ = 0.0;
    int max_order_ = 3;
    std::array<std::function<double(double)>, 4> fn_{};  // Custom handles
};

// Exponential profile for the dissipation parameter epsilon > 0:
//   r = (1 - sqrt(1 + 4/epsilon)) / 2,
// the negative root of eps*r^2 - eps*r - 1 = 0, so that the boundary
// residual (1+eps)E_tan - n^B_tan vanishes identically on |x| = 1.
Profile make_exponential(double epsilon);

// Compactly supported bump, support exactly [-b, b], requires b > 1.
Profile make_bump(double b);

// User-supplied profile; pass nullptr (default) for unavailable orders.
Profile make_custom(std::function<double(double)> h,
                    std::function<double(double)> h1 = nullptr,
                    std::function<double(double)> h2 = nullptr,
                    std::function<double(double)> h3 = nullptr);

// [h(s), h'(s), ..., h^(max_order)(s)], max_order in {0,1,2,3}.
std::vector<double> eval_derivs(const Profile& p, double s, int max_order);

}  // namespace maxdis
