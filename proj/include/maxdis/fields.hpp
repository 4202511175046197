#pragma once

#include <functional>
#include <iosfwd>

#include "maxdis/profile.hpp"
#include "maxdis/vec3.hpp"

namespace maxdis {

// A point (t, x) with x != 0.  The constructed solutions are smooth on
// R_t x (R^3 \ 0); evaluation guards |x| >= 1e-12.
struct SpacetimePoint {
    double t = 0.0;
    Vec3 x{};
};

struct FieldSample {
    Vec3 E{};
    Vec3 B{};
};

// The three angular directions every constructed field lives in:
//   Phi1 = omega ^ e1            (winds around the latitude circles)
//   Phi2 = omega ^ (omega ^ e1)  (= -tangential part of e1, along longitudes)
//   Phi3 = e1 = (1,0,0)
// Phi1 and Phi2 are tangential with |Phi1| = |Phi2| = sin(theta), where
// cos(theta) = omega.e1; both vanish exactly on the e1 axis.
struct AngularBasis {
    Vec3 Phi1{};
    Vec3 Phi2{};
    Vec3 Phi3{1.0, 0.0, 0.0};
};

// Basis at a unit direction omega.  Phi2 uses the closed polynomial form
// (omega1^2 - 1, omega1*omega2, omega1*omega3) rather than nested cross
// products, so the vanishing on the e1 axis is exact.
// Throws std::invalid_argument if | |omega| - 1 | >= 1e-10.
AngularBasis angular_basis(const Vec3& omega);

// Electric field of the incoming solution:
//   E = (h''(s)/|x| - h'(s)/|x|^2) Phi1,   s = |x| + t.
Vec3 eval_E(const Profile& p, const SpacetimePoint& pt);

// Magnetic field of the incoming solution:
//   B = -(h''/|x| - 3h'/|x|^2 + 3h/|x|^3) Phi2 + 2(h'/|x|^2 - h/|x|^3) Phi3.
Vec3 eval_B(const Profile& p, const SpacetimePoint& pt);

FieldSample eval_pair(const Profile& p, const SpacetimePoint& pt);

// Scalar spherical wave f(|x| +- t)/|x| (incoming takes the + sign).  Solves
// the wave equation away from the origin; used as an oracle input for the
// d'Alembertian residual tests.
double spherical_wave(const Profile& f, const SpacetimePoint& pt, bool incoming);

// Tangential sphere profile e(s, omega) with omega.e == 0.
using TangentialProfile = std::function<Vec3(double, const Vec3&)>;

// Candidate modulated spherical wave
//   (E, B) = (e(s, omega)/|x|,  omega^e(s, omega)/|x|),
// with s = |x| - t (outgoing, the default) or s = |x| + t.  This is NOT a
// Maxwell solution in general; the nogo module measures how it fails.
// Throws std::invalid_argument if the profile output is not tangential.
FieldSample modulated_wave(const TangentialProfile& profile_e, const SpacetimePoint& pt,
                           bool incoming = false);

// Batch evaluation: reads CSV rows (t, x1, x2, x3), writes the same rows with
// (E1,E2,E3,B1,B2,B3) appended.  A non-numeric first line is treated as a
// header and echoed with the new column names.  Returns rows written.
int append_fields_csv(const Profile& p, std::istream& in, std::ostream& out);

}  // namespace maxdis
