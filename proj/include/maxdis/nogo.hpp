#pragma once

#include <vector>

#include "maxdis/diffops.hpp"
#include "maxdis/fields.hpp"

namespace maxdis::nogo {

// Numerical demonstrations (not proofs) that a modulated spherical wave
//   (E, B) = (e(|x|-t, omega)/|x|, omega^e(|x|-t, omega)/|x|)
// cannot satisfy Maxwell's equations unless e is angularly constant, and
// that continuous tangential sphere profiles always vanish somewhere.

struct DivLevel {
    double step = 0.0;
    double min_abs_div = 0.0;
    double max_abs_div = 0.0;
};

struct DivObstructionReport {
    std::vector<DivLevel> levels;  // coarsest step first
    double min_abs_div = 0.0;      // at the finest step
    double max_abs_div = 0.0;
};

// FD divergence of the modulated pair (the max of |div E| and |div B| per
// point) over the sample points, repeated across the scheme's refinement
// levels.  For an omega-dependent profile the max converges to a positive
// mesh-independent value, unlike the residuals of the true solutions.
// Throws std::invalid_argument if the profile is zero at every sample point.
DivObstructionReport modulated_div_obstruction(const TangentialProfile& profile_e,
                                               const std::vector<SpacetimePoint>& points,
                                               const diffops::FDScheme& scheme);

struct QuietSpot {
    Vec3 omega_star{};
    double min_norm = 0.0;
    double field_scale = 0.0;  // max |e| seen on the coarse sphere grid
};

// Grid-plus-refinement minimizer of |e(s, omega)| over the sphere.  A
// continuous tangential field must vanish somewhere, so min_norm well below
// the field scale certifies a numerical zero.  resolution is the coarse grid
// size per axis, >= 16.
QuietSpot quiet_spot_find(const TangentialProfile& profile_e, double s, int resolution = 64);

// Named test profiles used by the demos; f supplies the radial modulation.
TangentialProfile profile_rot_e1(const Profile& f);    // f(s) * (omega ^ e1)
TangentialProfile profile_merid_e1(const Profile& f);  // f(s) * (omega ^ (omega ^ e1))
TangentialProfile profile_rot_e2(const Profile& f);    // f(s) * (omega ^ e2)

// Axially singular profile f(s) * (omega ^ e3)/(omega1^2 + omega2^2),
// representative of spherical-coordinate constructions that blow up on the
// x3 axis.  Only evaluated away from the axis.
TangentialProfile profile_georgiev(const Profile& f);

}  // namespace maxdis::nogo
