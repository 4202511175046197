#include "maxdis/fields.hpp"

#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace maxdis {

namespace {

void check_point(const SpacetimePoint& pt) {
    if (!(norm(pt.x) >= 1e-12)) {
        throw std::invalid_argument("field evaluation requires |x| >= 1e-12");
    }
}

}  // namespace

AngularBasis angular_basis(const Vec3& omega) {
    if (std::abs(norm(omega) - 1.0) >= 1e-10) {
        throw std::invalid_argument("angular_basis: omega must be a unit vector");
    }
    AngularBasis ab;
    ab.Phi1 = {0.0, omega.z, -omega.y};
    ab.Phi2 = {omega.x * omega.x - 1.0, omega.x * omega.y, omega.x * omega.z};
    return ab;
}

Vec3 eval_E(const Profile& p, const SpacetimePoint& pt) {
    check_point(pt);
    const double r = norm(pt.x);
    const double u = 1.0 / r;
    const double s = r + pt.t;
    const double h1 = p.deriv(s, 1);
    const double h2 = p.deriv(s, 2);
    // Horner in 1/|x| with the common 1/|x| pulled out.
    const double coef = u * (h2 - u * h1);
    const Vec3 omega = u * pt.x;
    return coef * Vec3{0.0, omega.z, -omega.y};
}

Vec3 eval_B(const Profile& p, const SpacetimePoint& pt) {
    check_point(pt);
    const double r = norm(pt.x);
    const double u = 1.0 / r;
    const double s = r + pt.t;
    const double h0 = p.deriv(s, 0);
    const double h1 = p.deriv(s, 1);
    const double h2 = p.deriv(s, 2);
    const double c2 = -u * (h2 - 3.0 * u * (h1 - u * h0));  // Phi2 coefficient
    const double c3 = 2.0 * u * u * (h1 - u * h0);          // Phi3 coefficient
    const Vec3 omega = u * pt.x;
    const Vec3 phi2{omega.x * omega.x - 1.0, omega.x * omega.y, omega.x * omega.z};
    return c2 * phi2 + Vec3{c3, 0.0, 0.0};
}

FieldSample eval_pair(const Profile& p, const SpacetimePoint& pt) {
    return {eval_E(p, pt), eval_B(p, pt)};
}

double spherical_wave(const Profile& f, const SpacetimePoint& pt, bool incoming) {
    check_point(pt);
    const double r = norm(pt.x);
    const double s = incoming ? r + pt.t : r - pt.t;
    return f.value(s) / r;
}

FieldSample modulated_wave(const TangentialProfile& profile_e, const SpacetimePoint& pt,
                           bool incoming) {
    check_point(pt);
    const double r = norm(pt.x);
    const Vec3 omega = pt.x / r;
    const double s = incoming ? r + pt.t : r - pt.t;
    const Vec3 e = profile_e(s, omega);
    if (std::abs(dot(e, omega)) >= 1e-10 * (1.0 + norm(e))) {
        throw std::invalid_argument("modulated_wave: profile output must be tangential");
    }
    return {e / r, cross(omega, e) / r};
}

int append_fields_csv(const Profile& p, std::istream& in, std::ostream& out) {
    std::string line;
    int rows = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        double v[4];
        bool numeric = true;
        for (int i = 0; i < 4; ++i) {
            if (!std::getline(ls, tok, ',')) { numeric = false; break; }
            try {
                size_t pos = 0;
                v[i] = std::stod(tok, &pos);
                while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
                if (pos != tok.size()) numeric = false;
            } catch (const std::exception&) {
                numeric = false;
            }
            if (!numeric) break;
        }
        if (!numeric) {
            if (first) {
                out << line << ",E1,E2,E3,B1,B2,B3\n";
                first = false;
                continue;
            }
            throw std::invalid_argument("append_fields_csv: malformed row: " + line);
        }
        first = false;
        const FieldSample fs = eval_pair(p, {v[0], {v[1], v[2], v[3]}});
        out.precision(17);
        out << line << ',' << fs.E.x << ',' << fs.E.y << ',' << fs.E.z << ',' << fs.B.x << ','
            << fs.B.y << ',' << fs.B.z << '\n';
        ++rows;
    }
    return rows;
}

}  // namespace maxdis
