#pragma once

#include <string>

#include "maxdis/quadrature.hpp"

namespace maxdis::cli {

// Self-contained SVG log-energy plot with the fitted slope annotated.
// Energies at or below the plot floor are clamped so disappearing traces
// render as a curve hitting the floor.  Throws std::invalid_argument for
// traces with fewer than 2 points.
std::string render_energy_svg(const quadrature::EnergyTrace& trace);

void emit_svg(const quadrature::EnergyTrace& trace, const std::string& path);

}  // namespace maxdis::cli
