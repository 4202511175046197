#include "maxdis/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace maxdis::cli {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kMarginL = 70, kMarginR = 20, kMarginT = 30, kMarginB = 50;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

}  // namespace

std::string render_energy_svg(const quadrature::EnergyTrace& trace) {
    if (trace.times.size() < 2 || trace.times.size() != trace.energy.size()) {
        throw std::invalid_argument("render_energy_svg: need a trace with >= 2 points");
    }
    double emax = 0.0;
    for (double e : trace.energy) emax = std::max(emax, e);
    if (emax <= 0.0) emax = 1.0;
    const double floor_v = emax * 1e-16;  // plot floor for vanished energies
    auto logE = [&](double e) { return std::log10(std::max(e, floor_v)); };

    const double t0 = trace.times.front(), t1 = trace.times.back();
    double ylo = logE(emax), yhi = logE(emax);
    for (double e : trace.energy) {
        ylo = std::min(ylo, logE(e));
        yhi = std::max(yhi, logE(e));
    }
    if (yhi - ylo < 1e-12) { yhi += 0.5; ylo -= 0.5; }

    auto px = [&](double t) {
        return kMarginL + (t - t0) / (t1 - t0) * (kWidth - kMarginL - kMarginR);
    };
    auto py = [&](double ylog) {
        return kHeight - kMarginB - (ylog - ylo) / (yhi - ylo) * (kHeight - kMarginT - kMarginB);
    };

    // fitted slope of log10(energy) over the positive-energy window
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < trace.times.size(); ++i) {
        if (!(trace.energy[i] > floor_v)) continue;
        const double x = trace.times[i], y = std::log(trace.energy[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    const double slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
        << kWidth - kMarginL - kMarginR << "\" height=\"" << kHeight - kMarginT - kMarginB
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double t = t0 + (t1 - t0) * i / 4.0;
        const double y = ylo + (yhi - ylo) * i / 4.0;
        svg << "<text x=\"" << px(t) << "\" y=\"" << kHeight - kMarginB + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt(t) << "</text>\n"
            << "<text x=\"" << kMarginL - 8 << "\" y=\"" << py(y) + 4
            << "\" font-size=\"12\" text-anchor=\"end\">1e" << fmt(y) << "</text>\n";
    }
    svg << "<text x=\"" << (kWidth / 2) << "\" y=\"" << kHeight - 12
        << "\" font-size=\"13\" text-anchor=\"middle\">t</text>\n"
        << "<text x=\"16\" y=\"" << (kHeight / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (kHeight / 2) << ")\">energy (log scale)</text>\n";

    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < trace.times.size(); ++i) {
        svg << px(trace.times[i]) << "," << py(logE(trace.energy[i])) << " ";
    }
    svg << "\"/>\n";

    svg << "<text x=\"" << kMarginL + 10 << "\" y=\"" << kMarginT + 18
        << "\" font-size=\"13\">fitted d(ln E)/dt = " << fmt(slope) << "</text>\n"
        << "</svg>\n";
    return svg.str();
}

void emit_svg(const quadrature::EnergyTrace& trace, const std::string& path) {
    const std::string body = render_energy_svg(trace);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_svg: cannot open " + path);
    out << body;
}

}  // namespace maxdis::cli
