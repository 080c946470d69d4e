#include "scs/experiment/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace scs::experiment {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 8> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
constexpr std::array<const char*, 2> kDashes{"", "6,3"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string profile_svg(const profiles::Profile& profile, const std::string& title) {
  const double x_max = std::max(std::log2(profile.r_max), 1e-3);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double log2_tau) { return kLeft + plot_w * log2_tau / x_max; };
  auto py = [&](double rho) { return kTop + plot_h * (1.0 - rho); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";

  for (int i = 0; i <= 5; ++i) {
    const double rho = i / 5.0;
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(rho)) << "\" x2=\"" << num(kLeft + plot_w)
        << "\" y2=\"" << num(py(rho)) << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(rho) + 4) << "\" text-anchor=\"end\">"
        << num(rho) << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double t = x_max * i / 5.0;
    svg << "<text x=\"" << num(px(t)) << "\" y=\"" << num(kTop + plot_h + 18) << "\" text-anchor=\"middle\">"
        << num(t) << "</text>\n";
  }
  svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w) << "\" height=\""
      << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 10)
      << "\" text-anchor=\"middle\">log2(tau)</text>\n";
  svg << "<text x=\"16\" y=\"" << num(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(kTop + plot_h / 2) << ")\">rho(tau)</text>\n";

  for (std::size_t s = 0; s < profile.solvers.size(); ++s) {
    const char* color = kColors[s % kColors.size()];
    const char* dash = kDashes[(s / kColors.size()) % kDashes.size()];
    std::ostringstream points;
    double prev_rho = 0.0;
    for (std::size_t i = 0; i < profile.tau.size(); ++i) {
      const double x = px(std::log2(profile.tau[i]));
      const double rho = profile.rho[s][i];
      if (i > 0) points << num(x) << ',' << num(py(prev_rho)) << ' ';
      points << num(x) << ',' << num(py(rho)) << ' ';
      prev_rho = rho;
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (*dash) svg << " stroke-dasharray=\"" << dash << "\"";
    svg << " points=\"" << points.str() << "\"/>\n";

    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(s);
    const double lx = kLeft + plot_w + 12.0;
    svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24) << "\" y2=\"" << num(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"";
    if (*dash) svg << " stroke-dasharray=\"" << dash << "\"";
    svg << "/>\n<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4) << "\">" << escape(profile.solvers[s])
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace scs::experiment
