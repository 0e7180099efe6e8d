#include "rbcom/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rbcom/csv.hpp"

namespace rbcom {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string num(double v) { return format_number(v, 6); }

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi <= lo) {
            const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
            lo -= pad;
            hi += pad;
        }
    }
};

}  // namespace

std::string Plot::to_svg(int width, int height) const {
    const double left = 80, right = 160, top = 40, bottom = 60;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    const auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
    const auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!log_y || y > 0.0);
    };

    Range rx, ry;
    for (const auto& s : series)
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
            if (usable(s.x[i], s.y[i])) {
                rx.add(s.x[i]);
                ry.add(ty(s.y[i]));
            }
    rx.finish();
    ry.finish();

    const auto px = [&](double x) { return left + (x - rx.lo) / (rx.hi - rx.lo) * pw; };
    const auto py = [&](double y) { return top + ph - (ty(y) - ry.lo) / (ry.hi - ry.lo) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << xml_escape(title) << "</text>\n";
    o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / 4.0;
        const double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
        const double gx = left + pw * i / 4.0;
        const double gy = top + ph - ph * i / 4.0;
        o << "<text x=\"" << num(gx) << "\" y=\"" << num(top + ph + 18)
          << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
        o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(gy + 4) << "\" text-anchor=\"end\">"
          << (log_y ? "1e" + format_number(fy, 3) : num(fy)) << "</text>\n";
    }
    o << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << height - 16
      << "\" text-anchor=\"middle\">" << xml_escape(x_label) << "</text>\n";
    o << "<text transform=\"translate(18," << num(top + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << xml_escape(y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % std::size(kPalette)];
        std::ostringstream pts;
        bool any = false;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            pts << (any ? " " : "") << num(px(s.x[i])) << ',' << num(py(s.y[i]));
            any = true;
            if (s.markers)
                o << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i]))
                  << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        if (any)
            o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
              << pts.str() << "\"/>\n";
        const double ly = top + 14 + 18.0 * static_cast<double>(si);
        o << "<line x1=\"" << num(left + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\""
          << num(left + pw + 32) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << num(left + pw + 38) << "\" y=\"" << num(ly + 4) << "\">"
          << xml_escape(s.name) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace rbcom
