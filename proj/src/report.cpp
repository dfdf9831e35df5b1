#include "liegen/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace liegen {

namespace {

std::string format(const char* fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, value);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
    os.flush();
    if (!os) throw std::runtime_error("failed writing " + path.string());
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Tick positions covering [lo, hi] with a 1-2-5 step.
std::vector<double> ticks(double lo, double hi) {
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step)
        out.push_back(std::fabs(t) < 1e-12 * step ? 0.0 : t);
    return out;
}

}  // namespace

void write_csv(std::ostream& os, const Grid& grid, const GridFunction& g) {
    if (g.size() != grid.size()) throw std::invalid_argument("write_csv: size mismatch");
    os << "x,g\n";
    for (std::size_t j = 0; j < g.size(); ++j)
        os << format("%.12g", grid.node(j)) << ',' << format("%.12g", g[j]) << '\n';
}

void emit_csv(const std::filesystem::path& path, const Grid& grid, const GridFunction& g) {
    std::ofstream os = open_output(path);
    write_csv(os, grid, g);
    finish(os, path);
}

void write_series_csv(std::ostream& os, std::string_view x_name, std::string_view y_name,
                      const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("write_series_csv: size mismatch");
    os << x_name << ',' << y_name << '\n';
    for (std::size_t i = 0; i < x.size(); ++i) os << format("%.12g", x[i]) << ',' << format("%.12g", y[i]) << '\n';
}

std::string render_svg(const Grid& grid, const GridFunction& g, std::string_view title) {
    if (g.size() != grid.size()) throw std::invalid_argument("render_svg: size mismatch");
    constexpr double width = 800.0;
    constexpr double height = 500.0;
    constexpr double margin = 60.0;

    double y_lo = 0.0;
    double y_hi = 0.0;
    for (double value : g) {
        y_lo = std::min(y_lo, value);
        y_hi = std::max(y_hi, value);
    }
    if (y_hi - y_lo <= 0.0) {
        y_hi = y_lo + 1.0;
    } else {
        const double pad = 0.05 * (y_hi - y_lo);
        y_hi += pad;
        if (y_lo < 0.0) y_lo -= pad;
    }
    const double x_lo = 0.0;
    const double x_hi = grid.z();

    auto px = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2.0 * margin); };
    auto py = [&](double y) { return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2.0 * margin); };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
    s += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    s += "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">" +
         xml_escape(title) + "</text>\n";

    // Axes frame.
    s += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    s += "<line x1=\"" + format("%.2f", margin) + "\" y1=\"" + format("%.2f", height - margin) + "\" x2=\"" +
         format("%.2f", width - margin) + "\" y2=\"" + format("%.2f", height - margin) + "\"/>\n";
    s += "<line x1=\"" + format("%.2f", margin) + "\" y1=\"" + format("%.2f", margin) + "\" x2=\"" +
         format("%.2f", margin) + "\" y2=\"" + format("%.2f", height - margin) + "\"/>\n";
    s += "</g>\n";

    s += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (double t : ticks(x_lo, x_hi)) {
        const std::string x = format("%.2f", px(t));
        s += "<line x1=\"" + x + "\" y1=\"" + format("%.2f", height - margin) + "\" x2=\"" + x + "\" y2=\"" +
             format("%.2f", height - margin + 5.0) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + x + "\" y=\"" + format("%.2f", height - margin + 20.0) +
             "\" text-anchor=\"middle\">" + format("%.4g", t) + "</text>\n";
    }
    for (double t : ticks(y_lo, y_hi)) {
        const std::string y = format("%.2f", py(t));
        s += "<line x1=\"" + format("%.2f", margin - 5.0) + "\" y1=\"" + y + "\" x2=\"" + format("%.2f", margin) +
             "\" y2=\"" + y + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + format("%.2f", margin - 8.0) + "\" y=\"" + y +
             "\" text-anchor=\"end\" dominant-baseline=\"middle\">" + format("%.3g", t) + "</text>\n";
    }
    s += "</g>\n";

    s += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (j) s += ' ';
        s += format("%.2f", px(grid.node(j)));
        s += ',';
        s += format("%.2f", py(g[j]));
    }
    s += "\"/>\n</svg>\n";
    return s;
}

void emit_svg(const std::filesystem::path& path, const Grid& grid, const GridFunction& g, std::string_view title) {
    std::ofstream os = open_output(path);
    os << render_svg(grid, g, title);
    finish(os, path);
}

}  // namespace liegen
