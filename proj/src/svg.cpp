#include "percept/svg.hpp"

#include <algorithm>
#include <cstdio>

#include "percept/errors.hpp"

namespace percept {

namespace {

constexpr int kMargin = 40;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape_text(const std::string& s) {
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

struct Range {
    double lo = 0.0, hi = 1.0;
    double place(double v, double pix_lo, double pix_hi) const {
        if (hi == lo) return (pix_lo + pix_hi) / 2.0;
        return pix_lo + (v - lo) / (hi - lo) * (pix_hi - pix_lo);
    }
};

Range fit(double lo, double hi) {
    if (hi <= lo) return {lo - 0.5, lo + 0.5};
    const double pad = (hi - lo) * 0.05;
    return {lo - pad, hi + pad};
}

std::string header(int width, int height) {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(width) + "\" height=\"" + std::to_string(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out;
}

std::string axes(int width, int height) {
    std::string out;
    out += "<line x1=\"" + std::to_string(kMargin) + "\" y1=\"" +
           std::to_string(height - kMargin) + "\" x2=\"" + std::to_string(width - kMargin) +
           "\" y2=\"" + std::to_string(height - kMargin) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + std::to_string(kMargin) + "\" y1=\"" + std::to_string(kMargin) +
           "\" x2=\"" + std::to_string(kMargin) + "\" y2=\"" +
           std::to_string(height - kMargin) + "\" stroke=\"black\"/>\n";
    return out;
}

}  // namespace

std::string scatter_svg(const std::vector<SvgPoint>& points, int width, int height) {
    if (points.empty()) throw DataError("scatter needs at least one point");
    double xlo = points[0].x, xhi = points[0].x, ylo = points[0].y, yhi = points[0].y;
    for (const auto& p : points) {
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
    }
    const Range rx = fit(xlo, xhi), ry = fit(ylo, yhi);
    std::string out = header(width, height) + axes(width, height);
    for (const auto& p : points) {
        const double px = rx.place(p.x, kMargin, width - kMargin);
        const double py = ry.place(p.y, height - kMargin, kMargin);  // y grows upward
        out += "<circle cx=\"" + num(px) + "\" cy=\"" + num(py) +
               "\" r=\"3\" fill=\"steelblue\"/>\n";
        if (!p.label.empty())
            out += "<text x=\"" + num(px + 5) + "\" y=\"" + num(py - 5) +
                   "\" font-size=\"10\">" + escape_text(p.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string profile_svg(const std::vector<double>& values, const std::vector<int>& peaks,
                        int width, int height) {
    if (values.size() < 2) throw DataError("profile needs at least two values");
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const Range rx{0.0, static_cast<double>(values.size() - 1)};
    const Range ry = fit(lo, hi);
    std::string out = header(width, height) + axes(width, height);
    std::string polyline = "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double px = rx.place(static_cast<double>(k), kMargin, width - kMargin);
        const double py = ry.place(values[k], height - kMargin, kMargin);
        if (k) polyline += ' ';
        polyline += num(px) + "," + num(py);
    }
    polyline += "\"/>\n";
    out += polyline;
    for (int k : peaks) {
        if (k < 0 || static_cast<std::size_t>(k) >= values.size()) continue;
        const double px = rx.place(static_cast<double>(k), kMargin, width - kMargin);
        const double py = ry.place(values[static_cast<std::size_t>(k)], height - kMargin, kMargin);
        out += "<circle cx=\"" + num(px) + "\" cy=\"" + num(py) +
               "\" r=\"4\" fill=\"none\" stroke=\"crimson\"/>\n";
        out += "<text x=\"" + num(px + 5) + "\" y=\"" + num(py - 8) +
               "\" font-size=\"10\">k=" + std::to_string(k) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace percept
