#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "hfc/errors.hpp"
#include "hfc/svg.hpp"

namespace hfc {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
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

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;
    std::vector<double> ticks;  // in data units
};

Axis make_axis(double lo, double hi, bool log) {
    Axis ax;
    ax.log = log;
    if (log) {
        lo = std::max(lo, std::numeric_limits<double>::min());
        hi = std::max(hi, lo * 10.0);
        ax.lo = std::log10(lo);
        ax.hi = std::log10(hi);
        if (ax.hi - ax.lo < 1e-9) ax.hi = ax.lo + 1.0;
        const int d0 = static_cast<int>(std::ceil(ax.lo - 1e-9));
        const int d1 = static_cast<int>(std::floor(ax.hi + 1e-9));
        for (int d = d0; d <= d1; ++d) ax.ticks.push_back(std::pow(10.0, d));
        if (ax.ticks.empty()) ax.ticks = {std::pow(10.0, 0.5 * (ax.lo + ax.hi))};
        return ax;
    }
    if (hi - lo < 1e-12) {
        const double pad = (std::abs(hi) > 1e-12) ? std::abs(hi) * 0.1 : 1.0;
        lo -= pad;
        hi += pad;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
    ax.lo = std::floor(lo / step) * step;
    ax.hi = std::ceil(hi / step) * step;
    for (double v = ax.lo; v <= ax.hi + step * 1e-6; v += step) ax.ticks.push_back(v);
    return ax;
}

double project(const Axis& ax, double v) {
    const double x = ax.log ? std::log10(std::max(v, std::numeric_limits<double>::min())) : v;
    return (x - ax.lo) / (ax.hi - ax.lo);
}

}  // namespace

std::string render_svg(const SvgPlotSpec& spec) {
    const int W = spec.width, H = spec.height;
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    const double pw = W - ml - mr, ph = H - mt - mb;

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : spec.series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (spec.log_x && s.x[i] <= 0.0) continue;
            if (spec.log_y && s.y[i] <= 0.0) continue;
            x_lo = std::min(x_lo, s.x[i]);
            x_hi = std::max(x_hi, s.x[i]);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = spec.log_x ? 0.1 : 0.0;
        x_hi = spec.log_x ? 10.0 : 1.0;
        y_lo = spec.log_y ? 0.1 : 0.0;
        y_hi = spec.log_y ? 10.0 : 1.0;
    }
    const Axis xs = make_axis(x_lo, x_hi, spec.log_x);
    const Axis ys = make_axis(y_lo, y_hi, spec.log_y);

    const auto px = [&](double v) { return ml + project(xs, v) * pw; };
    const auto py = [&](double v) { return mt + (1.0 - project(ys, v)) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
           "\" height=\"" + std::to_string(H) + "\" viewBox=\"0 0 " + std::to_string(W) +
           " " + std::to_string(H) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(W / 2.0) + "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\" font-weight=\"bold\">" +
           escape(spec.title) + "</text>\n";

    for (double tx : xs.ticks) {
        const double x = px(tx);
        out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(x) +
               "\" y2=\"" + fmt(mt + ph) + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(mt + ph + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               fmt(tx) + "</text>\n";
    }
    for (double ty : ys.ticks) {
        const double y = py(ty);
        out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(ml + pw) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + fmt(ml - 6) + "\" y=\"" + fmt(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               fmt(ty) + "</text>\n";
    }
    out += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(pw) +
           "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
    out += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(H - 12.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape(spec.x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + fmt(mt + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " +
           fmt(mt + ph / 2) + ")\">" + escape(spec.y_label) + "</text>\n";

    int ci = 0;
    for (const auto& s : spec.series) {
        const char* color = kPalette[ci % 8];
        std::string pts;
        bool open = false;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            const bool ok = std::isfinite(s.x[i]) && std::isfinite(s.y[i]) &&
                            (!spec.log_x || s.x[i] > 0.0) && (!spec.log_y || s.y[i] > 0.0);
            if (!ok) {
                if (open) {
                    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                           "\" stroke-width=\"1.6\" points=\"" + pts + "\"/>\n";
                    pts.clear();
                    open = false;
                }
                continue;
            }
            pts += fmt(px(s.x[i])) + "," + fmt(py(s.y[i])) + " ";
            open = true;
        }
        if (open)
            out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"1.6\" points=\"" + pts + "\"/>\n";
        ++ci;
    }

    double ly = mt + 14;
    ci = 0;
    for (const auto& s : spec.series) {
        const char* color = kPalette[ci % 8];
        out += "<line x1=\"" + fmt(ml + pw - 150) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" +
               fmt(ml + pw - 126) + "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fmt(ml + pw - 120) + "\" y=\"" + fmt(ly) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(s.label) +
               "</text>\n";
        ly += 16;
        ++ci;
    }
    out += "</svg>\n";
    return out;
}

void write_svg(const SvgPlotSpec& spec, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("svg: cannot open '" + path + "' for writing");
    const std::string body = render_svg(spec);
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!f) throw Error("svg: write failed for '" + path + "'");
}

}  // namespace hfc
