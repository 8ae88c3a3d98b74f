#include "areatrap/errors.hpp"
#include "areatrap/harness.hpp"
#include "areatrap/limitshape.hpp"
#include "areatrap/textio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <vector>

namespace areatrap::harness {

namespace {

constexpr double kWidth = 720, kHeight = 520;
constexpr double kLeft = 70, kRight = 30, kTop = 30, kBottom = 55;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                "#9467bd", "#ff7f0e", "#8c564b"};

std::string fixed(double v, int precision) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    std::vector<double> ticks;
};

Axis make_axis(double lo, double hi) {
    if (hi <= lo) hi = lo + 1.0;
    const double span = hi - lo;
    const double raw = span / 4.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0})
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    Axis axis;
    axis.lo = std::floor(lo / step) * step;
    axis.hi = std::ceil(hi / step) * step;
    for (double t = axis.lo; t <= axis.hi + 0.5 * step; t += step) axis.ticks.push_back(t);
    return axis;
}

class SvgCanvas {
public:
    SvgCanvas() {
        body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) +
                 "\" height=\"" + fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) +
                 " " + fixed(kHeight, 0) + "\">\n";
        body_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    void set_axes(const Axis& x, const Axis& y, const std::string& xlabel,
                  const std::string& ylabel) {
        x_ = x;
        y_ = y;
        body_ += "<g stroke=\"#444\" stroke-width=\"1\">\n";
        line(kLeft, kHeight - kBottom, kWidth - kRight, kHeight - kBottom);
        line(kLeft, kTop, kLeft, kHeight - kBottom);
        body_ += "</g>\n";
        for (double t : x.ticks) {
            const double px = sx(t);
            body_ += "<line x1=\"" + fixed(px, 1) + "\" y1=\"" + fixed(kHeight - kBottom, 1) +
                     "\" x2=\"" + fixed(px, 1) + "\" y2=\"" + fixed(kHeight - kBottom + 5, 1) +
                     "\" stroke=\"#444\"/>\n";
            text(px, kHeight - kBottom + 20, textio::format_double(t), "middle", "#333", 12);
        }
        for (double t : y.ticks) {
            const double py = sy(t);
            body_ += "<line x1=\"" + fixed(kLeft - 5, 1) + "\" y1=\"" + fixed(py, 1) +
                     "\" x2=\"" + fixed(kLeft, 1) + "\" y2=\"" + fixed(py, 1) +
                     "\" stroke=\"#444\"/>\n";
            text(kLeft - 8, py + 4, textio::format_double(t), "end", "#333", 12);
        }
        text((kLeft + kWidth - kRight) / 2, kHeight - 12, xlabel, "middle", "#111", 13);
        body_ += "<text x=\"18\" y=\"" + fixed((kTop + kHeight - kBottom) / 2, 1) +
                 "\" text-anchor=\"middle\" fill=\"#111\" font-size=\"13\" font-family=\"sans-serif\" transform=\"rotate(-90 18 " +
                 fixed((kTop + kHeight - kBottom) / 2, 1) + ")\">" + ylabel + "</text>\n";
    }

    double sx(double x) const {
        return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight);
    }
    double sy(double y) const {
        return kHeight - kBottom - (y - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom);
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
        body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts)
            body_ += fixed(sx(x), 2) + "," + fixed(sy(y), 2) + " ";
        body_ += "\"/>\n";
    }

    void dot(double x, double y, const std::string& color) {
        body_ += "<circle cx=\"" + fixed(sx(x), 2) + "\" cy=\"" + fixed(sy(y), 2) +
                 "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }

    void text(double px, double py, const std::string& s, const std::string& anchor,
              const std::string& color, int size) {
        body_ += "<text x=\"" + fixed(px, 1) + "\" y=\"" + fixed(py, 1) + "\" text-anchor=\"" +
                 anchor + "\" fill=\"" + color + "\" font-size=\"" + std::to_string(size) +
                 "\" font-family=\"sans-serif\">" + s + "</text>\n";
    }

    void line(double x1, double y1, double x2, double y2) {
        body_ += "<line x1=\"" + fixed(x1, 1) + "\" y1=\"" + fixed(y1, 1) + "\" x2=\"" +
                 fixed(x2, 1) + "\" y2=\"" + fixed(y2, 1) + "\"/>\n";
    }

    std::string finish() { return body_ + "</svg>\n"; }

private:
    Axis x_, y_;
    std::string body_;
};

std::string plot_shape_curves(const std::vector<double>& alphas) {
    SvgCanvas svg;
    Axis unit;
    unit.lo = 0.0;
    unit.hi = 1.0;
    unit.ticks = {0.0, 0.25, 0.5, 0.75, 1.0};
    svg.set_axes(unit, unit, "x", "psi(x)");

    std::vector<std::pair<double, double>> diag{{0.0, 0.0}, {1.0, 1.0}};
    svg.polyline(diag, "#bbbbbb");
    int color = 0;
    for (double alpha : alphas) {
        const limitshape::LimitShape shape = limitshape::make_shape(alpha);
        std::vector<std::pair<double, double>> pts;
        for (int k = 0; k <= 256; ++k) {
            const double x = static_cast<double>(k) / 256.0;
            pts.emplace_back(x, limitshape::psi(shape, x));
        }
        const std::string c = kPalette[color % 6];
        svg.polyline(pts, c);
        svg.text(kLeft + 12, kTop + 18 + 16 * color, "alpha=" + textio::format_double(alpha), "start",
                 c, 12);
        ++color;
    }
    return svg.finish();
}

std::string plot_curve_csv(const std::string& text, const std::string& origin) {
    std::vector<std::string_view> lines = textio::split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.size() < 2) fail(ErrorCode::empty_plot, origin + ": no curve rows to plot");
    std::vector<std::pair<double, double>> pts;
    double xmax = 0, ymax = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto cols = textio::split(lines[i], ',');
        if (cols.size() != 2)
            fail(ErrorCode::parse_error, origin + ":" + std::to_string(i + 1) + ": expected x,psi_x");
        const double x = textio::parse_double(cols[0], origin);
        const double y = textio::parse_double(cols[1], origin);
        pts.emplace_back(x, y);
        xmax = std::max(xmax, x);
        ymax = std::max(ymax, y);
    }
    SvgCanvas svg;
    svg.set_axes(make_axis(0.0, xmax), make_axis(0.0, ymax), "x", "psi(x)");
    svg.polyline(pts, kPalette[0]);
    return svg.finish();
}

std::string plot_exponents(const std::vector<TrialRecord>& records, const std::string& field) {
    const ExponentFit fit = fit_exponent(records, field);
    double xlo = fit.points.front().first, xhi = xlo, ylo = fit.points.front().second, yhi = ylo;
    for (const auto& [x, y] : fit.points) {
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
    }
    SvgCanvas svg;
    svg.set_axes(make_axis(xlo, xhi), make_axis(ylo, yhi), "log n", "log mean " + field);
    std::vector<std::pair<double, double>> lineseg{
        {xlo, fit.intercept + fit.slope * xlo}, {xhi, fit.intercept + fit.slope * xhi}};
    svg.polyline(lineseg, "#999999");
    for (const auto& [x, y] : fit.points) svg.dot(x, y, kPalette[0]);
    svg.text(kLeft + 12, kTop + 18, "slope=" + fixed(fit.slope, 3), "start", "#111", 13);
    return svg.finish();
}

std::string plot_lln(const std::vector<TrialRecord>& records) {
    std::map<double, std::map<double, std::pair<double, std::int64_t>>> by_alpha;
    for (const TrialRecord& r : records) {
        if (r.status != "solved") continue;
        auto& slot = by_alpha[r.alpha][r.n];
        slot.first += static_cast<double>(r.l_alpha);
        slot.second += 1;
    }
    if (by_alpha.empty()) fail(ErrorCode::empty_plot, "no solved rows to plot");

    double nlo = 1e300, nhi = 0, rlo = 1e300, rhi = 0;
    std::map<double, std::vector<std::pair<double, double>>> series;
    for (const auto& [alpha, per_n] : by_alpha) {
        const double w = limitshape::make_shape(alpha).w;
        for (const auto& [n, sum] : per_n) {
            const double ratio = sum.first / static_cast<double>(sum.second) / (2.0 * w * n);
            series[alpha].emplace_back(n, ratio);
            nlo = std::min(nlo, n);
            nhi = std::max(nhi, n);
            rlo = std::min(rlo, ratio);
            rhi = std::max(rhi, ratio);
        }
    }
    SvgCanvas svg;
    svg.set_axes(make_axis(nlo, nhi), make_axis(std::min(rlo, 0.8), std::max(rhi, 1.0)), "n",
                 "mean L_alpha / (2 w n)");
    int color = 0;
    for (const auto& [alpha, pts] : series) {
        const std::string c = kPalette[color % 6];
        svg.polyline(pts, c);
        for (const auto& [x, y] : pts) svg.dot(x, y, c);
        svg.text(kLeft + 12, kTop + 18 + 16 * color, "alpha=" + textio::format_double(alpha),
                 "start", c, 12);
        ++color;
    }
    return svg.finish();
}

} // namespace

std::string render_plot(const std::string& in_csv, const std::string& kind,
                        const std::string& field) {
    if (kind == "shape") {
        const std::string text = textio::read_file(in_csv);
        std::vector<std::string_view> lines = textio::split(text, '\n');
        if (!lines.empty() && lines.back().empty()) lines.pop_back();
        if (lines.empty()) fail(ErrorCode::empty_plot, in_csv + ": empty input");
        if (lines[0] == "x,psi_x") return plot_curve_csv(text, in_csv);
        const std::vector<TrialRecord> records = load_records(in_csv);
        if (records.empty()) fail(ErrorCode::empty_plot, in_csv + ": no rows to plot");
        std::set<double> alphas;
        for (const TrialRecord& r : records) alphas.insert(r.alpha);
        return plot_shape_curves(std::vector<double>(alphas.begin(), alphas.end()));
    }
    if (kind == "exponents") {
        const std::vector<TrialRecord> records = load_records(in_csv);
        if (records.empty()) fail(ErrorCode::empty_plot, in_csv + ": no rows to plot");
        return plot_exponents(records, field.empty() ? "mfl_interior" : field);
    }
    if (kind == "lln") {
        const std::vector<TrialRecord> records = load_records(in_csv);
        if (records.empty()) fail(ErrorCode::empty_plot, in_csv + ": no rows to plot");
        return plot_lln(records);
    }
    fail(ErrorCode::invalid_parameter, "plot kind must be shape, exponents or lln");
}

void emit_plot(const std::string& in_csv, const std::string& kind, const std::string& field,
               const std::string& out_svg) {
    textio::write_file(out_svg, render_plot(in_csv, kind, field));
}

} // namespace areatrap::harness
