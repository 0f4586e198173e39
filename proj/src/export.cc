#include "thermogap/export.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "thermogap/ento.h"

namespace thermogap {

namespace {

const char *flag(bool b) {
    return b ? "true" : "false";
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

struct Rgb {
    int r, g, b;
};

// Viridis anchors, interpolated linearly.
Rgb color_scale(double t) {
    static constexpr std::array<Rgb, 5> anchors{{
        {68, 1, 84},
        {59, 82, 139},
        {33, 145, 140},
        {94, 201, 98},
        {253, 231, 37},
    }};
    t = std::clamp(t, 0.0, 1.0) * (anchors.size() - 1);
    size_t lo = std::min(static_cast<size_t>(t), anchors.size() - 2);
    double f = t - static_cast<double>(lo);
    auto mix = [&](int a, int b) { return static_cast<int>(std::lround(a + f * (b - a))); };
    return {mix(anchors[lo].r, anchors[lo + 1].r), mix(anchors[lo].g, anchors[lo + 1].g),
            mix(anchors[lo].b, anchors[lo + 1].b)};
}

std::string hex(Rgb c) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

bool parse_flag(const std::string &s) {
    if (s == "true") {
        return true;
    }
    if (s == "false") {
        return false;
    }
    throw std::runtime_error("expected true/false, got '" + s + "'");
}

ConeCase parse_case(const std::string &s) {
    for (ConeCase c : {ConeCase::case1, ConeCase::case2, ConeCase::case3, ConeCase::infeasible}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    throw std::runtime_error("unknown case id '" + s + "'");
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string cone_csv(const std::vector<ConeRecord> &records) {
    std::string out = kConeCsvHeader;
    out += '\n';
    for (const auto &r : records) {
        out += format_double(r.q) + ',' + format_double(r.p0) + ',' + format_double(r.p1) + ',' +
               flag(r.feasible()) + ',' + format_double(r.rho10_max) + ',' + to_string(r.case_id) + ',' +
               format_double(r.g00_star) + ',' + format_double(r.g11_star) + '\n';
    }
    return out;
}

std::string gap_csv(const std::vector<GapRecord> &records) {
    std::string out = kGapCsvHeader;
    out += '\n';
    for (const auto &r : records) {
        for (double v : {r.q, r.epsilon, r.delta, r.ento_max, r.to_max, r.delta10, r.bound_main, r.bound_refined,
                         r.f_q}) {
            out += format_double(v);
            out += ',';
        }
        out += flag(r.certified);
        out += '\n';
    }
    return out;
}

std::string simulate_csv(const std::vector<GapSample> &samples) {
    std::string out = kSimulateCsvHeader;
    out += '\n';
    for (const auto &s : samples) {
        const Matrix3r &g = s.transition;
        out += std::to_string(s.index);
        for (double v : {g(0, 0), g(1, 1), g(0, 1), g(0, 2), g(1, 0), g(1, 2), g(2, 0), g(2, 1), g(2, 2), s.rho10,
                         s.bound_eq7}) {
            out += ',';
            out += format_double(v);
        }
        out += ',';
        out += flag(s.in_window);
        out += '\n';
    }
    return out;
}

std::vector<ConeRecord> parse_cone_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kConeCsvHeader) {
        throw std::runtime_error("cone CSV header mismatch");
    }
    std::vector<ConeRecord> out;
    while (std::getline(in, line)) {
        auto cells = split(line, ',');
        if (cells.size() != 8) {
            throw std::runtime_error("cone CSV row has " + std::to_string(cells.size()) + " fields");
        }
        ConeRecord r;
        r.q = std::stod(cells[0]);
        r.p0 = std::stod(cells[1]);
        r.p1 = std::stod(cells[2]);
        bool feasible = parse_flag(cells[3]);
        r.rho10_max = std::stod(cells[4]);
        r.case_id = parse_case(cells[5]);
        r.g00_star = std::stod(cells[6]);
        r.g11_star = std::stod(cells[7]);
        if (feasible != r.feasible()) {
            throw std::runtime_error("feasible flag disagrees with case id");
        }
        out.push_back(r);
    }
    return out;
}

std::string cone_svg(const std::vector<ConeRecord> &records, double q, int grid) {
    constexpr double margin = 60;
    constexpr double side = 520;
    constexpr double bar_x = margin + side + 30;
    constexpr double bar_w = 20;
    const double width = bar_x + bar_w + 100;
    const double height = margin + side + 60;
    double cell = side / (grid - 1);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto &r : records) {
        if (r.feasible()) {
            lo = std::min(lo, r.rho10_max);
            hi = std::max(hi, r.rho10_max);
        }
    }
    bool any = lo <= hi;
    double span = any && hi > lo ? hi - lo : 1.0;
    auto px = [&](double p0) { return margin + p0 * side; };
    auto py = [&](double p1) { return margin + (1 - p1) * side; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\""
        << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(width, 0) << ' ' << fixed(height, 0) << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << fixed(width, 0) << "\" height=\"" << fixed(height, 0)
        << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fixed(margin + side / 2, 1) << "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">max |rho10| over the EnTO cone, q = " << format_double(q) << "</text>\n";

    svg << "<g shape-rendering=\"crispEdges\">\n";
    for (const auto &r : records) {
        if (!r.feasible()) {
            continue;
        }
        Rgb c = color_scale((r.rho10_max - lo) / span);
        svg << "<rect x=\"" << fixed(px(r.p0) - cell / 2, 3) << "\" y=\"" << fixed(py(r.p1) - cell / 2, 3)
            << "\" width=\"" << fixed(cell, 3) << "\" height=\"" << fixed(cell, 3) << "\" fill=\"" << hex(c)
            << "\"/>\n";
    }
    svg << "</g>\n";

    // Boundary of the reachable populations: vertices ordered by angle about their centroid.
    std::vector<Vector3r> verts = thermal_polytope_vertices(q, Vector3r(0.5, 0.5, 0));
    std::vector<std::pair<double, double>> pts;
    for (const auto &v : verts) {
        bool dup = std::any_of(pts.begin(), pts.end(), [&](const auto &p) {
            return std::abs(p.first - v[0]) < 1e-12 && std::abs(p.second - v[1]) < 1e-12;
        });
        if (!dup) {
            pts.emplace_back(v[0], v[1]);
        }
    }
    double cx = 0;
    double cy = 0;
    for (auto [x, y] : pts) {
        cx += x / pts.size();
        cy += y / pts.size();
    }
    std::sort(pts.begin(), pts.end(), [&](const auto &a, const auto &b) {
        return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
    });
    svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i <= pts.size(); i++) {
        auto [x, y] = pts[i % pts.size()];
        svg << (i ? " " : "") << fixed(px(x), 3) << ',' << fixed(py(y), 3);
    }
    svg << "\"/>\n";

    // Axes.
    svg << "<rect x=\"" << fixed(margin, 0) << "\" y=\"" << fixed(margin, 0) << "\" width=\"" << fixed(side, 0)
        << "\" height=\"" << fixed(side, 0) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        svg << "<text x=\"" << fixed(px(t), 1) << "\" y=\"" << fixed(margin + side + 18, 1)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << fixed(t, 2) << "</text>\n";
        svg << "<text x=\"" << fixed(margin - 8, 1) << "\" y=\"" << fixed(py(t) + 4, 1)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fixed(t, 2) << "</text>\n";
    }
    svg << "<text x=\"" << fixed(margin + side / 2, 1) << "\" y=\"" << fixed(margin + side + 40, 1)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">p0</text>\n";
    svg << "<text x=\"" << fixed(margin - 46, 1) << "\" y=\"" << fixed(margin + side / 2 - 14, 1)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">p1</text>\n";

    // Color bar, top = max.
    constexpr int steps = 64;
    for (int s = 0; s < steps; s++) {
        double t = 1.0 - (s + 0.5) / steps;
        svg << "<rect x=\"" << fixed(bar_x, 1) << "\" y=\"" << fixed(margin + s * side / steps, 3) << "\" width=\""
            << fixed(bar_w, 1) << "\" height=\"" << fixed(side / steps + 0.5, 3) << "\" fill=\""
            << hex(color_scale(t)) << "\"/>\n";
    }
    svg << "<text x=\"" << fixed(bar_x + bar_w + 6, 1) << "\" y=\"" << fixed(margin + 10, 1)
        << "\" font-family=\"sans-serif\" font-size=\"12\">max " << (any ? fixed(hi, 4) : "n/a") << "</text>\n";
    svg << "<text x=\"" << fixed(bar_x + bar_w + 6, 1) << "\" y=\"" << fixed(margin + side, 1)
        << "\" font-family=\"sans-serif\" font-size=\"12\">min " << (any ? fixed(lo, 4) : "n/a") << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace thermogap
