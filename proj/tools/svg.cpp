#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace tropk4::svg {

namespace {

constexpr double kUnit = 40.0;  // pixels per unit
constexpr double kPad = 2.0;    // units around the bounded part

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

struct Canvas {
    double x0, x1, y0, y1;  // world box
    std::ostringstream body;

    double px(double x) const { return (x - x0) * kUnit; }
    double py(double y) const { return (y1 - y) * kUnit; }  // y up

    void line(double ax, double ay, double bx, double by, double width, const char* color, bool dashed = false) {
        body << "  <line x1=\"" << num(px(ax)) << "\" y1=\"" << num(py(ay)) << "\" x2=\"" << num(px(bx))
             << "\" y2=\"" << num(py(by)) << "\" stroke=\"" << color << "\" stroke-width=\"" << num(width) << "\"";
        if (dashed) body << " stroke-dasharray=\"4 3\"";
        body << "/>\n";
    }
    void dot(double x, double y, double r, const char* fill, bool hollow = false) {
        body << "  <circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"" << num(r) << "\"";
        if (hollow) body << " fill=\"white\" stroke=\"" << fill << "\" stroke-width=\"1.500\"";
        else body << " fill=\"" << fill << "\"";
        body << "/>\n";
    }
    void text(double x, double y, const std::string& s, int size, const char* color, double dx = 0, double dy = 0) {
        body << "  <text x=\"" << num(px(x) + dx) << "\" y=\"" << num(py(y) + dy) << "\" font-family=\"sans-serif\""
             << " font-size=\"" << size << "\" fill=\"" << color << "\">" << escape(s) << "</text>\n";
    }
    void polygon(const std::vector<std::pair<double, double>>& pts, const char* fill) {
        body << "  <polygon points=\"";
        for (std::size_t k = 0; k < pts.size(); ++k)
            body << (k ? " " : "") << num(px(pts[k].first)) << "," << num(py(pts[k].second));
        body << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"1.000\"/>\n";
    }

    std::string finish(const std::string& title) const {
        std::ostringstream out;
        double w = (x1 - x0) * kUnit, h = (y1 - y0) * kUnit;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
            << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
        if (!title.empty()) out << "  <title>" << escape(title) << "</title>\n";
        out << "  <rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h) << "\" fill=\"white\"/>\n";
        out << body.str() << "</svg>\n";
        return out.str();
    }
};

// Largest s with p + s*d inside the box.
double clip(double bx, double by, double dx, double dy, const Canvas& c) {
    double s = 1e300;
    if (dx > 0) s = std::min(s, (c.x1 - bx) / dx);
    if (dx < 0) s = std::min(s, (c.x0 - bx) / dx);
    if (dy > 0) s = std::min(s, (c.y1 - by) / dy);
    if (dy < 0) s = std::min(s, (c.y0 - by) / dy);
    return std::max(s, 0.0);
}

}  // namespace

std::string curve(const TropicalCurve2D& c, const std::vector<Marker>& markers, const std::string& title) {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool first = true;
    auto grow = [&](const Pt& p) {
        double x = p.x.get_d(), y = p.y.get_d();
        if (first) {
            x0 = x1 = x;
            y0 = y1 = y;
            first = false;
        }
        x0 = std::min(x0, x), x1 = std::max(x1, x);
        y0 = std::min(y0, y), y1 = std::max(y1, y);
    };
    for (const auto& v : c.vertices) grow(v);
    for (const auto& m : markers) grow(m.at);
    Canvas cv{x0 - kPad, x1 + kPad, y0 - kPad, y1 + kPad, {}};

    for (const auto& e : c.edges) {
        const auto &a = c.vertices[e.u], &b = c.vertices[e.v];
        cv.line(a.x.get_d(), a.y.get_d(), b.x.get_d(), b.y.get_d(), e.mult > 1 ? 2.5 : 1.5, "black");
        if (e.mult > 1)
            cv.text((a.x.get_d() + b.x.get_d()) / 2, (a.y.get_d() + b.y.get_d()) / 2, std::to_string(e.mult), 11,
                    "#555", 3, -3);
    }
    for (const auto& r : c.rays) {
        const auto& b = c.vertices[r.base];
        double bx = b.x.get_d(), by = b.y.get_d();
        double s = clip(bx, by, r.dx, r.dy, cv);
        cv.line(bx, by, bx + s * r.dx, by + s * r.dy, r.mult > 1 ? 2.5 : 1.5, "black");
        if (r.mult > 1) {
            double t = std::min(s, 1.0);
            cv.text(bx + t * r.dx, by + t * r.dy, std::to_string(r.mult), 11, "#555", 3, -3);
        }
    }
    for (const auto& v : c.vertices) cv.dot(v.x.get_d(), v.y.get_d(), 1.8, "black");
    for (const auto& m : markers) {
        cv.dot(m.at.x.get_d(), m.at.y.get_d(), 5, "#c0392b", m.hollow);
        if (!m.label.empty()) cv.text(m.at.x.get_d(), m.at.y.get_d(), m.label, 13, "#c0392b", 7, -7);
    }
    return cv.finish(title);
}

std::string subdivision(const NewtonSubdivision& s, const std::string& title) {
    Canvas cv{-1, 5, -1, 5, {}};
    for (const auto& cell : s.cells) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& v : cell.vertices) pts.push_back({double(v.first), double(v.second)});
        cv.polygon(pts, "#eef3fb");
    }
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; i + j <= 4; ++j) {
            auto it = s.heights.find({i, j});
            cv.dot(i, j, 3, it == s.heights.end() ? "#bbb" : "black");
            if (it != s.heights.end()) cv.text(i, j, to_string(it->second), 11, "#1a5276", 4, -5);
        }
    return cv.finish(title);
}

std::vector<Marker> center_markers(const std::vector<Pt>& centers) {
    std::map<Pt, int> count;
    for (const auto& p : centers) ++count[p];
    std::vector<Marker> out;
    for (const auto& [p, k] : count) out.push_back({p, std::to_string(k), false});
    return out;
}

std::vector<Marker> center_markers(const TropicalBitangentSet& s) {
    std::vector<Marker> out;
    for (const auto& e : s.entries) {
        bool ray = e.validity == BitangentCenter::OnRay;
        out.push_back({e.center, e.name + " " + std::to_string(e.count) + (ray ? " (ray)" : ""), ray});
    }
    std::stable_sort(out.begin(), out.end(), [](const Marker& a, const Marker& b) { return a.at < b.at; });
    return out;
}

}  // namespace tropk4::svg
