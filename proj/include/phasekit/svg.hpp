#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "phasekit/io.hpp"

namespace phasekit {

inline constexpr const char* svg_generator = "phasekit 0.1.0";

/// Minimal deterministic SVG emitter: fixed canvas, explicit world-to-pixel
/// mapping, elements written in call order.
class SvgDocument {
public:
    SvgDocument(double xmin, double xmax, double ymin, double ymax, int px = 800, int py = 800)
        : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), w_(px), h_(py) {}

    std::array<double, 2> map(double x, double y) const {
        const double u = (x - xmin_) / (xmax_ - xmin_) * w_;
        const double v = h_ - (y - ymin_) / (ymax_ - ymin_) * h_;
        return {u, v};
    }

    void polyline(const std::vector<std::array<double, 2>>& pts, const std::string& stroke, double width = 1.0,
                  const std::string& dash = "") {
        if (pts.size() < 2) return;
        body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << format_g6(width) << "\"";
        if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
        body_ << " points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto p = map(pts[i][0], pts[i][1]);
            body_ << (i ? " " : "") << format_g6(p[0]) << ',' << format_g6(p[1]);
        }
        body_ << "\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0,
              const std::string& dash = "") {
        const auto a = map(x1, y1), b = map(x2, y2);
        body_ << "<line x1=\"" << format_g6(a[0]) << "\" y1=\"" << format_g6(a[1]) << "\" x2=\"" << format_g6(b[0])
              << "\" y2=\"" << format_g6(b[1]) << "\" stroke=\"" << stroke << "\" stroke-width=\""
              << format_g6(width) << "\"";
        if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
        body_ << "/>\n";
    }

    void circle(double x, double y, double radius_px, const std::string& fill, const std::string& stroke = "none") {
        const auto p = map(x, y);
        body_ << "<circle cx=\"" << format_g6(p[0]) << "\" cy=\"" << format_g6(p[1]) << "\" r=\""
              << format_g6(radius_px) << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
    }

    void square(double x, double y, double half_px, const std::string& fill, const std::string& stroke = "none") {
        const auto p = map(x, y);
        body_ << "<rect x=\"" << format_g6(p[0] - half_px) << "\" y=\"" << format_g6(p[1] - half_px)
              << "\" width=\"" << format_g6(2 * half_px) << "\" height=\"" << format_g6(2 * half_px)
              << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
    }

    void triangle(double x, double y, double half_px, const std::string& fill) {
        const auto p = map(x, y);
        body_ << "<path d=\"M " << format_g6(p[0]) << ' ' << format_g6(p[1] - half_px) << " L "
              << format_g6(p[0] - half_px) << ' ' << format_g6(p[1] + half_px) << " L "
              << format_g6(p[0] + half_px) << ' ' << format_g6(p[1] + half_px) << " Z\" fill=\"" << fill
              << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, int size_px = 12) {
        const auto p = map(x, y);
        body_ << "<text x=\"" << format_g6(p[0]) << "\" y=\"" << format_g6(p[1]) << "\" font-size=\"" << size_px
              << "\" font-family=\"monospace\">" << s << "</text>\n";
    }

    std::string str() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
            << "\" viewBox=\"0 0 " << w_ << ' ' << h_ << "\" data-generator=\"" << svg_generator << "\">\n"
            << "<rect width=\"" << w_ << "\" height=\"" << h_ << "\" fill=\"white\"/>\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

    void save(const std::filesystem::path& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("SvgDocument: cannot open " + path.string());
        out << str();
    }

private:
    double xmin_, xmax_, ymin_, ymax_;
    int w_, h_;
    std::ostringstream body_;
};

} // namespace phasekit
