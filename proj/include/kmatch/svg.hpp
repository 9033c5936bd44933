#pragma once

// SVG 1.1 rendering of an instance: points, matching edges (red), the
// global maximum matching (blue), diametral disks and their enlargements,
// and for certificates the witness point with its star (black).

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "kmatch/certificates.hpp"
#include "kmatch/matching.hpp"

namespace kmatch {

struct SvgOptions {
    double width = 600.0;
    double margin = 30.0;
    double disk_opacity = 0.15;
    bool draw_disks = true;
    bool draw_enlarged = true;
};

namespace detail {

class SvgCanvas {
public:
    SvgCanvas(double min_x, double min_y, double max_x, double max_y, const SvgOptions& opt)
        : min_x_(min_x), max_y_(max_y), opt_(opt) {
        const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
        scale_ = (opt.width - 2.0 * opt.margin) / span;
        height_ = 2.0 * opt.margin + (max_y - min_y) * scale_;
        out_.precision(6);
        out_ << std::fixed;
    }

    double sx(double x) const { return opt_.margin + (x - min_x_) * scale_; }
    // SVG y grows downward.
    double sy(double y) const { return opt_.margin + (max_y_ - y) * scale_; }
    double len(double d) const { return d * scale_; }

    std::ostringstream& body() { return out_; }

    std::string finish() const {
        std::ostringstream doc;
        doc.precision(6);
        doc << std::fixed;
        doc << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt_.width << "\" height=\""
            << height_ << "\" viewBox=\"0 0 " << opt_.width << ' ' << height_ << "\">\n"
            << "<rect x=\"0\" y=\"0\" width=\"" << opt_.width << "\" height=\"" << height_
            << "\" fill=\"white\"/>\n"
            << out_.str() << "</svg>\n";
        return doc.str();
    }

    void line(Point a, Point b, const char* color, double stroke_width, const char* extra = "") {
        out_ << "<line x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\"" << sx(b.x) << "\" y2=\"" << sy(b.y)
             << "\" stroke=\"" << color << "\" stroke-width=\"" << stroke_width << "\"" << extra << "/>\n";
    }

    void circle(Point c, double r_screen, const char* fill, const char* stroke, double fill_opacity) {
        out_ << "<circle cx=\"" << sx(c.x) << "\" cy=\"" << sy(c.y) << "\" r=\"" << r_screen << "\" fill=\"" << fill
             << "\" fill-opacity=\"" << fill_opacity << "\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
    }

    void label(Point p, const std::string& text) {
        out_ << "<text x=\"" << sx(p.x) + 5.0 << "\" y=\"" << sy(p.y) - 5.0
             << "\" font-family=\"sans-serif\" font-size=\"11\">" << text << "</text>\n";
    }

private:
    double min_x_;
    double max_y_;
    double scale_ = 1.0;
    double height_ = 0.0;
    SvgOptions opt_;
    std::ostringstream out_;
};

} // namespace detail

/// Renders the instance; every optional layer is drawn only when provided.
inline std::string render_svg(const PointSet& ps, const std::optional<Matching>& matching,
                              const std::optional<Certificate>& cert = std::nullopt, const SvgOptions& opt = {}) {
    double min_x = 0.0, min_y = 0.0, max_x = 1.0, max_y = 1.0;
    if (!ps.empty()) {
        min_x = max_x = ps[0].x;
        min_y = max_y = ps[0].y;
    }
    auto grow = [&](Point p, double r) {
        min_x = std::min(min_x, p.x - r);
        max_x = std::max(max_x, p.x + r);
        min_y = std::min(min_y, p.y - r);
        max_y = std::max(max_y, p.y + r);
    };
    for (const Point& p : ps) grow(p, 0.0);

    const double enlarged_scale =
        cert && cert->kind == CertificateKind::local2 ? constants::enlargement : 1.0;
    std::optional<DiskFamily> disks;
    if (matching && !matching->empty() && opt.draw_disks) {
        disks = diametral_family(*matching, ps, 1.0);
        for (const Disk& d : disks->base) grow(d.center, d.radius * (opt.draw_enlarged ? enlarged_scale : 1.0));
    }

    detail::SvgCanvas canvas(min_x, min_y, max_x, max_y, opt);
    if (disks) {
        for (const Disk& d : disks->base) {
            canvas.circle(d.center, canvas.len(d.radius), "orange", "darkorange", opt.disk_opacity);
            if (opt.draw_enlarged && enlarged_scale != 1.0) {
                canvas.circle(d.center, canvas.len(d.radius * enlarged_scale), "none", "gray", 0.0);
            }
        }
    }
    if (cert && cert->oracle_matching) {
        for (const Edge& e : *cert->oracle_matching) canvas.line(ps[e.u], ps[e.v], "blue", 1.5, " stroke-dasharray=\"6,3\"");
    }
    if (cert) {
        for (const Point& p : ps) canvas.line(cert->witness.point, p, "black", 0.8);
    }
    if (matching) {
        for (const Edge& e : *matching) canvas.line(ps[e.u], ps[e.v], "red", 2.0);
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
        canvas.circle(ps[i], 3.0, "black", "black", 1.0);
        canvas.label(ps[i], std::to_string(i));
    }
    if (cert) canvas.circle(cert->witness.point, 4.0, "green", "darkgreen", 1.0);
    return canvas.finish();
}

} // namespace kmatch
