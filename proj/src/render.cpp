#include "coamoeba/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "coamoeba/coamoeba.hpp"
#include "coamoeba/errors.hpp"

namespace coamoeba {

namespace {

constexpr int kMargin = 20;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

struct Canvas {
    int size;
    double x(const Rational& t) const { return kMargin + t.get_d() * size; }
    double y(const Rational& t) const { return kMargin + (1.0 - t.get_d()) * size; }
};

} // namespace

std::string render_svg(const NormalizedModel& model, const RenderOptions& options) {
    if (model.n != 2) throw UnsupportedDimension("render: only n = 2 can be drawn");
    const SmithDecomposition s = snf(model.A);
    const ZonotopeArrangement arr = arrangement(model, s);
    const Canvas cv{options.size};
    const int total = options.size + 2 * kMargin;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << total << "\" height=\"" << total
       << "\" viewBox=\"0 0 " << total << ' ' << total << "\">\n";
    os << "  <defs>\n";
    os << "    <clipPath id=\"torus\"><rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << options.size
       << "\" height=\"" << options.size << "\"/></clipPath>\n";
    if (options.show_conjugation)
        os << "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
              "markerHeight=\"6\" orient=\"auto-start-reverse\"><path d=\"M0,0 L10,5 L0,10 z\" "
              "fill=\"#d62728\"/></marker>\n";
    os << "  </defs>\n";
    os << "  <rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << options.size << "\" height=\""
       << options.size << "\" fill=\"#111111\"/>\n";

    const auto outline = zonogon_vertices(arr.shape);
    const std::size_t omega = arr.omega_size();
    os << "  <g clip-path=\"url(#torus)\" fill=\"#ffffff\" stroke=\"#555555\" stroke-width=\"1\">\n";
    for (std::size_t lin = 0; lin < omega; ++lin) {
        const OmegaIndex alpha = arr.omega_at(lin);
        const RationalVector c = arr.center(alpha);
        // Every lattice translate whose bounding box meets the unit square.
        long lo[2], hi[2];
        for (int i = 0; i < 2; ++i) {
            const double half = arr.extents[i].get_d() / 2;
            lo[i] = static_cast<long>(std::floor(-c[i].get_d() - half)) - 1;
            hi[i] = static_cast<long>(std::ceil(1 - c[i].get_d() + half)) + 1;
        }
        for (long kx = lo[0]; kx <= hi[0]; ++kx)
            for (long ky = lo[1]; ky <= hi[1]; ++ky) {
                const double cx = c[0].get_d() + kx, cy = c[1].get_d() + ky;
                const double hx = arr.extents[0].get_d() / 2, hy = arr.extents[1].get_d() / 2;
                if (cx + hx <= 0 || cx - hx >= 1 || cy + hy <= 0 || cy - hy >= 1) continue;
                os << "    <polygon points=\"";
                for (std::size_t v = 0; v < outline.size(); ++v) {
                    const Rational px = outline[v][0] + c[0] + kx;
                    const Rational py = outline[v][1] + c[1] + ky;
                    os << (v ? " " : "") << fmt(cv.x(px)) << ',' << fmt(cv.y(py));
                }
                os << "\"/>\n";
            }
    }
    os << "  </g>\n";

    if (options.show_conjugation) {
        const ConjugationAction act = conjugation_action(arr);
        os << "  <g stroke=\"#d62728\" stroke-width=\"1.5\" fill=\"none\">\n";
        for (std::size_t lin = 0; lin < omega; ++lin) {
            const auto c = arr.center(arr.omega_at(lin));
            if (act.image[lin] == lin) {
                os << "    <circle cx=\"" << fmt(cv.x(c[0])) << "\" cy=\"" << fmt(cv.y(c[1])) << "\" r=\"7\"/>\n";
                continue;
            }
            if (act.image[lin] < lin) continue;
            const auto d = arr.center(arr.omega_at(act.image[lin]));
            os << "    <line x1=\"" << fmt(cv.x(c[0])) << "\" y1=\"" << fmt(cv.y(c[1])) << "\" x2=\""
               << fmt(cv.x(d[0])) << "\" y2=\"" << fmt(cv.y(d[1]))
               << "\" marker-start=\"url(#arrow)\" marker-end=\"url(#arrow)\"/>\n";
        }
        os << "  </g>\n";
    }
    if (options.show_centers) {
        os << "  <g fill=\"#1f77b4\">\n";
        for (std::size_t lin = 0; lin < omega; ++lin) {
            const auto c = arr.center(arr.omega_at(lin));
            os << "    <circle cx=\"" << fmt(cv.x(c[0])) << "\" cy=\"" << fmt(cv.y(c[1])) << "\" r=\"3\"/>\n";
        }
        os << "  </g>\n";
    }
    os << "  <rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << options.size << "\" height=\""
       << options.size << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace coamoeba
