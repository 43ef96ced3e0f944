#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "trifit/format.hpp"
#include "trifit/sullivan.hpp"

namespace trifit {

namespace {

struct Mapper {
    double minx, maxy, k;
    double sx(double x) const { return (x - minx) * k; }
    double sy(double y) const { return (maxy - y) * k; }  // y grows upward in world space
};

void emit_point(std::ostringstream& out, const Mapper& m, const Vec3& p,
                const std::string& label) {
    out << "  <circle cx=\"" << g17(m.sx(p.x)) << "\" cy=\"" << g17(m.sy(p.y))
        << "\" r=\"4\" fill=\"#202020\"/>\n";
    out << "  <text x=\"" << g17(m.sx(p.x) + 7.0) << "\" y=\"" << g17(m.sy(p.y) - 7.0)
        << "\" font-family=\"sans-serif\" font-size=\"15\">" << label << "</text>\n";
}

void emit_segment(std::ostringstream& out, const Mapper& m, const Vec3& p, const Vec3& q,
                  const char* color) {
    out << "  <line x1=\"" << g17(m.sx(p.x)) << "\" y1=\"" << g17(m.sy(p.y)) << "\" x2=\""
        << g17(m.sx(q.x)) << "\" y2=\"" << g17(m.sy(q.y)) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
}

}  // namespace

std::string construction_svg(const SullivanFrame& frame, double theta) {
    const PlanarPose pose = pose_at(frame, theta);
    const MovingCircle circle = circle_oab(frame, theta);
    const Vec3 origin{0.0, 0.0, 0.0};

    const std::vector<Vec3> pts = {origin, pose.A, pose.B, pose.Cp, pose.Cpp, pose.F};
    double minx = circle.center.x - circle.radius, maxx = circle.center.x + circle.radius;
    double miny = circle.center.y - circle.radius, maxy = circle.center.y + circle.radius;
    for (const Vec3& p : pts) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    const double extent = std::max(maxx - minx, maxy - miny);
    const double pad = 0.08 * extent;
    minx -= pad;
    maxx += pad;
    miny -= pad;
    maxy += pad;

    const double width = 800.0;
    const Mapper m{minx, maxy, width / (maxx - minx)};
    const double height = (maxy - miny) * m.k;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << g17(width) << " "
        << g17(height) << "\">\n";
    out << "  <circle cx=\"" << g17(m.sx(circle.center.x)) << "\" cy=\""
        << g17(m.sy(circle.center.y)) << "\" r=\"" << g17(circle.radius * m.k)
        << "\" fill=\"none\" stroke=\"#808080\" stroke-width=\"1.5\"/>\n";
    emit_segment(out, m, pose.A, pose.B, "#1f77b4");
    emit_segment(out, m, pose.Cp, pose.Cpp, "#d62728");
    emit_point(out, m, origin, "O");
    emit_point(out, m, pose.A, "A");
    emit_point(out, m, pose.B, "B");
    emit_point(out, m, pose.Cp, "C'");
    emit_point(out, m, pose.Cpp, "C''");
    emit_point(out, m, pose.F, "F");
    out << "</svg>\n";
    return out.str();
}

}  // namespace trifit
