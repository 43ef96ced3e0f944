#include "trifit/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "trifit/errors.hpp"
#include "trifit/tolerances.hpp"

namespace trifit {

namespace {
constexpr double kPi = std::numbers::pi;
}

TriangleShape validate_shape(double angA, double angB, double angC) {
    if (!std::isfinite(angA) || !std::isfinite(angB) || !std::isfinite(angC))
        throw ShapeInvalid("shape angles must be finite");
    if (angA <= 0.0 || angB <= 0.0 || angC <= 0.0)
        throw ShapeInvalid("shape angles must be strictly positive");
    const double sum = angA + angB + angC;
    if (std::abs(sum - kPi) > tol::eps_shape) {
        std::ostringstream os;
        os << "shape angles must sum to pi (got " << sum << ")";
        throw ShapeInvalid(os.str());
    }
    if (angA >= kPi || angB >= kPi || angC >= kPi)
        throw ShapeInvalid("each shape angle must be below pi");
    return {angA, angB, angC};
}

LineConfig validate_config(double alpha, double beta, double gamma) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
        throw ConfigInvalid("config angles must be finite");
    if (alpha <= 0.0 || beta <= 0.0 || gamma <= 0.0)
        throw ConfigInvalid("config angles must be strictly positive");
    if (alpha + beta + gamma >= 2.0 * kPi)
        throw ConfigInvalid("config violates alpha + beta + gamma < 2*pi");
    if (alpha >= beta + gamma)
        throw ConfigInvalid("config violates alpha < beta + gamma");
    if (beta >= gamma + alpha)
        throw ConfigInvalid("config violates beta < gamma + alpha");
    if (gamma >= alpha + beta)
        throw ConfigInvalid("config violates gamma < alpha + beta");
    return {alpha, beta, gamma};
}

LineThroughOrigin line_through_origin(const Vec3& dir) {
    const double n = norm(dir);
    if (n == 0.0 || !finite(dir)) throw ZeroVector("line direction must be a nonzero finite vector");
    Vec3 d = dir / n;
    // canonical sign: first nonzero component positive
    double lead = d.x != 0.0 ? d.x : (d.y != 0.0 ? d.y : d.z);
    if (lead < 0.0) d = -d;
    return {d};
}

std::array<Vec3, 3> canonical_ray_directions(const LineConfig& config) {
    const double ca = std::cos(config.alpha);
    const double cb = std::cos(config.beta);
    const double cg = std::cos(config.gamma);
    const double sg = std::sin(config.gamma);
    const double y3 = (ca - cb * cg) / sg;
    const double z3sq = 1.0 - cb * cb - y3 * y3;
    if (z3sq <= tol::eps_z3)
        throw DegenerateConfig("config is numerically coplanar (z3^2 <= 1e-14)");
    return {Vec3{1.0, 0.0, 0.0}, Vec3{cg, sg, 0.0}, Vec3{cb, y3, std::sqrt(z3sq)}};
}

LineTriple build_canonical_lines(const LineConfig& config) {
    const auto rays = canonical_ray_directions(config);
    return {line_through_origin(rays[0]), line_through_origin(rays[1]),
            line_through_origin(rays[2]), config};
}

double angle_between_directions(const Vec3& u, const Vec3& v) {
    if (norm2(u) == 0.0 || norm2(v) == 0.0)
        throw ZeroVector("cannot measure an angle against the zero vector");
    // cross-norm / dot formulation; arccos alone loses precision near 0 and pi
    return std::atan2(norm(cross(u, v)), dot(u, v));
}

double line_angle(const Vec3& u, const Vec3& v) {
    const double a = angle_between_directions(u, v);
    return std::min(a, kPi - a);
}

std::array<double, 3> interior_angles(const Vec3& A, const Vec3& B, const Vec3& C) {
    const Vec3 ab = B - A, ac = C - A, bc = C - B;
    const double scale = std::max({norm(ab), norm(ac), norm(bc)});
    if (scale == 0.0) throw DegenerateTriangle("triangle vertices coincide");
    if (norm(cross(ab, ac)) <= tol::eps_area * scale * scale)
        throw DegenerateTriangle("triangle vertices are collinear");
    const double atA = angle_between_directions(ab, ac);
    const double atB = angle_between_directions(A - B, C - B);
    const double atC = angle_between_directions(A - C, B - C);
    return {atA, atB, atC};
}

double distance_to_line(const Vec3& p, const Vec3& d) {
    return norm(p - dot(p, d) * d);
}

}  // namespace trifit
