#pragma once

#include <array>

#include "trifit/vec3.hpp"

// Foundational value types: triangle shapes, line-angle configurations, and
// the canonical placement of a line triple realizing a configuration.

namespace trifit {

// Prescribed interior angles, radians, each in (0, pi), summing to pi.
struct TriangleShape {
    double angA = 0.0, angB = 0.0, angC = 0.0;
};

// Prescribed angles between the three concurrent lines, radians. Strictly
// positive, sum below 2*pi, and each below the sum of the other two. These
// inequalities force each angle below pi.
struct LineConfig {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
};

// A line through the origin, stored as a unit direction with canonical sign
// (first nonzero component positive), so dir and -dir name the same line.
struct LineThroughOrigin {
    Vec3 dir;
};

struct LineTriple {
    LineThroughOrigin l1, l2, l3;
    LineConfig config;
};

TriangleShape validate_shape(double angA, double angB, double angC);
LineConfig validate_config(double alpha, double beta, double gamma);

// Canonicalize an arbitrary nonzero direction into a line.
LineThroughOrigin line_through_origin(const Vec3& dir);

// Canonical placement: l1 is the x-axis, l2 in the xy-plane at angle gamma
// from it, l3 off the plane with positive z component.
LineTriple build_canonical_lines(const LineConfig& config);

// Raw (un-canonicalized) ray representatives of the canonical placement:
// the positive x-axis, the ray at angle gamma, and the ray with z > 0.
std::array<Vec3, 3> canonical_ray_directions(const LineConfig& config);

// Angle between direction vectors in [0, pi]; stable near 0 and pi.
double angle_between_directions(const Vec3& u, const Vec3& v);

// Angle between lines, folded into [0, pi/2].
double line_angle(const Vec3& u, const Vec3& v);

// Interior angles of triangle ABC at A, B, C.
std::array<double, 3> interior_angles(const Vec3& A, const Vec3& B, const Vec3& C);

// Distance from p to the line through the origin with unit direction d.
double distance_to_line(const Vec3& p, const Vec3& d);

}  // namespace trifit
