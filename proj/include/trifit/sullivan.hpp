#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trifit/geom.hpp"

// The planar sliding-triangle construction and its 3-D extension.
//
// A triangle of the prescribed shape, at the scale fixed by the side a, is
// placed so that vertex A rides the x-axis and vertex B rides the line at
// angle gamma while the third vertex C' stays in the plane; the rotation
// parameter theta drives the slide (a skewed trammel). Rotating C' out of
// the plane about the line AB by the signed angle psi gives the spatial
// candidate vertex. The circle through the origin and the two sliding
// vertices moves rigidly with them and is the key feasibility object.

namespace trifit {

struct SullivanFrame {
    TriangleShape shape;
    double gamma = 0.0;  // angle of the second line, from the config
    double a = 1.0;      // free scale; b, c derived by the law of sines
    double b = 0.0;
    double c = 0.0;
};

// theta-parametrized planar state. A is on the x-axis, B on the gamma-ray
// line; Cp is the in-plane third vertex, Cpp its mirror across line AB and
// F the foot of the perpendicular from Cp to line AB.
struct PlanarPose {
    double theta = 0.0;
    Vec3 A, B, Cp, Cpp, F;
};

struct SpatialCandidate {
    double theta = 0.0, psi = 0.0;
    Vec3 Cbreve;
};

// The moving circle through the origin and the two sliding vertices.
// Its radius c / (2 sin gamma) does not depend on theta.
struct MovingCircle {
    double theta = 0.0;
    Vec3 center;
    double radius = 0.0;
};

// (a, b, c) with b = a csc(angA) sin(angB), c = a csc(angA) sin(angC).
std::array<double, 3> derive_sides(const TriangleShape& shape, double a);

SullivanFrame make_frame(const TriangleShape& shape, double gamma, double a);

// Template triangle at theta = 0 before any motion: A0 at the origin,
// B0 on the gamma-ray at distance c, C0 completing the prescribed shape.
std::array<Vec3, 3> base_triangle(const SullivanFrame& frame);

PlanarPose pose_at(const SullivanFrame& frame, double theta);

SpatialCandidate spatial_point(const SullivanFrame& frame, double theta, double psi);

MovingCircle circle_oab(const SullivanFrame& frame, double theta);

// Implicit form of the moving circle: x^2 + y^2 - c csc(gamma) (sin(theta) x
// + cos(theta) y). Negative inside, zero on, positive outside.
double circle_implicit(const SullivanFrame& frame, double theta, const Vec3& p);

// The rigid motion carrying the theta = 0 pose onto the theta pose, and its
// inverse. z is carried through unchanged.
Vec3 rigid_motion(const SullivanFrame& frame, double theta, const Vec3& p);
Vec3 inverse_rigid_motion(const SullivanFrame& frame, double theta, const Vec3& p);

// All parameter pairs (theta in [0, 2*pi), psi in (-pi, pi]) that put the
// spatial vertex on the z-axis, found by a scan of scan_n cells. Empty when
// no witness exists.
std::vector<std::pair<double, double>> z_axis_witnesses(const SullivanFrame& frame,
                                                        int scan_n = 720);

// Feasibility predicates. (i) searches for a z-axis witness; (ii) tests the
// chord C'C'' against the moving circle at theta = 0 (the result does not
// depend on theta); (iii) and (iv) are the closed angle/incidence forms.
// (iii) and (iv) are equivalent, and (iii) implies (ii).
std::optional<std::pair<double, double>> predicate_i_solvable_z(const SullivanFrame& frame,
                                                                int scan_n = 720);
bool predicate_ii(const SullivanFrame& frame);
// The same chord-against-circle test at an arbitrary theta; exists so the
// claimed theta-invariance of predicate_ii can be probed directly.
bool predicate_ii_at(const SullivanFrame& frame, double theta);
bool predicate_iii(const SullivanFrame& frame);
bool predicate_iv(const SullivanFrame& frame);

// SVG drawing of the planar construction at theta: the moving circle, the
// segments AB and C'C'', and the labeled points O, A, B, C', C'', F.
std::string construction_svg(const SullivanFrame& frame, double theta);

}  // namespace trifit
