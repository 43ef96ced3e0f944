#pragma once

#include <array>

#include "trifit/geom.hpp"
#include "trifit/solver.hpp"

// Spherical side of the correspondence: a solved triangle determines a great
// circle cutting the three line-pair circles in six points whose consecutive
// arcs reproduce the prescribed interior angles. Also: an exhaustive-search
// oracle for that cutting circle, and the elliptic-plane construction built
// on top of the solver.

namespace trifit {

struct GreatCircle {
    Vec3 normal;  // unit, canonical sign (normal and -normal name one circle)
};

struct SphericalScene {
    std::array<GreatCircle, 3> circles;  // c1, c2, c3: planes of the line pairs
    GreatCircle cutting;
    // Six intersection points in cyclic order along the cutting circle;
    // pjp = -pj (antipodal pairs).
    Vec3 p1, p2, p3, p1p, p2p, p3p;
    // Consecutive arcs (p1,p2), (p2,p3), (p3,p1p); they sum to pi.
    std::array<double, 3> arcs{};
};

struct Question1Report {
    bool pass = false;
    // |arc - target| for the targets (angC, angA, angB) in arc order.
    std::array<double, 3> arc_errors{};
};

struct OracleResult {
    GreatCircle cutting;
    double deviation = 0.0;  // max |arc - target| at the best candidate
    std::array<double, 3> arcs{};
};

// A point of the elliptic plane: an antipodal pair on the unit sphere,
// stored as the canonical-sign representative.
struct EllipticPoint {
    Vec3 rep;
};

EllipticPoint make_elliptic(const Vec3& v);

// Elliptic metric: arccos |u.v| for unit representatives, in [0, pi/2].
double elliptic_distance(const EllipticPoint& p, const EllipticPoint& q);

// cj is the great circle spanned by the two lines other than j.
std::array<GreatCircle, 3> circles_from_lines(const LineTriple& lines);

// Translate the sidelines of the solved triangle to the origin and pick
// representatives and labels so the six unit points run in the order
// p1, p2, p3, p1p, p2p, p3p around the cutting circle.
SphericalScene scene_from_solution(const Solution& solution, const LineTriple& lines);

// The arcs must equal (angC, angA, angB) within tol_ang.
Question1Report verify_question1(const SphericalScene& scene, const TriangleShape& shape,
                                 double tol_ang = tol::tol_ang);

// Brute-force search for a cutting circle realizing the target arcs:
// golden-angle spiral over candidate normals, then local refinement passes
// shrinking the step by 10x each. Deterministic for fixed n_grid.
OracleResult oracle_search(const TriangleShape& shape, const LineTriple& lines, int n_grid);

// Given three collinear elliptic points whose pairwise distances sum to pi,
// produce the elliptic triangle with vertex distances set by the config and
// each side's extension through one of the given points.
std::array<EllipticPoint, 3> elliptic_construct(const EllipticPoint& P1,
                                                const EllipticPoint& P2,
                                                const EllipticPoint& P3,
                                                const LineConfig& config);

}  // namespace trifit
