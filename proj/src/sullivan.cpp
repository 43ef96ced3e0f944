#include "trifit/sullivan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trifit/errors.hpp"
#include "trifit/tolerances.hpp"

namespace trifit {

namespace {

constexpr double pi = std::numbers::pi;

// Unit direction of the moving line AB and its in-plane normal. The segment
// AB keeps the fixed direction angle gamma + theta as the pose slides.
Vec3 u_hat(double gamma, double theta) {
    return {std::cos(gamma + theta), std::sin(gamma + theta), 0.0};
}

Vec3 w_hat(double gamma, double theta) {
    return {-std::sin(gamma + theta), std::cos(gamma + theta), 0.0};
}

}  // namespace

std::array<double, 3> derive_sides(const TriangleShape& shape, double a) {
    const double csc_a = 1.0 / std::sin(shape.angA);
    return {a, a * csc_a * std::sin(shape.angB), a * csc_a * std::sin(shape.angC)};
}

SullivanFrame make_frame(const TriangleShape& shape, double gamma, double a) {
    validate_shape(shape.angA, shape.angB, shape.angC);
    if (!std::isfinite(gamma) || gamma <= 0.0 || gamma >= pi) {
        throw ConfigInvalid("frame angle gamma must lie strictly between 0 and pi");
    }
    if (!std::isfinite(a) || a <= 0.0) {
        throw ConfigInvalid("frame scale a must be positive and finite");
    }
    SullivanFrame frame;
    frame.shape = shape;
    frame.gamma = gamma;
    frame.a = a;
    const auto sides = derive_sides(shape, a);
    frame.b = sides[1];
    frame.c = sides[2];
    return frame;
}

std::array<Vec3, 3> base_triangle(const SullivanFrame& frame) {
    const double g = frame.gamma;
    const Vec3 a0{0.0, 0.0, 0.0};
    const Vec3 b0{frame.c * std::cos(g), frame.c * std::sin(g), 0.0};
    const Vec3 c0{frame.b * std::cos(g + frame.shape.angA),
                  frame.b * std::sin(g + frame.shape.angA), 0.0};
    return {a0, b0, c0};
}

Vec3 rigid_motion(const SullivanFrame& frame, double theta, const Vec3& p) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double shift = frame.c / std::sin(frame.gamma) * st;
    return {p.x * ct - p.y * st + shift, p.x * st + p.y * ct, p.z};
}

Vec3 inverse_rigid_motion(const SullivanFrame& frame, double theta, const Vec3& p) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double x = p.x - frame.c / std::sin(frame.gamma) * st;
    return {x * ct + p.y * st, -x * st + p.y * ct, p.z};
}

PlanarPose pose_at(const SullivanFrame& frame, double theta) {
    PlanarPose pose;
    pose.theta = theta;
    const auto base = base_triangle(frame);
    pose.A = rigid_motion(frame, theta, base[0]);
    pose.B = rigid_motion(frame, theta, base[1]);
    pose.Cp = rigid_motion(frame, theta, base[2]);
    // Foot of the perpendicular from C' onto line AB, and the mirror image
    // of C' across that line.
    const Vec3 u = u_hat(frame.gamma, theta);
    pose.F = pose.A + u * dot(pose.Cp - pose.A, u);
    pose.Cpp = pose.F * 2.0 - pose.Cp;
    return pose;
}

SpatialCandidate spatial_point(const SullivanFrame& frame, double theta, double psi) {
    SpatialCandidate cand;
    cand.theta = theta;
    cand.psi = psi;
    const PlanarPose pose = pose_at(frame, theta);
    const double h = frame.b * std::sin(frame.shape.angA);
    const Vec3 w = w_hat(frame.gamma, theta);
    cand.Cbreve = pose.F + w * (h * std::cos(psi)) + Vec3{0.0, 0.0, h * std::sin(psi)};
    return cand;
}

MovingCircle circle_oab(const SullivanFrame& frame, double theta) {
    MovingCircle circle;
    circle.theta = theta;
    const double d = frame.c / std::sin(frame.gamma);  // diameter
    circle.center = {0.5 * d * std::sin(theta), 0.5 * d * std::cos(theta), 0.0};
    circle.radius = 0.5 * d;
    return circle;
}

double circle_implicit(const SullivanFrame& frame, double theta, const Vec3& p) {
    const double d = frame.c / std::sin(frame.gamma);
    return p.x * p.x + p.y * p.y - d * (std::sin(theta) * p.x + std::cos(theta) * p.y);
}

namespace {

// Signed coordinate of the origin along the moving line AB, measured from the
// foot F. The spatial vertex can reach the z-axis only where this vanishes.
double axis_gap(const SullivanFrame& frame, double theta) {
    const PlanarPose pose = pose_at(frame, theta);
    return dot(Vec3{0.0, 0.0, 0.0} - pose.F, u_hat(frame.gamma, theta));
}

}  // namespace

std::vector<std::pair<double, double>> z_axis_witnesses(const SullivanFrame& frame,
                                                        int scan_n) {
    if (scan_n < 16) {
        throw RequestInvalid("scan_n must be at least 16");
    }
    // Roots of the gap function over one full turn, by bracketing and
    // bisection. The gap is a sinusoid in theta, so a uniform grid of this
    // resolution cannot skip a sign change.
    std::vector<double> roots;
    const double step = 2.0 * pi / scan_n;
    double prev = axis_gap(frame, 0.0);
    for (int k = 0; k < scan_n; ++k) {
        const double t0 = k * step;
        const double t1 = (k + 1) * step;
        const double next = axis_gap(frame, t1);
        if (prev == 0.0) {
            roots.push_back(t0);
        } else if ((prev < 0.0) != (next < 0.0) && next != 0.0) {
            double lo = t0, hi = t1, flo = prev;
            for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = axis_gap(frame, mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((flo < 0.0) == (fm < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev = next;
    }

    std::vector<std::pair<double, double>> witnesses;
    const double r = frame.b * std::sin(frame.shape.angA);
    for (double theta : roots) {
        const PlanarPose pose = pose_at(frame, theta);
        const double g = dot(Vec3{0.0, 0.0, 0.0} - pose.F, w_hat(frame.gamma, theta));
        if (std::abs(g) > r * (1.0 + 1e-9)) {
            continue;  // the root puts the axis off the tilt circle
        }
        const double c = std::clamp(g / r, -1.0, 1.0);
        const double psi = std::acos(c);
        witnesses.emplace_back(theta, psi);
        if (psi > tol::dedup && pi - psi > tol::dedup) {
            witnesses.emplace_back(theta, -psi);
        }
    }
    std::sort(witnesses.begin(), witnesses.end());
    return witnesses;
}

std::optional<std::pair<double, double>> predicate_i_solvable_z(const SullivanFrame& frame,
                                                               int scan_n) {
    const auto witnesses = z_axis_witnesses(frame, scan_n);
    if (witnesses.empty()) {
        return std::nullopt;
    }
    return witnesses.front();
}

bool predicate_ii(const SullivanFrame& frame) {
    // Whether the chord C'C'' meets the moving circle. The answer is
    // theta-invariant, so the canonical evaluation sits at theta = 0 where
    // the circle has the implicit form x^2 + y^2 - c csc(gamma) y.
    return predicate_ii_at(frame, 0.0);
}

bool predicate_ii_at(const SullivanFrame& frame, double theta) {
    const PlanarPose pose = pose_at(frame, theta);
    const MovingCircle circle = circle_oab(frame, theta);
    const Vec3 d = pose.Cp - pose.Cpp;
    const Vec3 rel = pose.Cpp - circle.center;
    const double qa = norm2(d);
    const double qb = 2.0 * dot(d, rel);
    const double qc = norm2(rel) - circle.radius * circle.radius;
    // Value of the circle quadratic along the closed segment: the segment
    // meets the circle iff the quadratic takes both signs (or zero) there.
    const double q0 = qc;
    const double q1 = qa + qb + qc;
    double qmin = std::min(q0, q1);
    const double tv = -qb / (2.0 * qa);
    if (tv > 0.0 && tv < 1.0) {
        qmin = qc - qb * qb / (4.0 * qa);
    }
    const double qmax = std::max(q0, q1);
    return qmin <= 0.0 && qmax >= 0.0;
}

bool predicate_iii(const SullivanFrame& frame) {
    const PlanarPose pose = pose_at(frame, 0.0);
    const bool f_inside = circle_implicit(frame, 0.0, pose.F) <= 0.0;
    const double cap = std::max(frame.gamma, pi - frame.gamma);
    return f_inside && frame.shape.angC <= cap;
}

bool predicate_iv(const SullivanFrame& frame) {
    const PlanarPose pose = pose_at(frame, 0.0);
    const bool f_inside = circle_implicit(frame, 0.0, pose.F) <= 0.0;
    const double cg = std::cos(frame.gamma);
    const double cc = std::cos(frame.shape.angC);
    return f_inside && (cg <= cc || cg >= -cc);
}

}  // namespace trifit
