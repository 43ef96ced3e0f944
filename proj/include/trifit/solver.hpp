#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "trifit/geom.hpp"
#include "trifit/sullivan.hpp"
#include "trifit/tolerances.hpp"

// Solver: find every parameter pair (theta, psi) that puts the spatial vertex
// on the third line, assemble the triangles as verified Solutions, and sweep
// feasibility over angle space.

namespace trifit {

enum class SolveMode { lines, rays };

struct SolveRequest {
    TriangleShape shape;
    LineConfig config;
    double scale = 1.0;  // the side a; all positions and tolerances scale with it
    SolveMode mode = SolveMode::lines;
    int scan_n = 720;  // theta-grid resolution; the completeness knob
    double tol_pos = tol::tol_pos;  // relative to scale
    double tol_ang = tol::tol_ang;
    bool allow_origin_vertex = false;
};

struct Solution {
    double theta = 0.0, psi = 0.0;
    Vec3 A, B, C;
    double residual = 0.0;  // distance of C to the third line
    std::array<double, 3> achieved_angles{};
    std::array<double, 3> side_lengths{};  // (a, b, c)
};

struct VerificationReport {
    bool pass = false;
    std::array<double, 3> on_line{};      // distance of A, B, C to their lines
    std::array<double, 3> angle_errors{};  // |achieved - prescribed| at A, B, C
    std::array<double, 3> side_errors{};   // |measured - derived| for a, b, c
    double residual = 0.0;
    double max_angle_error = 0.0;
    bool ray_ok = true;     // vacuously true in lines mode
    bool origin_ok = true;  // vacuously true when origin vertices are allowed
};

// The third line as x = m z, y = n z; undefined (flagged) for the z-axis.
struct Line3Param {
    double m = 0.0, n = 0.0;
    bool is_z_axis = false;
};

Line3Param line3_param(const LineTriple& lines);

// Distance of the spatial vertex at (theta, psi) to the third line.
double residual_to_l3(const SullivanFrame& frame, const LineTriple& lines, double theta,
                      double psi);

// All solutions on the canonical line placement for the request, deduplicated
// (torus distance in (theta, psi) above 1e-6) and sorted by (theta, psi).
// Every returned Solution passes verify() under the request's own tolerances.
std::vector<Solution> solve(const SolveRequest& request);

// Witnesses putting the spatial vertex on the z-axis; empty means none exist.
std::vector<std::pair<double, double>> solve_z_axis(const SullivanFrame& frame,
                                                    int scan_n = 720);

VerificationReport verify(const Solution& solution, const SolveRequest& request);

// Feasibility sweep. Axis names refer to request parameters: angA, angB,
// angC, alpha, beta, gamma. Cells cover the full Cartesian grid in row-major
// order with the first axis outermost. Invalid cells carry n_solutions = -1,
// best_residual = NaN, and false predicates.
struct SweepAxis {
    std::string name;
    double from = 0.0, to = 0.0;
    int steps = 0;
};

struct SweepCell {
    std::vector<double> params;  // varied parameter values, axis order
    int n_solutions = -1;
    double best_residual = 0.0;
    bool pred_ii = false, pred_iii = false, pred_iv = false;
};

struct SweepGrid {
    std::vector<SweepAxis> axes;
    std::vector<SweepCell> cells;
};

void apply_request_param(SolveRequest& request, const std::string& name, double value);

// adjust, when given, runs after the axis values are applied to each cell's
// request (linked-parameter hook). jobs > 1 evaluates cells concurrently;
// the cell order is by grid index either way.
using CellAdjust = std::function<void(SolveRequest&)>;

SweepGrid sweep(const SolveRequest& request_template, const std::vector<SweepAxis>& axes,
                const CellAdjust& adjust = nullptr, int jobs = 1);

}  // namespace trifit
