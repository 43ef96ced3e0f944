#pragma once

// Central tolerance registry. Every module and test pulls thresholds from
// here so there is exactly one place where they can be tuned.

namespace trifit::tol {

// Triangle shape: |angA + angB + angC - pi| must stay below this.
inline constexpr double eps_shape = 1e-12;

// Unit direction vectors: | |d| - 1 | bound.
inline constexpr double eps_dir = 1e-12;

// Position tolerance, scaled by the configuration scale (the side length a).
inline constexpr double tol_pos = 1e-9;

// Angle tolerance for achieved interior angles and arc lengths.
inline constexpr double tol_ang = 1e-7;

// Collinearity threshold for triangle vertices, scaled by scale^2.
inline constexpr double eps_area = 1e-12;

// z3^2 at or below this means the configured line triple is numerically
// coplanar and cannot be realized.
inline constexpr double eps_z3 = 1e-14;

// A direction whose xy-norm is below this counts as the z-axis.
inline constexpr double eps_z_axis = 1e-12;

// Torus distance in (theta, psi) below which two candidates are duplicates.
inline constexpr double dedup = 1e-6;

// Target residual for root refinement, scaled by the configuration scale.
inline constexpr double refine_residual = 1e-12;

// Vertices closer to the origin than this (times scale) are rejected unless
// the request allows origin vertices.
inline constexpr double origin_exclusion = 1e-9;

}  // namespace trifit::tol
