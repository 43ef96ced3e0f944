#pragma once

#include <array>
#include <string>
#include <vector>

#include "trifit/solver.hpp"
#include "trifit/spherical.hpp"

// Serialization boundary. Emitters are hand-rolled with a fixed field order
// and every number printed via %.17g, so identical inputs give byte-identical
// artifacts. Parsing accepts exactly what the emitters produce.
//
// The units field ("radians" or "degrees") governs the angle-valued payload
// fields: request angles and sides, theta, psi, achieved angles, angle
// errors, arcs, oracle deviation, and sweep parameter columns. Tolerances
// are always radians. Lengths and coordinates are never converted.

namespace trifit {

std::string solve_output_json(const SolveRequest& request,
                              const std::vector<Solution>& solutions, bool degrees);

std::string verification_json(const std::vector<VerificationReport>& reports, bool degrees);

std::string scene_json(const SphericalScene& scene, const Question1Report& question1,
                       bool degrees);

std::string oracle_json(const OracleResult& result, bool degrees);

std::string elliptic_json(const std::array<EllipticPoint, 3>& points);

// Single-line machine-readable error envelope (stderr channel).
std::string error_json(const std::string& type, const std::string& message);

std::string sweep_csv(const SweepGrid& grid, bool degrees);

struct SolveDocument {
    SolveRequest request;
    std::vector<Solution> solutions;
};

// Throws FileFormatError on anything that does not match the schema.
SolveDocument read_solve_output(const std::string& text);

}  // namespace trifit
