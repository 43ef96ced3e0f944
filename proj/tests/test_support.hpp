#pragma once

#include <array>
#include <numbers>
#include <random>

#include "trifit/geom.hpp"
#include "trifit/sullivan.hpp"

// Deterministic random generators shared by the test binaries. Sampling
// margins: shapes keep every angle at least 0.02 away from 0 and, for the
// acute family, at least 1e-3 below pi/2; configs keep at least 0.03 of
// slack on every strict inequality (the documented >= 1e-2) and are redrawn
// while numerically near-coplanar.

namespace trifit::testsupport {

constexpr double pi = std::numbers::pi;

inline TriangleShape random_acute_shape(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.02, pi / 2.0 - 1e-3);
    for (;;) {
        const double a = u(rng), b = u(rng);
        const double c = pi - a - b;
        if (c >= 0.02 && c <= pi / 2.0 - 1e-3) return {a, b, c};
    }
}

// Any valid shape, obtuse included; used where the solver must stay honest
// beyond the guaranteed regime.
inline TriangleShape random_shape(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const double x = u(rng), y = u(rng), z = u(rng);
        const double s = x + y + z;
        if (s == 0.0) continue;
        const double a = pi * x / s, b = pi * y / s, c = pi * z / s;
        if (a >= 0.05 && b >= 0.05 && c >= 0.05) return {a, b, c};
    }
}

// Exactly one angle above pi/2, placed at a random corner.
inline TriangleShape random_obtuse_shape(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> big(pi / 2.0 + 0.05, pi - 0.15);
    for (;;) {
        const double obtuse = big(rng);
        const double rest = pi - obtuse;
        std::uniform_real_distribution<double> split(0.03, rest - 0.03);
        const double second = split(rng);
        const double third = rest - second;
        if (second < 0.02 || third < 0.02) continue;
        std::array<double, 3> angles{};
        const int where = static_cast<int>(rng() % 3);
        angles[static_cast<std::size_t>(where)] = obtuse;
        angles[(where + 1) % 3] = second;
        angles[(where + 2) % 3] = third;
        return {angles[0], angles[1], angles[2]};
    }
}

inline LineConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.25, 2.7);
    const double margin = 0.03;
    for (;;) {
        const double a = u(rng), b = u(rng), c = u(rng);
        if (a + b + c >= 2.0 * pi - margin) continue;
        if (a >= b + c - margin || b >= c + a - margin || c >= a + b - margin) continue;
        // keep clear of numerically coplanar triples
        const double ca = std::cos(a), cb = std::cos(b), cg = std::cos(c);
        const double gram = 1.0 - ca * ca - cb * cb - cg * cg + 2.0 * ca * cb * cg;
        if (gram < 1e-4) continue;
        return {a, b, c};
    }
}

inline SullivanFrame random_frame(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ug(0.05, pi - 0.05);
    std::uniform_real_distribution<double> ua(0.5, 2.0);
    return make_frame(random_shape(rng), ug(rng), ua(rng));
}

}  // namespace trifit::testsupport
