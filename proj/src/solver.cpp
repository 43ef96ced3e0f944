#include "trifit/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "trifit/errors.hpp"

namespace trifit {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_theta(double t) {
    double y = std::fmod(t, two_pi);
    if (y < 0.0) y += two_pi;
    if (y >= two_pi) y = 0.0;
    return y;
}

double wrap_psi(double p) {
    double y = std::fmod(p, two_pi);
    if (y <= -pi) y += two_pi;
    if (y > pi) y -= two_pi;
    return y;
}

double circ_dist(double a, double b) {
    const double d = std::abs(std::fmod(a - b, two_pi));
    return std::min(d, two_pi - d);
}

double torus_dist(const std::pair<double, double>& u, const std::pair<double, double>& v) {
    return std::max(circ_dist(u.first, v.first), circ_dist(u.second, v.second));
}

void validate_request(const SolveRequest& request) {
    validate_shape(request.shape.angA, request.shape.angB, request.shape.angC);
    validate_config(request.config.alpha, request.config.beta, request.config.gamma);
    if (!std::isfinite(request.scale) || request.scale <= 0.0)
        throw RequestInvalid("scale must be positive and finite");
    if (request.scan_n < 16) throw RequestInvalid("scan_n must be at least 16");
    if (!(request.tol_pos > 0.0) || !(request.tol_ang > 0.0))
        throw RequestInvalid("tolerances must be positive");
}

// Chord-line crossing of the projected third line at a given theta. The
// segment C'C'' is F + tau*w for tau in [-h, h]; the third line x = m z,
// y = n z crosses the chord's carrier line at tau = g, demanding z = s.
struct Crossing {
    double g = 0.0, s = 0.0;
};

Crossing crossing_at(const SullivanFrame& frame, double m, double n, double theta) {
    const PlanarPose pose = pose_at(frame, theta);
    const double wx = -std::sin(frame.gamma + theta);
    const double wy = std::cos(frame.gamma + theta);
    const double det = m * wy - n * wx;
    Crossing c;
    c.g = (n * pose.F.x - m * pose.F.y) / det;
    c.s = (wy * pose.F.x - wx * pose.F.y) / det;
    return c;
}

// z-mismatch of one branch (sign of sin psi): the candidate z the chord can
// supply at the crossing minus the z the third line demands. Extended
// continuously by -s where the crossing misses the chord, so bracketing
// stays well defined; such extension roots are discarded at validation.
double branch_mismatch(const SullivanFrame& frame, double m, double n, int branch,
                       double theta) {
    const Crossing c = crossing_at(frame, m, n, theta);
    const double h = frame.b * std::sin(frame.shape.angA);
    const double root = std::sqrt(std::max(h * h - c.g * c.g, 0.0));
    return branch * root - c.s;
}

template <class F>
double bisect_root(F&& f, double lo, double hi, double flo) {
    for (int it = 0; it < 120 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Argmin of phi over [a, b] by golden-section; assumes phi is unimodal on
// the (two-cell) window, which holds for the smooth mismatch away from its
// poles. Pole windows yield a useless argmin that the caller's checks drop.
template <class F>
double golden_argmin(F&& phi, double a, double b) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = phi(c), fd = phi(d);
    for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = phi(d);
        }
    }
    return fc <= fd ? c : d;
}

void collect_general_candidates(const SullivanFrame& frame, double m, double n, int scan_n,
                                double scale,
                                std::vector<std::pair<double, double>>& candidates) {
    const double h = frame.b * std::sin(frame.shape.angA);
    const double step = two_pi / scan_n;
    for (int branch : {+1, -1}) {
        auto f = [&](double t) { return branch_mismatch(frame, m, n, branch, t); };

        std::vector<double> vals(static_cast<std::size_t>(scan_n));
        for (int k = 0; k < scan_n; ++k) vals[static_cast<std::size_t>(k)] = f(k * step);
        auto val = [&](int k) { return vals[static_cast<std::size_t>((k % scan_n + scan_n) % scan_n)]; };

        // from_sign_change gates the never-drop-silently escalation: an
        // extremum graze emitted on spec never detected a crossing, so a
        // sloppy one is simply not a candidate.
        auto emit = [&](double root_theta, bool from_sign_change, double lo, double hi) {
            const Crossing c = crossing_at(frame, m, n, root_theta);
            if (std::isfinite(c.g) && std::abs(c.g) <= h * (1.0 + 1e-9)) {
                const double sine = branch * std::sqrt(std::max(h * h - c.g * c.g, 0.0));
                const double psi = std::atan2(sine, c.g);
                candidates.emplace_back(root_theta, psi);
            } else if (from_sign_change && std::isfinite(c.g) &&
                       std::abs(f(root_theta)) > 1e-6 * scale && std::abs(c.g) <= 2.0 * h) {
                // A genuine sign change that bisection failed to pin down;
                // never drop these silently.
                std::ostringstream os;
                os << "bisection did not converge on the bracket [" << lo << ", " << hi
                   << "]";
                throw NumericalFailure(os.str(), lo, hi);
            }
            // otherwise: pole crossing or extension root; not a solution
        };

        for (int k = 0; k < scan_n; ++k) {
            const double t0 = k * step;
            const double t1 = (k + 1) * step;
            const double prev = val(k);
            const double next = val(k + 1);
            if (prev == 0.0 && std::isfinite(prev)) {
                emit(t0, true, t0, t1);
            } else if (std::isfinite(prev) && std::isfinite(next) && next != 0.0 &&
                       (prev < 0.0) != (next < 0.0)) {
                emit(bisect_root(f, t0, t1, prev), true, t0, t1);
            }
        }

        // A root pair inside one cell leaves no sign change on the grid;
        // chase every interior extremum that points toward zero and split it
        // when the refined dip crosses.
        for (int k = 0; k < scan_n; ++k) {
            const double fl = val(k - 1), fm = val(k), fr = val(k + 1);
            if (!std::isfinite(fl) || !std::isfinite(fm) || !std::isfinite(fr)) continue;
            const bool dip = fm > 0.0 && fm <= fl && fm <= fr && (fm < fl || fm < fr);
            const bool rise = fm < 0.0 && fm >= fl && fm >= fr && (fm > fl || fm > fr);
            if (!dip && !rise) continue;
            const double sgn = dip ? 1.0 : -1.0;
            const double a = k * step - step;
            const double b = k * step + step;
            const double t_star = golden_argmin([&](double t) { return sgn * f(t); }, a, b);
            const double f_star = f(t_star);
            if (!std::isfinite(f_star)) continue;
            if (sgn * f_star < 0.0) {
                emit(bisect_root(f, a, t_star, f(a)), true, a, t_star);
                emit(bisect_root(f, t_star, b, f_star), true, t_star, b);
            } else if (std::abs(f_star) <= 1e-6 * scale) {
                // grazing tangency: hand it to verification
                emit(t_star, false, a, b);
            }
        }
    }
}

Solution assemble(const SullivanFrame& frame, const LineTriple& lines, double theta,
                  double psi) {
    Solution sol;
    sol.theta = wrap_theta(theta);
    sol.psi = wrap_psi(psi);
    const PlanarPose pose = pose_at(frame, theta);
    sol.A = pose.A;
    sol.B = pose.B;
    sol.C = spatial_point(frame, theta, psi).Cbreve;
    sol.residual = distance_to_line(sol.C, lines.l3.dir);
    sol.achieved_angles = interior_angles(sol.A, sol.B, sol.C);
    sol.side_lengths = {dist(sol.B, sol.C), dist(sol.C, sol.A), dist(sol.A, sol.B)};
    return sol;
}

}  // namespace

Line3Param line3_param(const LineTriple& lines) {
    const Vec3 d = lines.l3.dir;
    Line3Param p;
    if (std::hypot(d.x, d.y) <= tol::eps_z_axis) {
        p.is_z_axis = true;
        return p;
    }
    p.m = d.x / d.z;
    p.n = d.y / d.z;
    return p;
}

double residual_to_l3(const SullivanFrame& frame, const LineTriple& lines, double theta,
                      double psi) {
    return distance_to_line(spatial_point(frame, theta, psi).Cbreve, lines.l3.dir);
}

std::vector<std::pair<double, double>> solve_z_axis(const SullivanFrame& frame, int scan_n) {
    return z_axis_witnesses(frame, scan_n);
}

std::vector<Solution> solve(const SolveRequest& request) {
    validate_request(request);
    const LineTriple lines = build_canonical_lines(request.config);
    const SullivanFrame frame =
        make_frame(request.shape, request.config.gamma, request.scale);

    std::vector<std::pair<double, double>> candidates;
    const Line3Param l3 = line3_param(lines);
    if (l3.is_z_axis) {
        candidates = z_axis_witnesses(frame, request.scan_n);
    } else {
        collect_general_candidates(frame, l3.m, l3.n, request.scan_n, request.scale,
                                   candidates);
    }

    std::vector<Solution> solutions;
    for (const auto& [theta, psi] : candidates) {
        const Solution sol = assemble(frame, lines, theta, psi);
        if (verify(sol, request).pass) solutions.push_back(sol);
    }

    std::sort(solutions.begin(), solutions.end(), [](const Solution& a, const Solution& b) {
        return a.theta != b.theta ? a.theta < b.theta : a.psi < b.psi;
    });
    std::vector<Solution> unique;
    for (const Solution& sol : solutions) {
        const bool dup = std::any_of(unique.begin(), unique.end(), [&](const Solution& u) {
            return torus_dist({sol.theta, sol.psi}, {u.theta, u.psi}) <= tol::dedup;
        });
        if (!dup) unique.push_back(sol);
    }
    return unique;
}

VerificationReport verify(const Solution& solution, const SolveRequest& request) {
    VerificationReport report;
    const LineTriple lines = build_canonical_lines(request.config);
    const double pos_tol = request.tol_pos * request.scale;

    report.on_line = {distance_to_line(solution.A, lines.l1.dir),
                      distance_to_line(solution.B, lines.l2.dir),
                      distance_to_line(solution.C, lines.l3.dir)};
    report.residual = report.on_line[2];

    const auto expected = derive_sides(request.shape, request.scale);
    const std::array<double, 3> measured = {dist(solution.B, solution.C),
                                            dist(solution.C, solution.A),
                                            dist(solution.A, solution.B)};
    for (int i = 0; i < 3; ++i) report.side_errors[i] = std::abs(measured[i] - expected[i]);

    bool angles_ok = true;
    try {
        const auto angles = interior_angles(solution.A, solution.B, solution.C);
        report.angle_errors = {std::abs(angles[0] - request.shape.angA),
                               std::abs(angles[1] - request.shape.angB),
                               std::abs(angles[2] - request.shape.angC)};
    } catch (const DegenerateTriangle&) {
        const double inf = std::numeric_limits<double>::infinity();
        report.angle_errors = {inf, inf, inf};
        angles_ok = false;
    }
    report.max_angle_error =
        *std::max_element(report.angle_errors.begin(), report.angle_errors.end());

    if (request.mode == SolveMode::rays) {
        const auto rays = canonical_ray_directions(request.config);
        report.ray_ok = dot(solution.A, rays[0]) >= 0.0 && dot(solution.B, rays[1]) >= 0.0 &&
                        dot(solution.C, rays[2]) >= 0.0;
    }
    if (!request.allow_origin_vertex) {
        const double floor = tol::origin_exclusion * request.scale;
        report.origin_ok = norm(solution.A) > floor && norm(solution.B) > floor &&
                           norm(solution.C) > floor;
    }

    const double max_on_line =
        *std::max_element(report.on_line.begin(), report.on_line.end());
    const double max_side_error =
        *std::max_element(report.side_errors.begin(), report.side_errors.end());
    report.pass = angles_ok && max_on_line <= pos_tol && max_side_error <= pos_tol &&
                  report.max_angle_error <= request.tol_ang && report.ray_ok &&
                  report.origin_ok;
    return report;
}

void apply_request_param(SolveRequest& request, const std::string& name, double value) {
    if (name == "angA")
        request.shape.angA = value;
    else if (name == "angB")
        request.shape.angB = value;
    else if (name == "angC")
        request.shape.angC = value;
    else if (name == "alpha")
        request.config.alpha = value;
    else if (name == "beta")
        request.config.beta = value;
    else if (name == "gamma")
        request.config.gamma = value;
    else
        throw RequestInvalid("unknown sweep parameter: " + name);
}

SweepGrid sweep(const SolveRequest& request_template, const std::vector<SweepAxis>& axes,
                const CellAdjust& adjust, int jobs) {
    if (axes.empty()) throw RequestInvalid("sweep needs at least one axis");
    for (const SweepAxis& axis : axes) {
        if (axis.steps < 1) throw RequestInvalid("sweep axis needs at least one step");
        if (!std::isfinite(axis.from) || !std::isfinite(axis.to))
            throw RequestInvalid("sweep axis bounds must be finite");
        SolveRequest probe = request_template;
        apply_request_param(probe, axis.name, axis.from);  // validates the name
    }
    if (jobs < 1) throw RequestInvalid("jobs must be at least 1");

    SweepGrid grid;
    grid.axes = axes;
    std::size_t total = 1;
    for (const SweepAxis& axis : axes) total *= static_cast<std::size_t>(axis.steps);
    grid.cells.resize(total);

    auto run_cell = [&](std::size_t index) {
        // Decode the row-major index, first axis outermost.
        std::vector<int> idx(axes.size());
        std::size_t rest = index;
        for (std::size_t a = axes.size(); a-- > 0;) {
            idx[a] = static_cast<int>(rest % axes[a].steps);
            rest /= axes[a].steps;
        }
        SweepCell& cell = grid.cells[index];
        SolveRequest request = request_template;
        cell.params.resize(axes.size());
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const SweepAxis& axis = axes[a];
            const double value =
                axis.steps == 1
                    ? axis.from
                    : axis.from + (axis.to - axis.from) * idx[a] / (axis.steps - 1);
            cell.params[a] = value;
            apply_request_param(request, axis.name, value);
        }
        cell.n_solutions = -1;
        cell.best_residual = std::numeric_limits<double>::quiet_NaN();
        try {
            if (adjust) adjust(request);
            validate_request(request);
            const SullivanFrame frame =
                make_frame(request.shape, request.config.gamma, request.scale);
            cell.pred_ii = predicate_ii(frame);
            cell.pred_iii = predicate_iii(frame);
            cell.pred_iv = predicate_iv(frame);
            const auto solutions = solve(request);
            cell.n_solutions = static_cast<int>(solutions.size());
            for (const Solution& sol : solutions)
                cell.best_residual = std::isnan(cell.best_residual)
                                         ? sol.residual
                                         : std::min(cell.best_residual, sol.residual);
        } catch (const Error&) {
            cell.n_solutions = -1;
            cell.best_residual = std::numeric_limits<double>::quiet_NaN();
            cell.pred_ii = cell.pred_iii = cell.pred_iv = false;
        }
    };

    const int workers =
        static_cast<int>(std::min(static_cast<std::size_t>(jobs), total));
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) run_cell(i);
    } else {
        // Strided partition; cells land in preallocated slots, so the merge
        // order is the grid order no matter how the threads interleave.
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < total; i += workers) run_cell(i);
            });
        }
        for (std::thread& t : pool) t.join();
    }
    return grid;
}

}  // namespace trifit
