#include <array>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trifit/errors.hpp"
#include "trifit/expr.hpp"
#include "trifit/json_io.hpp"
#include "trifit/solver.hpp"
#include "trifit/spherical.hpp"
#include "trifit/sullivan.hpp"

namespace {

using namespace trifit;

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_no_result = 3;
constexpr int exit_io = 4;
constexpr int exit_internal = 5;

constexpr double deg_to_rad = std::numbers::pi / 180.0;

struct IoError : Error {
    using Error::Error;
};

// Exceptions fall into three buckets: caller mistakes (2), I/O trouble (4),
// and everything that means the computation itself broke (5).
int emit_error(const std::exception& e) {
    std::string type = "InternalError";
    int code = exit_internal;
    if (dynamic_cast<const ShapeInvalid*>(&e)) {
        type = "ShapeInvalid";
        code = exit_invalid;
    } else if (dynamic_cast<const ConfigInvalid*>(&e)) {
        type = "ConfigInvalid";
        code = exit_invalid;
    } else if (dynamic_cast<const DegenerateConfig*>(&e)) {
        type = "DegenerateConfig";
        code = exit_invalid;
    } else if (dynamic_cast<const RequestInvalid*>(&e)) {
        type = "RequestInvalid";
        code = exit_invalid;
    } else if (dynamic_cast<const FileFormatError*>(&e)) {
        type = "FileFormatError";
        code = exit_invalid;
    } else if (dynamic_cast<const PreconditionFailed*>(&e)) {
        type = "PreconditionFailed";
        code = exit_invalid;
    } else if (dynamic_cast<const ZeroVector*>(&e)) {
        type = "ZeroVector";
        code = exit_invalid;
    } else if (dynamic_cast<const IoError*>(&e)) {
        type = "IoError";
        code = exit_io;
    } else if (dynamic_cast<const NumericalFailure*>(&e)) {
        type = "NumericalFailure";
    } else if (dynamic_cast<const AlignmentFailed*>(&e)) {
        type = "AlignmentFailed";
    } else if (dynamic_cast<const DegenerateSolution*>(&e)) {
        type = "DegenerateSolution";
    } else if (dynamic_cast<const OrderUnachievable*>(&e)) {
        type = "OrderUnachievable";
    } else if (dynamic_cast<const DegenerateTriangle*>(&e)) {
        type = "DegenerateTriangle";
    }
    std::cerr << error_json(type, e.what());
    return code;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed on " + path);
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed on " + path);
}

std::array<double, 3> parse_triple(const std::string& text, const std::string& flag) {
    std::array<double, 3> values{};
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 3) throw RequestInvalid(flag + " needs exactly three comma-separated values");
        std::size_t used = 0;
        try {
            values[i] = std::stod(item, &used);
        } catch (const std::exception&) {
            throw RequestInvalid(flag + ": cannot parse '" + item + "' as a number");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
            ++used;
        if (used != item.size())
            throw RequestInvalid(flag + ": cannot parse '" + item + "' as a number");
        ++i;
    }
    if (i != 3) throw RequestInvalid(flag + " needs exactly three comma-separated values");
    return values;
}

// Shared flags for commands that take the problem statement inline.
struct ProblemFlags {
    std::string angles, sides;
    double scale = 1.0;
    std::string mode = "lines";
    int scan_n = 720;
    double tol_pos = tol::tol_pos;
    double tol_ang = tol::tol_ang;
    bool allow_origin_vertex = false;
    bool degrees = false;
    std::string out;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& flags, bool with_solver_knobs) {
    cmd->add_option("--angles", flags.angles,
                    "prescribed interior angles angA,angB,angC")
        ->required();
    cmd->add_option("--sides", flags.sides,
                    "line-pair angles alpha,beta,gamma (alpha between lines 2 and 3)")
        ->required();
    cmd->add_flag("--degrees", flags.degrees,
                  "angle-valued input and output in degrees instead of radians");
    cmd->add_option("--out", flags.out, "write the artifact here instead of stdout");
    if (with_solver_knobs) {
        cmd->add_option("--scale", flags.scale, "side length a (default 1)");
        cmd->add_option("--mode", flags.mode, "lines or rays (default lines)")
            ->check(CLI::IsMember({"lines", "rays"}));
        cmd->add_option("--scan-n", flags.scan_n, "theta-grid resolution (default 720)");
        cmd->add_option("--tol-pos", flags.tol_pos,
                        "position tolerance relative to scale (radians-free)");
        cmd->add_option("--tol-ang", flags.tol_ang, "angle tolerance, always radians");
        cmd->add_flag("--allow-origin-vertex", flags.allow_origin_vertex,
                      "accept solutions with a vertex at the origin");
    }
}

SolveRequest build_request(const ProblemFlags& flags) {
    const double f = flags.degrees ? deg_to_rad : 1.0;
    const auto angles = parse_triple(flags.angles, "--angles");
    const auto sides = parse_triple(flags.sides, "--sides");
    SolveRequest request;
    request.shape = {angles[0] * f, angles[1] * f, angles[2] * f};
    request.config = {sides[0] * f, sides[1] * f, sides[2] * f};
    request.scale = flags.scale;
    request.mode = flags.mode == "rays" ? SolveMode::rays : SolveMode::lines;
    request.scan_n = flags.scan_n;
    request.tol_pos = flags.tol_pos;
    request.tol_ang = flags.tol_ang;
    request.allow_origin_vertex = flags.allow_origin_vertex;
    return request;
}

int run_solve(const ProblemFlags& flags) {
    const SolveRequest request = build_request(flags);
    const auto solutions = solve(request);
    write_output(flags.out, solve_output_json(request, solutions, flags.degrees));
    return solutions.empty() ? exit_no_result : exit_ok;
}

int run_verify(const std::string& solution_path, bool degrees, const std::string& out) {
    const SolveDocument doc = read_solve_output(read_file(solution_path));
    std::vector<VerificationReport> reports;
    reports.reserve(doc.solutions.size());
    bool all_pass = !doc.solutions.empty();
    for (const Solution& sol : doc.solutions) {
        reports.push_back(verify(sol, doc.request));
        all_pass = all_pass && reports.back().pass;
    }
    write_output(out, verification_json(reports, degrees));
    return all_pass ? exit_ok : exit_no_result;
}

int run_oracle(const ProblemFlags& flags, int n_grid, double accept) {
    const double f = flags.degrees ? deg_to_rad : 1.0;
    const auto angles = parse_triple(flags.angles, "--angles");
    const auto sides = parse_triple(flags.sides, "--sides");
    const TriangleShape shape =
        validate_shape(angles[0] * f, angles[1] * f, angles[2] * f);
    const LineConfig config = validate_config(sides[0] * f, sides[1] * f, sides[2] * f);
    const LineTriple lines = build_canonical_lines(config);
    const OracleResult result = oracle_search(shape, lines, n_grid);
    write_output(flags.out, oracle_json(result, flags.degrees));
    return result.deviation <= accept * f ? exit_ok : exit_no_result;
}

struct VarySpec {
    std::string name;
    double from = 0.0, to = 0.0;
    int steps = 0;
};

VarySpec parse_vary(const std::string& text, double f) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw RequestInvalid("--vary expects name=from:to:steps, got: " + text);
    VarySpec spec;
    spec.name = text.substr(0, eq);
    const std::string range = text.substr(eq + 1);
    const auto c1 = range.find(':');
    const auto c2 = range.rfind(':');
    if (c1 == std::string::npos || c2 == c1)
        throw RequestInvalid("--vary expects name=from:to:steps, got: " + text);
    try {
        spec.from = std::stod(range.substr(0, c1)) * f;
        spec.to = std::stod(range.substr(c1 + 1, c2 - c1 - 1)) * f;
        spec.steps = std::stoi(range.substr(c2 + 1));
    } catch (const std::exception&) {
        throw RequestInvalid("--vary expects numeric from:to:steps, got: " + text);
    }
    return spec;
}

struct LinkSpec {
    std::vector<std::string> targets;
    std::string expr;
};

LinkSpec parse_link(const std::string& text) {
    LinkSpec spec;
    std::size_t pos = 0;
    std::vector<std::string> parts;
    for (;;) {
        const auto eq = text.find('=', pos);
        if (eq == std::string::npos) {
            parts.push_back(text.substr(pos));
            break;
        }
        parts.push_back(text.substr(pos, eq - pos));
        pos = eq + 1;
    }
    if (parts.size() < 2)
        throw RequestInvalid("--link expects name[=name...]=expression, got: " + text);
    spec.expr = parts.back();
    parts.pop_back();
    spec.targets = parts;
    return spec;
}

int run_sweep(const ProblemFlags& flags, const std::vector<std::string>& vary,
              const std::vector<std::string>& link, int jobs) {
    const SolveRequest request = build_request(flags);
    const double f = flags.degrees ? deg_to_rad : 1.0;
    std::vector<SweepAxis> axes;
    for (const std::string& v : vary) {
        const VarySpec spec = parse_vary(v, f);
        axes.push_back({spec.name, spec.from, spec.to, spec.steps});
    }
    std::vector<LinkSpec> links;
    for (const std::string& l : link) links.push_back(parse_link(l));

    // Link expressions always see and produce radians, whatever the input
    // unit of the other flags.
    CellAdjust adjust;
    if (!links.empty()) {
        adjust = [links](SolveRequest& req) {
            for (const LinkSpec& spec : links) {
                const std::map<std::string, double> vars = {
                    {"angA", req.shape.angA},    {"angB", req.shape.angB},
                    {"angC", req.shape.angC},    {"alpha", req.config.alpha},
                    {"beta", req.config.beta},   {"gamma", req.config.gamma},
                };
                const double value = eval_expr(spec.expr, vars);
                for (const std::string& target : spec.targets)
                    apply_request_param(req, target, value);
            }
        };
    }

    const SweepGrid grid = sweep(request, axes, adjust, jobs);
    write_output(flags.out, sweep_csv(grid, flags.degrees));
    return exit_ok;
}

int run_spherical(const std::string& solution_path, int index, bool degrees,
                  const std::string& out) {
    const SolveDocument doc = read_solve_output(read_file(solution_path));
    if (doc.solutions.empty()) throw RequestInvalid("document contains no solutions");
    if (index < 0 || static_cast<std::size_t>(index) >= doc.solutions.size())
        throw RequestInvalid("--index out of range");
    const LineTriple lines = build_canonical_lines(doc.request.config);
    const SphericalScene scene = scene_from_solution(doc.solutions[index], lines);
    const Question1Report q1 =
        verify_question1(scene, doc.request.shape, doc.request.tol_ang);
    write_output(out, scene_json(scene, q1, degrees));
    return q1.pass ? exit_ok : exit_no_result;
}

int run_elliptic(const std::string& p1, const std::string& p2, const std::string& p3,
                 const std::string& sides, bool degrees, const std::string& out) {
    const double f = degrees ? deg_to_rad : 1.0;
    const auto s = parse_triple(sides, "--sides");
    const auto a1 = parse_triple(p1, "--p1");
    const auto a2 = parse_triple(p2, "--p2");
    const auto a3 = parse_triple(p3, "--p3");
    const LineConfig config = validate_config(s[0] * f, s[1] * f, s[2] * f);
    const auto q = elliptic_construct(make_elliptic({a1[0], a1[1], a1[2]}),
                                      make_elliptic({a2[0], a2[1], a2[2]}),
                                      make_elliptic({a3[0], a3[1], a3[2]}), config);
    write_output(out, elliptic_json(q));
    return exit_ok;
}

int run_plot(const ProblemFlags& flags, double theta, const std::string& svg_path) {
    const double f = flags.degrees ? deg_to_rad : 1.0;
    const auto angles = parse_triple(flags.angles, "--angles");
    const auto sides = parse_triple(flags.sides, "--sides");
    const TriangleShape shape =
        validate_shape(angles[0] * f, angles[1] * f, angles[2] * f);
    const LineConfig config = validate_config(sides[0] * f, sides[1] * f, sides[2] * f);
    const SullivanFrame frame = make_frame(shape, config.gamma, flags.scale);
    const std::string path = svg_path.empty() ? flags.out : svg_path;
    write_output(path, construction_svg(frame, theta * f));
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "trifit: triangles of prescribed shape with one vertex on each of three "
        "concurrent lines, plus the matching great-circle scenes"};
    app.require_subcommand(1);

    ProblemFlags solve_flags;
    CLI::App* solve_cmd = app.add_subcommand("solve", "find all solution triangles");
    add_problem_flags(solve_cmd, solve_flags, true);

    std::string verify_path, verify_out;
    bool verify_degrees = false;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "re-check a solution document against its request");
    verify_cmd->add_option("--solution", verify_path, "solution JSON from `solve`")
        ->required();
    verify_cmd->add_flag("--degrees", verify_degrees, "report angle errors in degrees");
    verify_cmd->add_option("--out", verify_out, "write the report here instead of stdout");

    ProblemFlags oracle_flags;
    int oracle_n_grid = 4000;
    double oracle_accept = 1e-6;
    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "brute-force search for the cutting circle matching the target arcs");
    add_problem_flags(oracle_cmd, oracle_flags, false);
    oracle_cmd->add_option("--n-grid", oracle_n_grid,
                           "sphere grid resolution (default 4000, min 1000)");
    oracle_cmd->add_option("--accept", oracle_accept,
                           "deviation threshold for exit 0 (default 1e-6)");

    ProblemFlags sweep_flags;
    std::vector<std::string> sweep_vary, sweep_link;
    int sweep_jobs = 1;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "feasibility grid over shape/config parameters");
    add_problem_flags(sweep_cmd, sweep_flags, true);
    sweep_cmd->add_option("--vary", sweep_vary, "axis spec name=from:to:steps (repeatable)")
        ->required();
    sweep_cmd->add_option("--link", sweep_link,
                          "linked parameter name[=name...]=expression, radians (repeatable)");
    sweep_cmd->add_option("--jobs", sweep_jobs, "parallel cell evaluation (default 1)");

    std::string sph_path, sph_out;
    int sph_index = 0;
    bool sph_degrees = false;
    CLI::App* sph_cmd = app.add_subcommand(
        "spherical", "build the great-circle scene for one solution and check the arcs");
    sph_cmd->add_option("--solution", sph_path, "solution JSON from `solve`")->required();
    sph_cmd->add_option("--index", sph_index, "which solution to map (default 0)");
    sph_cmd->add_flag("--degrees", sph_degrees, "arcs in degrees");
    sph_cmd->add_option("--out", sph_out, "write the scene here instead of stdout");

    std::string ell_p1, ell_p2, ell_p3, ell_sides, ell_out;
    bool ell_degrees = false;
    CLI::App* ell_cmd = app.add_subcommand(
        "elliptic", "construct the elliptic triangle through three collinear points");
    ell_cmd->add_option("--p1", ell_p1, "representative x,y,z of the first point")
        ->required();
    ell_cmd->add_option("--p2", ell_p2, "representative x,y,z of the second point")
        ->required();
    ell_cmd->add_option("--p3", ell_p3, "representative x,y,z of the third point")
        ->required();
    ell_cmd->add_option("--sides", ell_sides, "line-pair angles alpha,beta,gamma")
        ->required();
    ell_cmd->add_flag("--degrees", ell_degrees, "--sides given in degrees");
    ell_cmd->add_option("--out", ell_out, "write the result here instead of stdout");

    ProblemFlags plot_flags;
    double plot_theta = 0.0;
    std::string plot_svg;
    CLI::App* plot_cmd =
        app.add_subcommand("plot", "SVG drawing of the planar construction at theta");
    add_problem_flags(plot_cmd, plot_flags, false);
    plot_cmd->add_option("--theta", plot_theta, "slide parameter (default 0)");
    plot_cmd->add_option("--scale", plot_flags.scale, "side length a (default 1)");
    plot_cmd->add_option("--svg", plot_svg, "SVG output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        std::cerr << trifit::error_json("CliParse", e.what());
        return exit_invalid;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve_flags);
        if (verify_cmd->parsed()) return run_verify(verify_path, verify_degrees, verify_out);
        if (oracle_cmd->parsed())
            return run_oracle(oracle_flags, oracle_n_grid, oracle_accept);
        if (sweep_cmd->parsed())
            return run_sweep(sweep_flags, sweep_vary, sweep_link, sweep_jobs);
        if (sph_cmd->parsed())
            return run_spherical(sph_path, sph_index, sph_degrees, sph_out);
        if (ell_cmd->parsed())
            return run_elliptic(ell_p1, ell_p2, ell_p3, ell_sides, ell_degrees, ell_out);
        if (plot_cmd->parsed()) return run_plot(plot_flags, plot_theta, plot_svg);
    } catch (const std::exception& e) {
        return emit_error(e);
    }
    return exit_invalid;
}
