#include "trifit/json_io.hpp"

#include <numbers>
#include <sstream>

#include "json.hpp"
#include "trifit/errors.hpp"
#include "trifit/format.hpp"

namespace trifit {

namespace {

constexpr double rad_to_deg = 180.0 / std::numbers::pi;

double conv(double v, bool degrees) { return degrees ? v * rad_to_deg : v; }

void put_vec(std::ostringstream& os, const Vec3& v) {
    os << '[' << g17(v.x) << ", " << g17(v.y) << ", " << g17(v.z) << ']';
}

void put_arr3(std::ostringstream& os, const std::array<double, 3>& a, bool degrees = false) {
    os << '[' << g17(conv(a[0], degrees)) << ", " << g17(conv(a[1], degrees)) << ", "
       << g17(conv(a[2], degrees)) << ']';
}

const char* units_name(bool degrees) { return degrees ? "degrees" : "radians"; }

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

}  // namespace

std::string solve_output_json(const SolveRequest& request,
                              const std::vector<Solution>& solutions, bool degrees) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema\": \"trifit/1\",\n";
    os << "  \"units\": \"" << units_name(degrees) << "\",\n";
    os << "  \"request\": {\n";
    os << "    \"angles\": ";
    put_arr3(os, {request.shape.angA, request.shape.angB, request.shape.angC}, degrees);
    os << ",\n    \"sides\": ";
    put_arr3(os, {request.config.alpha, request.config.beta, request.config.gamma}, degrees);
    os << ",\n    \"scale\": " << g17(request.scale);
    os << ",\n    \"mode\": \"" << (request.mode == SolveMode::rays ? "rays" : "lines")
       << "\"";
    os << ",\n    \"scan_n\": " << request.scan_n;
    os << ",\n    \"tol_pos\": " << g17(request.tol_pos);
    os << ",\n    \"tol_ang\": " << g17(request.tol_ang);
    os << ",\n    \"allow_origin_vertex\": "
       << (request.allow_origin_vertex ? "true" : "false");
    os << "\n  },\n";
    os << "  \"n_solutions\": " << solutions.size() << ",\n";
    os << "  \"solutions\": [";
    for (std::size_t i = 0; i < solutions.size(); ++i) {
        const Solution& sol = solutions[i];
        os << (i == 0 ? "\n" : ",\n");
        os << "    {\n";
        os << "      \"theta\": " << g17(conv(sol.theta, degrees)) << ",\n";
        os << "      \"psi\": " << g17(conv(sol.psi, degrees)) << ",\n";
        os << "      \"A\": ";
        put_vec(os, sol.A);
        os << ",\n      \"B\": ";
        put_vec(os, sol.B);
        os << ",\n      \"C\": ";
        put_vec(os, sol.C);
        os << ",\n      \"residual\": " << g17(sol.residual) << ",\n";
        os << "      \"angles\": ";
        put_arr3(os, sol.achieved_angles, degrees);
        os << ",\n      \"sides\": ";
        put_arr3(os, sol.side_lengths);
        os << "\n    }";
    }
    os << (solutions.empty() ? "]\n" : "\n  ]\n");
    os << "}\n";
    return os.str();
}

std::string verification_json(const std::vector<VerificationReport>& reports, bool degrees) {
    bool all_pass = true;
    for (const VerificationReport& r : reports) all_pass = all_pass && r.pass;
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema\": \"trifit/1\",\n";
    os << "  \"units\": \"" << units_name(degrees) << "\",\n";
    os << "  \"all_pass\": " << (all_pass ? "true" : "false") << ",\n";
    os << "  \"reports\": [";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const VerificationReport& r = reports[i];
        os << (i == 0 ? "\n" : ",\n");
        os << "    {\n";
        os << "      \"pass\": " << (r.pass ? "true" : "false") << ",\n";
        os << "      \"on_line\": ";
        put_arr3(os, r.on_line);
        os << ",\n      \"angle_errors\": ";
        put_arr3(os, r.angle_errors, degrees);
        os << ",\n      \"side_errors\": ";
        put_arr3(os, r.side_errors);
        os << ",\n      \"residual\": " << g17(r.residual) << ",\n";
        os << "      \"max_angle_error\": " << g17(conv(r.max_angle_error, degrees)) << ",\n";
        os << "      \"ray_ok\": " << (r.ray_ok ? "true" : "false") << ",\n";
        os << "      \"origin_ok\": " << (r.origin_ok ? "true" : "false") << "\n";
        os << "    }";
    }
    os << (reports.empty() ? "]\n" : "\n  ]\n");
    os << "}\n";
    return os.str();
}

std::string scene_json(const SphericalScene& scene, const Question1Report& question1,
                       bool degrees) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema\": \"trifit/1\",\n";
    os << "  \"units\": \"" << units_name(degrees) << "\",\n";
    os << "  \"scene\": {\n";
    os << "    \"c1\": ";
    put_vec(os, scene.circles[0].normal);
    os << ",\n    \"c2\": ";
    put_vec(os, scene.circles[1].normal);
    os << ",\n    \"c3\": ";
    put_vec(os, scene.circles[2].normal);
    os << ",\n    \"cutting\": ";
    put_vec(os, scene.cutting.normal);
    os << ",\n    \"p1\": ";
    put_vec(os, scene.p1);
    os << ",\n    \"p2\": ";
    put_vec(os, scene.p2);
    os << ",\n    \"p3\": ";
    put_vec(os, scene.p3);
    os << ",\n    \"p1p\": ";
    put_vec(os, scene.p1p);
    os << ",\n    \"p2p\": ";
    put_vec(os, scene.p2p);
    os << ",\n    \"p3p\": ";
    put_vec(os, scene.p3p);
    os << ",\n    \"arcs\": ";
    put_arr3(os, scene.arcs, degrees);
    os << "\n  },\n";
    os << "  \"question1\": {\n";
    os << "    \"pass\": " << (question1.pass ? "true" : "false") << ",\n";
    os << "    \"arc_errors\": ";
    put_arr3(os, question1.arc_errors, degrees);
    os << "\n  }\n";
    os << "}\n";
    return os.str();
}

std::string oracle_json(const OracleResult& result, bool degrees) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema\": \"trifit/1\",\n";
    os << "  \"units\": \"" << units_name(degrees) << "\",\n";
    os << "  \"oracle\": {\n";
    os << "    \"normal\": ";
    put_vec(os, result.cutting.normal);
    os << ",\n    \"deviation\": " << g17(conv(result.deviation, degrees)) << ",\n";
    os << "    \"arcs\": ";
    put_arr3(os, result.arcs, degrees);
    os << "\n  }\n";
    os << "}\n";
    return os.str();
}

std::string elliptic_json(const std::array<EllipticPoint, 3>& points) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema\": \"trifit/1\",\n";
    os << "  \"elliptic\": {\n";
    os << "    \"Q1\": ";
    put_vec(os, points[0].rep);
    os << ",\n    \"Q2\": ";
    put_vec(os, points[1].rep);
    os << ",\n    \"Q3\": ";
    put_vec(os, points[2].rep);
    os << "\n  }\n";
    os << "}\n";
    return os.str();
}

std::string error_json(const std::string& type, const std::string& message) {
    std::ostringstream os;
    os << "{\"schema\": \"trifit/1\", \"error\": {\"type\": \"" << escape(type)
       << "\", \"message\": \"" << escape(message) << "\"}}\n";
    return os.str();
}

std::string sweep_csv(const SweepGrid& grid, bool degrees) {
    std::ostringstream os;
    for (const SweepAxis& axis : grid.axes) os << axis.name << ',';
    os << "n_solutions,best_residual,pred_ii,pred_iii,pred_iv\n";
    for (const SweepCell& cell : grid.cells) {
        for (double p : cell.params) os << g17(conv(p, degrees)) << ',';
        os << cell.n_solutions << ',' << g17(cell.best_residual) << ','
           << (cell.pred_ii ? 1 : 0) << ',' << (cell.pred_iii ? 1 : 0) << ','
           << (cell.pred_iv ? 1 : 0) << '\n';
    }
    return os.str();
}

namespace {

Vec3 json_vec(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) throw FileFormatError("expected a 3-vector");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::array<double, 3> json_arr3(const nlohmann::json& j, double factor = 1.0) {
    if (!j.is_array() || j.size() != 3) throw FileFormatError("expected a 3-array");
    return {j[0].get<double>() * factor, j[1].get<double>() * factor,
            j[2].get<double>() * factor};
}

}  // namespace

SolveDocument read_solve_output(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FileFormatError(std::string("not valid JSON: ") + e.what());
    }
    try {
        if (j.at("schema").get<std::string>() != "trifit/1")
            throw FileFormatError("unsupported schema");
        const std::string units = j.value("units", "radians");
        double f = 1.0;
        if (units == "degrees")
            f = std::numbers::pi / 180.0;
        else if (units != "radians")
            throw FileFormatError("unknown units: " + units);

        SolveDocument doc;
        const nlohmann::json& req = j.at("request");
        const auto angles = json_arr3(req.at("angles"), f);
        const auto sides = json_arr3(req.at("sides"), f);
        doc.request.shape = {angles[0], angles[1], angles[2]};
        doc.request.config = {sides[0], sides[1], sides[2]};
        doc.request.scale = req.value("scale", 1.0);
        const std::string mode = req.value("mode", "lines");
        if (mode == "rays")
            doc.request.mode = SolveMode::rays;
        else if (mode == "lines")
            doc.request.mode = SolveMode::lines;
        else
            throw FileFormatError("unknown mode: " + mode);
        doc.request.scan_n = req.value("scan_n", 720);
        doc.request.tol_pos = req.value("tol_pos", tol::tol_pos);
        doc.request.tol_ang = req.value("tol_ang", tol::tol_ang);
        doc.request.allow_origin_vertex = req.value("allow_origin_vertex", false);

        for (const nlohmann::json& js : j.at("solutions")) {
            Solution sol;
            sol.theta = js.at("theta").get<double>() * f;
            sol.psi = js.at("psi").get<double>() * f;
            sol.A = json_vec(js.at("A"));
            sol.B = json_vec(js.at("B"));
            sol.C = json_vec(js.at("C"));
            sol.residual = js.at("residual").get<double>();
            sol.achieved_angles = json_arr3(js.at("angles"), f);
            sol.side_lengths = json_arr3(js.at("sides"));
            doc.solutions.push_back(sol);
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw FileFormatError(std::string("document does not match the schema: ") +
                              e.what());
    }
}

}  // namespace trifit
