#include "ffscale/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ffscale/twolevel.hpp"

namespace ffscale::harness {

using nlohmann::json;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using spectral::CoefficientSchedule;

std::string route_name(Route r) {
    switch (r) {
        case Route::direct: return "direct";
        case Route::series: return "series";
        case Route::both: return "both";
    }
    return "?";
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

const json& member(const json& j, const std::string& where, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) fail(where, "missing field '" + key + "'");
    return *it;
}

double number_at(const json& j, const std::string& where, const std::string& key) {
    const json& v = member(j, where, key);
    if (!v.is_number()) fail(where + "." + key, "expected a number");
    return v.get<double>();
}

double number_or(const json& j, const std::string& where, const std::string& key, double dflt) {
    if (!j.contains(key)) return dflt;
    const json& v = j.at(key);
    if (!v.is_number()) fail(where + "." + key, "expected a number");
    return v.get<double>();
}

std::string string_at(const json& j, const std::string& where, const std::string& key) {
    const json& v = member(j, where, key);
    if (!v.is_string()) fail(where + "." + key, "expected a string");
    return v.get<std::string>();
}

std::vector<double> real_array(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) fail(where + "[" + std::to_string(i) + "]", "expected a number");
        const double x = v[i].get<double>();
        if (!std::isfinite(x)) fail(where + "[" + std::to_string(i) + "]", "must be finite");
        out.push_back(x);
    }
    return out;
}

CoefficientSchedule parse_coefficient(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object {kind, params}");
    const std::string kind = string_at(j, where, "kind");
    const std::vector<double> p = real_array(member(j, where, "params"), where + ".params");
    auto need = [&](size_t n) {
        if (p.size() != n)
            fail(where + ".params", "kind '" + kind + "' takes " + std::to_string(n) +
                                        " parameter(s), got " + std::to_string(p.size()));
    };
    if (kind == "constant") {
        need(1);
        return CoefficientSchedule::constant(p[0]);
    }
    if (kind == "linear") {
        need(2);
        return CoefficientSchedule::linear(p[0], p[1]);
    }
    if (kind == "polynomial") {
        if (p.empty()) fail(where + ".params", "polynomial needs at least one coefficient");
        return CoefficientSchedule::polynomial(p);
    }
    if (kind == "tanh_ramp") {
        need(4);
        return CoefficientSchedule::tanh_ramp(p[0], p[1], p[2], p[3]);
    }
    fail(where + ".kind", "unknown schedule kind '" + kind + "'");
}

HermitianMatrix parse_matrix(const json& j, const std::string& where, int dim) {
    const json& re = member(j, where, "re");
    if (!re.is_array() || static_cast<int>(re.size()) != dim)
        fail(where + ".re", "expected " + std::to_string(dim) + " rows");
    const bool has_im = j.contains("im");
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) {
        const auto row = real_array(re[i], where + ".re[" + std::to_string(i) + "]");
        if (static_cast<int>(row.size()) != dim)
            fail(where + ".re[" + std::to_string(i) + "]", "expected " + std::to_string(dim) + " entries");
        for (int c = 0; c < dim; ++c) m(i, c) = row[c];
    }
    if (has_im) {
        const json& im = j.at("im");
        if (!im.is_array() || static_cast<int>(im.size()) != dim)
            fail(where + ".im", "expected " + std::to_string(dim) + " rows");
        for (int i = 0; i < dim; ++i) {
            const auto row = real_array(im[i], where + ".im[" + std::to_string(i) + "]");
            if (static_cast<int>(row.size()) != dim)
                fail(where + ".im[" + std::to_string(i) + "]", "expected " + std::to_string(dim) + " entries");
            for (int c = 0; c < dim; ++c) m(i, c) += Complex(0.0, row[c]);
        }
    }
    try {
        return HermitianMatrix(m);
    } catch (const NumericError& e) {
        fail(where, e.what());
    }
}

void parse_system(const json& j, Scenario& sc) {
    const std::string where = "system";
    const std::string type = string_at(j, where, "type");
    if (type == "two_level") {
        sc.two_level = true;
        sc.hx = parse_coefficient(member(j, where, "hx"), where + ".hx");
        sc.hz = parse_coefficient(member(j, where, "hz"), where + ".hz");
        std::vector<HermitianMatrix> basis = {
            HermitianMatrix(-1.0 * twolevel::pauli_x()),
            HermitianMatrix(-1.0 * twolevel::pauli_z()),
        };
        sc.reference = spectral::make_reference(std::move(basis), {*sc.hx, *sc.hz}, sc.reference.t_ref);
    } else if (type == "generic") {
        const json& dimj = member(j, where, "dim");
        if (!dimj.is_number_integer() || dimj.get<int>() < 1) fail(where + ".dim", "expected a positive integer");
        const int dim = dimj.get<int>();
        const json& basisj = member(j, where, "basis");
        if (!basisj.is_array() || basisj.empty()) fail(where + ".basis", "expected a non-empty array");
        const json& schedj = member(j, where, "schedules");
        if (!schedj.is_array() || schedj.size() != basisj.size())
            fail(where + ".schedules", "expected one schedule per basis operator");
        std::vector<HermitianMatrix> basis;
        std::vector<CoefficientSchedule> schedules;
        std::vector<std::string> names;
        for (size_t k = 0; k < basisj.size(); ++k) {
            const std::string bw = where + ".basis[" + std::to_string(k) + "]";
            basis.push_back(parse_matrix(basisj[k], bw, dim));
            names.push_back(basisj[k].contains("name") ? basisj[k].at("name").get<std::string>()
                                                       : "B" + std::to_string(k));
            schedules.push_back(parse_coefficient(schedj[k], where + ".schedules[" + std::to_string(k) + "]"));
        }
        sc.reference = spectral::make_reference(std::move(basis), std::move(schedules), sc.reference.t_ref);
        sc.decomposition_names = std::move(names);  // provisional; resolved in parse_output
    } else {
        fail(where + ".type", "unknown system type '" + type + "'");
    }
}

void parse_rescaling(const json& j, Scenario& sc) {
    const std::string where = "rescaling";
    const std::string kind = string_at(j, where, "kind");
    const double t_ref = sc.reference.t_ref;
    using schedule::RescalingSchedule;
    try {
        if (kind == "identity") {
            sc.rescaling = RescalingSchedule::identity(t_ref);
        } else if (kind == "linear") {
            sc.rescaling = RescalingSchedule::linear(t_ref, number_at(j, where, "t_ff"));
        } else if (kind == "smooth_ramp") {
            sc.rescaling = RescalingSchedule::smooth_ramp(t_ref, number_at(j, where, "t_ff"));
        } else if (kind == "pause_segment") {
            sc.rescaling = RescalingSchedule::pause_segment(
                t_ref, number_at(j, where, "t_ff"), number_at(j, where, "t0"),
                number_at(j, where, "t1"), number_at(j, where, "s_hold"));
        } else if (kind == "rewind_segment") {
            sc.rescaling = RescalingSchedule::rewind_segment(
                t_ref, number_at(j, where, "t_ff"), number_at(j, where, "t0"),
                number_at(j, where, "t1"), number_at(j, where, "s0"), number_at(j, where, "s1"));
        } else if (kind == "piecewise") {
            const json& knotsj = member(j, where, "knots");
            if (!knotsj.is_array() || knotsj.size() < 2) fail(where + ".knots", "expected >= 2 [t, s] pairs");
            std::vector<RescalingSchedule::Knot> knots;
            for (size_t i = 0; i < knotsj.size(); ++i) {
                const auto pair = real_array(knotsj[i], where + ".knots[" + std::to_string(i) + "]");
                if (pair.size() != 2)
                    fail(where + ".knots[" + std::to_string(i) + "]", "expected a [t, s] pair");
                knots.push_back({pair[0], pair[1]});
            }
            sc.rescaling = RescalingSchedule::piecewise(t_ref, std::move(knots));
        } else {
            fail(where + ".kind", "unknown rescaling kind '" + kind + "'");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

void parse_initial_state(const json& j, Scenario& sc) {
    const std::string where = "initial_state";
    const std::string type = string_at(j, where, "type");
    if (type == "eigenstate") {
        const json& lv = member(j, where, "level");
        if (!lv.is_number_integer()) fail(where + ".level", "expected an integer");
        const int level = lv.get<int>();
        if (level < 0 || level >= sc.reference.dim)
            fail(where + ".level", "level out of range for dim " + std::to_string(sc.reference.dim));
        sc.initial_level = level;
    } else if (type == "amplitudes") {
        const auto re = real_array(member(j, where, "re"), where + ".re");
        if (static_cast<int>(re.size()) != sc.reference.dim)
            fail(where + ".re", "expected dim = " + std::to_string(sc.reference.dim) + " amplitudes");
        std::vector<double> im(re.size(), 0.0);
        if (j.contains("im")) {
            im = real_array(j.at("im"), where + ".im");
            if (im.size() != re.size()) fail(where + ".im", "length mismatch with re");
        }
        linalg::Vector psi(re.size());
        for (size_t i = 0; i < re.size(); ++i) psi[i] = Complex(re[i], im[i]);
        const double n = linalg::vec_norm(psi);
        if (std::abs(n - 1.0) > 1e-8) fail(where, "amplitudes are not normalized");
        for (auto& v : psi) v /= n;
        sc.initial_amplitudes = std::move(psi);
    } else {
        fail(where + ".type", "unknown initial state type '" + type + "'");
    }
}

void parse_output(const json& root, Scenario& sc) {
    std::vector<std::string> system_names = std::move(sc.decomposition_names);
    sc.decomposition_names.clear();

    std::string basis_choice = sc.two_level ? "pauli" : "none";
    if (root.contains("output")) {
        const json& j = root.at("output");
        if (!j.is_object()) fail("output", "expected an object");
        if (j.contains("stride")) {
            if (!j.at("stride").is_number_integer() || j.at("stride").get<int>() < 1)
                fail("output.stride", "expected a positive integer");
            sc.output_stride = j.at("stride").get<int>();
        }
        if (j.contains("decomposition_basis")) {
            const json& db = j.at("decomposition_basis");
            if (db.is_string()) {
                basis_choice = db.get<std::string>();
            } else if (db.is_array()) {
                basis_choice = "explicit";
                for (size_t k = 0; k < db.size(); ++k) {
                    const std::string bw = "output.decomposition_basis[" + std::to_string(k) + "]";
                    sc.decomposition_basis.push_back(parse_matrix(db[k], bw, sc.reference.dim));
                    sc.decomposition_names.push_back(
                        db[k].contains("name") ? db[k].at("name").get<std::string>()
                                               : "M" + std::to_string(k));
                }
            } else {
                fail("output.decomposition_basis", "expected a string or an array of matrices");
            }
        }
    }
    if (basis_choice == "explicit" || basis_choice == "none") return;
    if (basis_choice == "pauli") {
        if (sc.reference.dim != 2) fail("output.decomposition_basis", "'pauli' needs a two-level system");
        sc.decomposition_basis = {HermitianMatrix(twolevel::pauli_x()),
                                  HermitianMatrix(twolevel::pauli_y()),
                                  HermitianMatrix(twolevel::pauli_z())};
        sc.decomposition_names = {"X", "Y", "Z"};
        return;
    }
    if (basis_choice == "system") {
        sc.decomposition_basis = sc.reference.basis;
        sc.decomposition_names = system_names;
        if (sc.decomposition_names.empty())
            for (size_t k = 0; k < sc.decomposition_basis.size(); ++k)
                sc.decomposition_names.push_back("B" + std::to_string(k));
        return;
    }
    fail("output.decomposition_basis", "unknown choice '" + basis_choice + "'");
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line number for the diagnostic
        size_t line = 1;
        for (size_t i = 0; i < std::min(text.size(), static_cast<size_t>(e.byte)); ++i)
            if (text[i] == '\n') ++line;
        std::ostringstream os;
        os << origin << ":" << line << ": " << e.what();
        throw ConfigError(os.str());
    }
    if (!root.is_object()) throw ConfigError(origin + ": top-level value must be an object");

    Scenario sc;
    sc.name = root.contains("name") ? root.at("name").get<std::string>() : "scenario";
    sc.hbar = number_or(root, "", "hbar", 1.0);
    if (!(sc.hbar > 0.0)) fail("hbar", "must be positive");

    const json& ref = member(root, "", "reference");
    sc.reference.t_ref = number_at(ref, "reference", "t_ref");
    if (!(sc.reference.t_ref > 0.0)) fail("reference.t_ref", "must be positive");

    parse_system(member(root, "", "system"), sc);
    parse_rescaling(member(root, "", "rescaling"), sc);
    parse_initial_state(member(root, "", "initial_state"), sc);

    const json& integ = member(root, "", "integrator");
    sc.dt = number_at(integ, "integrator", "dt");
    if (!(sc.dt > 0.0)) fail("integrator.dt", "must be positive");
    const double steps = sc.sched().t_ff() / sc.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
        fail("integrator.dt", "t_ff must be an integer number of dt steps");
    if (integ.contains("route")) {
        const std::string r = string_at(integ, "integrator", "route");
        if (r == "direct") sc.route = Route::direct;
        else if (r == "series") sc.route = Route::series;
        else if (r == "both") sc.route = Route::both;
        else fail("integrator.route", "expected direct|series|both");
    }
    sc.series_tol = number_or(integ, "integrator", "series_tol", 1e-10);
    if (!(sc.series_tol > 0.0)) fail("integrator.series_tol", "must be positive");
    if (integ.contains("series_k_max")) {
        if (!integ.at("series_k_max").is_number_integer() || integ.at("series_k_max").get<int>() < 1)
            fail("integrator.series_k_max", "expected a positive integer");
        sc.series_k_max = integ.at("series_k_max").get<int>();
    }

    parse_output(root, sc);

    if (root.contains("seed")) {
        if (!root.at("seed").is_number_unsigned() && !root.at("seed").is_number_integer())
            fail("seed", "expected an integer");
        sc.seed = root.at("seed").get<std::uint64_t>();
    }

    if (root.contains("tolerances")) {
        const json& tj = root.at("tolerances");
        sc.jacobi.rel_threshold = number_or(tj, "tolerances", "jacobi_rel_threshold", sc.jacobi.rel_threshold);
        if (tj.contains("jacobi_max_sweeps")) sc.jacobi.max_sweeps = tj.at("jacobi_max_sweeps").get<int>();
        sc.degeneracy_rel_threshold =
            number_or(tj, "tolerances", "degeneracy_rel_threshold", sc.degeneracy_rel_threshold);
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    Scenario sc = parse_scenario(os.str(), path.string());
    if (sc.name == "scenario") sc.name = path.stem().string();
    return sc;
}

}  // namespace ffscale::harness
