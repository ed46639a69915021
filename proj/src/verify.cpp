#include "ffscale/verify.hpp"

#include <cmath>
#include <sstream>

namespace ffscale::harness {

using assembler::FFAssembly;
using linalg::Complex;
using linalg::ComplexMatrix;

bool VerificationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (c.evaluated) {
            os << "  max_residual=" << c.max_residual << "  tol=" << c.tolerance;
            if (!c.worst_location.empty()) os << "  worst at " << c.worst_location;
        } else {
            os << "  " << c.worst_location;
        }
        os << "\n";
    }
    return os.str();
}

namespace {

struct Residual {
    double value = 0.0;
    std::string location;

    void update(double v, const std::string& loc) {
        if (v > value) {
            value = v;
            location = loc;
        }
    }
};

std::string at_time(double t) {
    std::ostringstream os;
    os << "t=" << t;
    return os.str();
}

void for_each_assembly(const RunResult& r, const std::function<void(const FFAssembly&)>& fn) {
    for (const auto& a : r.grid_assemblies) fn(a);
    for (const auto& a : r.step_assemblies) fn(a);
}

}  // namespace

VerificationReport verify_scenario(const Scenario& sc) {
    VerificationReport report;
    auto add = [&](const std::string& name, const Residual& res, double tol, bool evaluated = true) {
        CheckRecord c;
        c.name = name;
        c.max_residual = res.value;
        c.tolerance = tol;
        c.pass = evaluated && res.value <= tol;
        c.evaluated = evaluated;
        c.worst_location = res.location;
        report.checks.push_back(std::move(c));
    };

    RunResult run;
    bool run_ok = true;
    std::string run_error;
    try {
        run = run_scenario(sc);
    } catch (const Error& e) {
        run_ok = false;
        run_error = e.what();
    }

    {
        CheckRecord c;
        c.name = "run";
        c.pass = run_ok;
        c.evaluated = true;
        c.worst_location = run_error;
        report.checks.push_back(std::move(c));
    }
    if (!run_ok) {
        const char* names[] = {"population_matching", "diagonal_rule", "element_relation",
                               "hermiticity",         "unitarity",     "gauge_robustness"};
        for (const char* n : names) {
            Residual none;
            none.location = "not evaluated: run failed";
            add(n, none, 0.0, false);
        }
        if (sc.route == Route::both) {
            Residual none;
            none.location = "not evaluated: run failed";
            add("route_equivalence", none, 0.0, false);
        }
        return report;
    }

    const int dim = sc.reference.dim;

    Residual pop;
    for (size_t i = 0; i < run.fast_forward.times.size(); ++i)
        for (int n = 0; n < dim; ++n)
            pop.update(std::abs(run.fast_forward.populations[i][n] - run.reference.populations[i][n]),
                       at_time(run.fast_forward.times[i]) + " level " + std::to_string(n));
    add("population_matching", pop, 1e-5);

    Residual diag;
    for_each_assembly(run, [&](const FFAssembly& a) {
        for (int n = 0; n < dim; ++n) {
            Complex e = 0.0;
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    e += std::conj(a.frame.states(i, n)) * a.h_ff(i, j) * a.frame.states(j, n);
            diag.update(std::abs(e - Complex(a.frame.energies[n])),
                        at_time(a.t) + " level " + std::to_string(n));
        }
    });
    add("diagonal_rule", diag, 1e-10);

    Residual elem;
    for_each_assembly(run, [&](const FFAssembly& a) {
        const ComplexMatrix vd = a.frame.states.adjoint();
        const ComplexMatrix c = vd * a.h_cd.matrix() * a.frame.states;
        const ComplexMatrix nmat = vd * a.h_nad.matrix() * a.frame.states;
        for (int n = 0; n < dim; ++n)
            for (int m = 0; m < dim; ++m) {
                if (n == m) continue;
                const Complex ph = std::polar(1.0, -std::remainder(a.f[n] - a.f[m], 2.0 * M_PI));
                elem.update(std::abs(nmat(n, m) + ph * c(n, m)),
                            at_time(a.t) + " pair (" + std::to_string(n) + "," + std::to_string(m) + ")");
            }
    });
    add("element_relation", elem, 1e-12);

    if (sc.route == Route::both) {
        Residual route;
        route.update(run.stats.max_route_residual,
                     std::to_string(run.stats.route_steps_compared) + " steps compared, " +
                         std::to_string(run.stats.route_steps_skipped) + " beyond the phase window");
        add("route_equivalence", route, std::max(1e-8, 10.0 * sc.series_tol));
    }

    Residual herm;
    for_each_assembly(run, [&](const FFAssembly& a) {
        const ComplexMatrix recomposed =
            a.h_ref_s.matrix() + a.rate * (a.h_cd.matrix() + a.h_nad.matrix());
        herm.update(linalg::op_norm(recomposed - recomposed.adjoint()), at_time(a.t));
    });
    add("hermiticity", herm, 1e-11);

    Residual unit;
    unit.update(run.stats.max_unitarity_defect, "propagator steps");
    add("unitarity", unit, 1e-12);

    // seeded re-gauging of every frame must leave all populations alone
    {
        Residual gauge;
        RunOptions twisted;
        twisted.gauge_twist_seed = sc.seed;
        twisted.collect_assemblies = false;
        bool ok = true;
        std::string err;
        try {
            const RunResult rerun = run_scenario(sc, twisted);
            for (size_t i = 0; i < run.fast_forward.times.size(); ++i)
                for (int n = 0; n < dim; ++n) {
                    gauge.update(std::abs(run.fast_forward.populations[i][n] -
                                          rerun.fast_forward.populations[i][n]),
                                 at_time(run.fast_forward.times[i]) + " ff level " + std::to_string(n));
                    gauge.update(std::abs(run.reference.populations[i][n] -
                                          rerun.reference.populations[i][n]),
                                 at_time(run.reference.times[i]) + " ref level " + std::to_string(n));
                }
        } catch (const Error& e) {
            ok = false;
            err = e.what();
        }
        if (ok) {
            add("gauge_robustness", gauge, 1e-12);
        } else {
            Residual none;
            none.location = "re-gauged run failed: " + err;
            add("gauge_robustness", none, 0.0, false);
        }
    }

    return report;
}

}  // namespace ffscale::harness
