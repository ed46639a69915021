#ifndef FFSCALE_SCENARIO_HPP
#define FFSCALE_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ffscale/assembler.hpp"
#include "ffscale/schedule.hpp"
#include "ffscale/spectral.hpp"

namespace ffscale::harness {

enum class Route { direct, series, both };

std::string route_name(Route r);

// A fully validated run configuration. See README for the JSON schema.
struct Scenario {
    std::string name;
    double hbar = 1.0;

    spectral::ReferenceHamiltonian reference;
    bool two_level = false;
    std::optional<spectral::CoefficientSchedule> hx;  // set for two-level systems
    std::optional<spectral::CoefficientSchedule> hz;

    std::optional<int> initial_level;         // eigenstate at t = 0
    std::optional<linalg::Vector> initial_amplitudes;

    std::optional<schedule::RescalingSchedule> rescaling;

    double dt = 1e-3;
    Route route = Route::direct;
    double series_tol = 1e-10;
    int series_k_max = 64;

    int output_stride = 1;
    std::vector<std::string> decomposition_names;
    std::vector<linalg::HermitianMatrix> decomposition_basis;

    std::uint64_t seed = 1;

    linalg::JacobiOptions jacobi;
    double degeneracy_rel_threshold = 1e-8;

    const schedule::RescalingSchedule& sched() const { return *rescaling; }
    spectral::FrameOptions frame_options() const {
        spectral::FrameOptions o;
        o.degeneracy_rel_threshold = degeneracy_rel_threshold;
        o.jacobi = jacobi;
        return o;
    }
};

// Throws ConfigError with a field path (and line number for parse errors).
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& json_text, const std::string& origin = "<string>");

}  // namespace ffscale::harness

#endif
