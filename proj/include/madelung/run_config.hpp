#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "madelung/free_particle.hpp"
#include "madelung/residuals.hpp"
#include "madelung/waveguide.hpp"

namespace madelung {

enum class Scenario { free_particle, waveguide };
enum class Route { closed, pipeline };

std::string to_string(Scenario s);
std::string to_string(Route r);

/// Parsed and validated run configuration with every default materialized.
struct RunConfig {
    Scenario scenario = Scenario::free_particle;
    Route route = Route::closed;
    std::optional<FreeParticleParams> free_particle;
    std::optional<WaveguideParams> waveguide;

    GridSpec grid;
    StencilConfig stencil;
    TruncationPolicy truncation;

    std::vector<std::string> outputs;  // sorted, unique
    std::string out_dir = "out";
    double raster_cap = 50.0;
    double residual_cap = 50.0;
    std::map<std::string, double> thresholds;  // schrodinger / continuity / qhj

    /// Canonical JSON text (defaults filled in, keys sorted) and its
    /// fingerprint; out_dir is not part of the fingerprint so relocating
    /// output does not rename artifacts.
    std::string canonical_text;
    std::string hash;

    std::string scenario_label() const { return to_string(scenario); }
};

/// Parse and validate a JSON configuration document.
/// Throws SchemaError for structural problems, InvariantViolation (incl.
/// NegativeDiscriminant) for value-level ones.
RunConfig parse_config(const std::string& text);

/// Read a file and parse_config its contents. Throws IoError.
RunConfig load_config(const std::filesystem::path& path);

/// The output-field names parse_config accepts.
const std::vector<std::string>& allowed_outputs();

}  // namespace madelung
