#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "madelung/field_table.hpp"
#include "madelung/run_config.hpp"

namespace madelung {

/// Command-line-level overrides applied on top of a RunConfig.
struct RunOptions {
    std::optional<std::string> out_dir_override;
    int threads = 0;  // 0: one worker per hardware thread
    bool rasters = false;
    std::optional<double> raster_cap_override;
};

struct RunResult {
    std::string report_text;  // the JSON report that was written
    std::filesystem::path report_path;
    std::vector<std::filesystem::path> artifacts;  // everything written, report last
    bool passed = true;  // false when a requested residual threshold failed
};

/// Evaluate the configured fields over the grid, write one CSV per requested
/// field (plus optional PGM rasters) and a JSON report. Deterministic: the
/// same config byte-reproduces every CSV regardless of worker count.
RunResult run(const RunConfig& cfg, const RunOptions& opts = RunOptions());

/// Residual-only run: no field files, three residual blocks in the report.
RunResult verify(const RunConfig& cfg, const RunOptions& opts = RunOptions());

/// One sample of the configured scenario/route at (x, t).
FieldSample sample_fields(const RunConfig& cfg, double x, double t);

/// Pointwise fields of the configured scenario/route, with the branch-cut
/// guard installed for lattice-like runs with n > 1 (for x < 0 the
/// pointwise-principal amplitude jumps where nu changes sign, so stencils
/// spanning such a crossing are skipped and counted).
FieldSet make_field_set(const RunConfig& cfg);

/// read_csv both files and compare them.
DiffReport compare_files(const std::filesystem::path& a, const std::filesystem::path& b,
                         double tol);

}  // namespace madelung
