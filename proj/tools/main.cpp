#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "madelung/runner.hpp"

namespace {

struct CommonFlags {
    std::string out_dir;
    int threads = 0;
    bool rasters = false;
    bool no_rasters = false;
    double cap = 0.0;
    bool cap_set = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--out-dir", flags.out_dir, "Write artifacts here instead of the configured directory");
    cmd->add_option("--threads", flags.threads, "Worker count for grid evaluation (0 = all hardware threads)")
        ->envname("MK_THREADS");
    auto* raster = cmd->add_flag("--raster", flags.rasters, "Also write PGM heatmaps");
    cmd->add_flag("--no-raster", flags.no_rasters, "Suppress PGM heatmaps")->excludes(raster);
    cmd->add_option("--cap", flags.cap, "Raster clipping magnitude (values beyond render black)")
        ->check(CLI::PositiveNumber);
}

madelung::RunOptions to_options(const CLI::App* cmd, const CommonFlags& flags) {
    madelung::RunOptions opts;
    if (!flags.out_dir.empty()) {
        opts.out_dir_override = flags.out_dir;
    }
    opts.threads = flags.threads;
    opts.rasters = flags.rasters && !flags.no_rasters;
    if (cmd->count("--cap") > 0) {
        opts.raster_cap_override = flags.cap;
    }
    return opts;
}

void print_residual_summary(const madelung::RunResult& result) {
    // The report text is already formatted JSON; point at it instead of
    // re-rendering everything.
    std::printf("report: %s\n", result.report_path.string().c_str());
    std::printf("%s\n", result.passed ? "all requested thresholds passed"
                                      : "RESIDUAL THRESHOLDS FAILED");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separable-phase wavefunction family: field tables, residual checks, rasters"};
    app.require_subcommand(1);

    std::string run_config_path;
    CommonFlags run_flags;
    CLI::App* cmd_run = app.add_subcommand("run", "Evaluate fields over the grid and write tables");
    cmd_run->add_option("config", run_config_path, "JSON run configuration")->required();
    add_common_flags(cmd_run, run_flags);

    std::string verify_config_path;
    CommonFlags verify_flags;
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "Check the PDE residuals of the configured fields");
    cmd_verify->add_option("config", verify_config_path, "JSON run configuration")->required();
    add_common_flags(cmd_verify, verify_flags);

    std::string compare_a;
    std::string compare_b;
    double compare_tol = 0.0;
    CLI::App* cmd_compare = app.add_subcommand("compare", "Compare two field tables");
    cmd_compare->add_option("a", compare_a, "First CSV table")->required();
    cmd_compare->add_option("b", compare_b, "Second CSV table")->required();
    cmd_compare->add_option("--tol", compare_tol, "Max allowed absolute difference")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            const madelung::RunConfig cfg = madelung::load_config(run_config_path);
            const madelung::RunResult result =
                madelung::run(cfg, to_options(cmd_run, run_flags));
            for (const auto& path : result.artifacts) {
                std::printf("wrote %s\n", path.string().c_str());
            }
            if (!result.passed) {
                std::printf("RESIDUAL THRESHOLDS FAILED\n");
                return 1;
            }
            return 0;
        }
        if (cmd_verify->parsed()) {
            const madelung::RunConfig cfg = madelung::load_config(verify_config_path);
            const madelung::RunResult result =
                madelung::verify(cfg, to_options(cmd_verify, verify_flags));
            print_residual_summary(result);
            return result.passed ? 0 : 1;
        }
        const madelung::DiffReport diff =
            madelung::compare_files(compare_a, compare_b, compare_tol);
        std::printf("max_abs %.17g max_rel %.17g worst_row %zu tol %.17g: %s\n",
                    diff.max_abs, diff.max_rel, diff.worst_row, diff.tol,
                    diff.passed ? "PASS" : "FAIL");
        return diff.passed ? 0 : 1;
    } catch (const madelung::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 2;
    }
}
