#include "madelung/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "madelung/hashing.hpp"

namespace madelung {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

using SliceFn = std::function<FieldSample(double)>;
using SliceFactory = std::function<SliceFn(double)>;

SliceFactory make_slice_factory(const RunConfig& cfg) {
    if (cfg.scenario == Scenario::free_particle) {
        const FreeParticleParams p = *cfg.free_particle;
        if (cfg.route == Route::closed) {
            return [p](double t) {
                return [p, t](double x) { return free_particle_sample(x, t, p); };
            };
        }
        auto ev = std::make_shared<PipelineEvaluator>(free_particle_ansatz(p),
                                                      free_particle_a0(p), cfg.truncation);
        return [ev](double t) {
            auto slice = std::make_shared<PipelineEvaluator::TimeSlice>(ev->slice(t));
            return [ev, slice](double x) { return slice->at(x); };
        };
    }
    const WaveguideParams p = *cfg.waveguide;
    if (cfg.route == Route::closed) {
        const double c = p.c;
        return [c](double t) {
            return [c, t](double x) { return waveguide_n1_sample(x, t, c); };
        };
    }
    auto ev = std::make_shared<PipelineEvaluator>(waveguide_pipeline(p, cfg.truncation));
    return [ev](double t) {
        auto slice = std::make_shared<PipelineEvaluator::TimeSlice>(ev->slice(t));
        return [ev, slice](double x) { return slice->at(x); };
    };
}

json power_sum_quadruples(const PowerSum& ps) {
    json arr = json::array();
    for (const PowerTerm& term : ps.terms()) {
        arr.push_back(json::array({term.coeff.real(), term.coeff.imag(),
                                   term.exponent.num, term.exponent.den}));
    }
    return arr;
}

cplx project_field(const FieldSample& s, const std::string& field) {
    if (field == "density") {
        return cplx(std::norm(s.psi), 0.0);
    }
    if (field == "amplitude_re") {
        return cplx(s.A.real(), 0.0);
    }
    if (field == "amplitude_im") {
        return cplx(s.A.imag(), 0.0);
    }
    if (field == "phase") {
        return s.S;
    }
    if (field == "potential") {
        return s.V;
    }
    if (field == "bohm") {
        return s.V_B;
    }
    throw InvariantViolation("unknown field projection '" + field + "'");
}

struct GridData {
    std::vector<double> xs;
    std::vector<double> ts;
    std::vector<char> keep;            // per x index; excluded columns are dropped
    std::vector<FieldSample> samples;  // row-major [ti * nx + ix], kept slots only
    long kept_columns = 0;
};

int resolve_threads(int requested, int rows) {
    int n = requested;
    if (n <= 0) {
        n = static_cast<int>(std::thread::hardware_concurrency());
    }
    n = std::max(1, std::min(n, rows));
    return n;
}

void evaluate_grid(const RunConfig& cfg, int threads, GridData& gd) {
    gd.xs = cfg.grid.xs();
    gd.ts = cfg.grid.ts();
    const int nx = cfg.grid.nx;
    const int nt = cfg.grid.nt;
    gd.keep.assign(static_cast<std::size_t>(nx), 1);
    for (int ix = 0; ix < nx; ++ix) {
        if (cfg.grid.excluded(gd.xs[static_cast<std::size_t>(ix)])) {
            gd.keep[static_cast<std::size_t>(ix)] = 0;
        }
    }
    gd.kept_columns = std::count(gd.keep.begin(), gd.keep.end(), 1);
    gd.samples.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(nt),
                      FieldSample{});

    const SliceFactory factory = make_slice_factory(cfg);
    std::atomic<int> next_row{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::string first_error;

    auto worker = [&]() {
        for (;;) {
            const int ti = next_row.fetch_add(1);
            if (ti >= nt || failed.load()) {
                return;
            }
            const double t = gd.ts[static_cast<std::size_t>(ti)];
            try {
                const SliceFn slice = factory(t);
                for (int ix = 0; ix < nx; ++ix) {
                    if (!gd.keep[static_cast<std::size_t>(ix)]) {
                        continue;
                    }
                    const double x = gd.xs[static_cast<std::size_t>(ix)];
                    try {
                        gd.samples[static_cast<std::size_t>(ti) * nx + ix] = slice(x);
                    } catch (const std::exception& e) {
                        std::ostringstream msg;
                        msg << "evaluation failed at (x = " << x << ", t = " << t
                            << "): " << e.what();
                        throw Error(msg.str());
                    }
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) {
                    first_error = e.what();
                }
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) {
        pool.emplace_back(worker);
    }
    for (std::thread& th : pool) {
        th.join();
    }
    if (failed.load()) {
        throw Error(first_error);
    }
}

FieldTable project_table(const RunConfig& cfg, const GridData& gd, const std::string& field) {
    FieldTable table;
    const std::size_t rows =
        static_cast<std::size_t>(gd.kept_columns) * static_cast<std::size_t>(cfg.grid.nt);
    table.x.reserve(rows);
    table.t.reserve(rows);
    table.value.reserve(rows);
    for (int ti = 0; ti < cfg.grid.nt; ++ti) {
        for (int ix = 0; ix < cfg.grid.nx; ++ix) {
            if (!gd.keep[static_cast<std::size_t>(ix)]) {
                continue;
            }
            const FieldSample& s =
                gd.samples[static_cast<std::size_t>(ti) * cfg.grid.nx + ix];
            const cplx v = project_field(s, field);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                std::ostringstream msg;
                msg << "non-finite " << field << " value at (x = "
                    << gd.xs[static_cast<std::size_t>(ix)]
                    << ", t = " << gd.ts[static_cast<std::size_t>(ti)] << ")";
                throw InvariantViolation(msg.str());
            }
            table.push(gd.xs[static_cast<std::size_t>(ix)],
                       gd.ts[static_cast<std::size_t>(ti)], v);
        }
    }
    return table;
}

/// 8-bit grayscale raster: linear over [0, cap] for densities and
/// [-cap, cap] for signed fields; clipped or unplottable cells are black,
/// like the masked regions of the reference plots. Top row = latest time.
std::string make_pgm(const RunConfig& cfg, const GridData& gd, const std::string& field,
                     double cap) {
    std::ostringstream header;
    header << "P5\n" << cfg.grid.nx << ' ' << cfg.grid.nt << "\n255\n";
    std::string out = header.str();
    out.reserve(out.size() +
                static_cast<std::size_t>(cfg.grid.nx) * static_cast<std::size_t>(cfg.grid.nt));
    const bool density = field == "density";
    for (int row = 0; row < cfg.grid.nt; ++row) {
        const int ti = cfg.grid.nt - 1 - row;
        for (int ix = 0; ix < cfg.grid.nx; ++ix) {
            unsigned char byte = 0;
            if (gd.keep[static_cast<std::size_t>(ix)]) {
                const FieldSample& s =
                    gd.samples[static_cast<std::size_t>(ti) * cfg.grid.nx + ix];
                const double v = project_field(s, field).real();
                if (std::isfinite(v)) {
                    if (density) {
                        if (v >= 0.0 && v <= cap) {
                            byte = static_cast<unsigned char>(std::lround(255.0 * v / cap));
                        }
                    } else if (v >= -cap && v <= cap) {
                        byte = static_cast<unsigned char>(
                            std::lround(255.0 * (v + cap) / (2.0 * cap)));
                    }
                }
            }
            out.push_back(static_cast<char>(byte));
        }
    }
    return out;
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failure on " + path.string());
    }
}

json residual_block(const ResidualReport& r, double threshold) {
    json block;
    block["equation"] = r.equation_id;
    block["linf"] = r.linf;
    block["l2"] = r.l2;
    block["worst_x"] = r.worst_x;
    block["worst_t"] = r.worst_t;
    block["points"] = r.points;
    block["skipped"] = r.skipped;
    block["stencil"] = {{"dx", r.stencil.dx}, {"dt", r.stencil.dt}, {"order", r.stencil.order}};
    block["threshold"] = threshold;
    block["passed"] = r.linf <= threshold;
    return block;
}

RunResult execute(const RunConfig& cfg, const RunOptions& opts, bool verify_only) {
    const auto t_total = Clock::now();
    const std::filesystem::path out_dir = opts.out_dir_override.value_or(cfg.out_dir);
    try {
        std::filesystem::create_directories(out_dir);
    } catch (const std::filesystem::filesystem_error& e) {
        throw IoError("cannot create output directory " + out_dir.string() + ": " +
                      e.what());
    }
    const double raster_cap = opts.raster_cap_override.value_or(cfg.raster_cap);
    if (!(raster_cap > 0.0)) {
        throw InvariantViolation("raster cap must be positive");
    }
    const int threads = resolve_threads(opts.threads, cfg.grid.nt);

    json report;
    report["scenario"] = cfg.scenario_label();
    report["route"] = to_string(cfg.route);
    report["config"] = json::parse(cfg.canonical_text);
    report["config_hash"] = cfg.hash;
    report["threads"] = threads;
    report["branch_conventions"] = {
        {"fractional_powers", "principal branch, Arg in (-pi, pi]"},
        {"square_root", "principal, applied pointwise"},
        {"integer_powers", "repeated multiplication (real on the negative axis)"}};
    if (cfg.scenario == Scenario::waveguide && cfg.waveguide->n > 1) {
        // Pointwise-principal roots make the x < 0 prefactor jump in t at
        // each sign change of nu; count the crossings the grid spans so the
        // report flags where skips come from.
        const std::vector<double> ts = cfg.grid.ts();
        int crossings = 0;
        for (std::size_t i = 1; i < ts.size(); ++i) {
            const double a = cfg.waveguide->time.nu(ts[i - 1]).real();
            const double b = cfg.waveguide->time.nu(ts[i]).real();
            if (a * b < 0.0) {
                ++crossings;
            }
        }
        report["branch_conventions"]["nu_sign_crossings_on_grid"] = crossings;
        report["branch_conventions"]["note"] =
            "for n > 1 and x < 0 the pointwise-principal prefactor jumps in t where nu "
            "changes sign; residual stencils spanning a crossing are skipped and counted";
    }

    // The separable-phase data behind this run, in serialized exact form:
    // every power sum is a list of (re, im, num, den) quadruples.
    json ansatz_info;
    if (cfg.scenario == Scenario::free_particle) {
        const FreeParticleParams& p = *cfg.free_particle;
        ansatz_info["q_prime"] = power_sum_quadruples(free_particle_ansatz(p).q_prime());
        ansatz_info["q_constant"] = json::array({0.0, 0.0});
        ansatz_info["c2"] = free_particle_c2(p.eta, p.kappa, p.c1, p.c2_sign);
    } else {
        ansatz_info["q_prime"] = power_sum_quadruples(waveguide_q_prime(cfg.waveguide->n));
        ansatz_info["q_constant"] = json::array({cfg.waveguide->c, 0.0});
    }
    report["ansatz"] = ansatz_info;

    bool passed = true;
    std::vector<std::filesystem::path> artifacts;
    json artifact_list = json::array();

    std::vector<std::string> field_outputs;
    bool want_residuals = verify_only;
    for (const std::string& name : cfg.outputs) {
        if (name == "residuals") {
            want_residuals = true;
        } else if (!verify_only) {
            field_outputs.push_back(name);
        }
    }

    double evaluate_ms = 0.0;
    double write_ms = 0.0;
    if (!field_outputs.empty()) {
        GridData gd;
        const auto t_eval = Clock::now();
        evaluate_grid(cfg, threads, gd);
        evaluate_ms = ms_since(t_eval);

        const auto t_write = Clock::now();
        for (const std::string& field : field_outputs) {
            const FieldTable table = project_table(cfg, gd, field);
            const std::string text = to_csv_text(table);
            const std::string name = field + "_" + cfg.scenario_label() + "_" + cfg.hash + ".csv";
            const std::filesystem::path path = out_dir / name;
            write_bytes(path, text);
            artifacts.push_back(path);
            artifact_list.push_back({{"file", name},
                                     {"kind", "table"},
                                     {"field", field},
                                     {"rows", table.rows()},
                                     {"fnv1a64", hex16(fnv1a64(text))}});
            if (opts.rasters) {
                const std::string pgm = make_pgm(cfg, gd, field, raster_cap);
                const std::string pgm_name =
                    field + "_" + cfg.scenario_label() + "_" + cfg.hash + ".pgm";
                const std::filesystem::path pgm_path = out_dir / pgm_name;
                write_bytes(pgm_path, pgm);
                artifacts.push_back(pgm_path);
                artifact_list.push_back({{"file", pgm_name},
                                         {"kind", "raster"},
                                         {"field", field},
                                         {"cap", raster_cap},
                                         {"fnv1a64", hex16(fnv1a64(pgm))}});
            }
        }
        write_ms = ms_since(t_write);
        report["grid"] = {{"nx", cfg.grid.nx},
                          {"nt", cfg.grid.nt},
                          {"kept_columns", gd.kept_columns},
                          {"rows_per_table", gd.kept_columns * cfg.grid.nt}};
    }

    double residual_ms = 0.0;
    if (want_residuals) {
        const auto t_res = Clock::now();
        const FieldSet fields = make_field_set(cfg);
        const ResidualOptions res_opts{cfg.residual_cap};
        json blocks = json::array();
        using ResidualFn = ResidualReport (*)(const FieldSet&, const GridSpec&,
                                              const StencilConfig&, const ResidualOptions&);
        const std::pair<const char*, ResidualFn> equations[] = {
            {"schrodinger", &residual_schrodinger},
            {"continuity", &residual_continuity},
            {"qhj", &residual_qhj}};
        for (const auto& entry : equations) {
            const ResidualReport r = entry.second(fields, cfg.grid, cfg.stencil, res_opts);
            const double threshold = cfg.thresholds.at(entry.first);
            blocks.push_back(residual_block(r, threshold));
            passed = passed && r.linf <= threshold;
        }
        report["residuals"] = blocks;
        residual_ms = ms_since(t_res);
    }

    report["artifacts"] = artifact_list;
    report["timing_ms"] = {{"evaluate", evaluate_ms},
                           {"write", write_ms},
                           {"residuals", residual_ms},
                           {"total", ms_since(t_total)}};
    report["passed"] = passed;

    const std::string report_name = std::string(verify_only ? "verify_" : "report_") +
                                    cfg.scenario_label() + "_" + cfg.hash + ".json";
    const std::filesystem::path report_path = out_dir / report_name;
    const std::string report_text = report.dump(2) + "\n";
    write_bytes(report_path, report_text);
    artifacts.push_back(report_path);

    RunResult result;
    result.report_text = report_text;
    result.report_path = report_path;
    result.artifacts = std::move(artifacts);
    result.passed = passed;
    return result;
}

}  // namespace

RunResult run(const RunConfig& cfg, const RunOptions& opts) {
    return execute(cfg, opts, /*verify_only=*/false);
}

RunResult verify(const RunConfig& cfg, const RunOptions& opts) {
    return execute(cfg, opts, /*verify_only=*/true);
}

FieldSample sample_fields(const RunConfig& cfg, double x, double t) {
    return make_slice_factory(cfg)(t)(x);
}

FieldSet make_field_set(const RunConfig& cfg) {
    auto sampler = std::make_shared<std::function<FieldSample(double, double)>>();
    const SliceFactory factory = make_slice_factory(cfg);
    // Residual probes cluster many x evaluations on one t (stencil rows), so
    // keep the most recent per-t slice. The cache makes the samplers
    // stateful: a FieldSet is meant for one probing loop, not shared across
    // threads.
    struct SliceCache {
        bool valid = false;
        double t = 0.0;
        SliceFn slice;
    };
    auto cache = std::make_shared<SliceCache>();
    *sampler = [factory, cache](double x, double t) {
        if (!cache->valid || cache->t != t) {
            cache->slice = factory(t);
            cache->t = t;
            cache->valid = true;
        }
        return cache->slice(x);
    };

    FieldSet fs;
    fs.A = [sampler](double x, double t) { return (*sampler)(x, t).A; };
    fs.S = [sampler](double x, double t) { return (*sampler)(x, t).S; };
    fs.V = [sampler](double x, double t) { return (*sampler)(x, t).V; };
    fs.V_B = [sampler](double x, double t) { return (*sampler)(x, t).V_B; };
    fs.psi = [sampler](double x, double t) { return (*sampler)(x, t).psi; };

    if (cfg.scenario == Scenario::waveguide && cfg.route == Route::pipeline &&
        cfg.waveguide->n > 1) {
        const TimeFn nu = cfg.waveguide->time.nu;
        fs.skip_guard = [nu](double x, double t, double x_span, double t_span) {
            if (x - x_span >= 0.0) {
                return false;  // footprint stays on the single-branch side
            }
            const double s0 = nu(t).real();
            const double sm = nu(t - t_span).real();
            const double sp = nu(t + t_span).real();
            const bool all_pos = s0 > 0.0 && sm > 0.0 && sp > 0.0;
            const bool all_neg = s0 < 0.0 && sm < 0.0 && sp < 0.0;
            return !(all_pos || all_neg);  // nu changes sign across the stencil
        };
    }
    return fs;
}

DiffReport compare_files(const std::filesystem::path& a, const std::filesystem::path& b,
                         double tol) {
    return compare(read_csv(a), read_csv(b), tol);
}

}  // namespace madelung
