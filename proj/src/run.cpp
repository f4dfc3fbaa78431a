#include "nlsfem/run.hpp"

#include "nlsfem/report_io.hpp"
#include "nlsfem/simd/kernels.hpp"
#include "nlsfem/verification.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>

namespace nlsfem {

namespace fs = std::filesystem;

namespace {

nlohmann::json config_json(const RunConfig& c)
{
    nlohmann::json j;
    j["mode"] = to_string(c.mode);
    j["dim"] = c.dim;
    j["boundary"] = to_string(c.boundary);
    j["basis"] = to_string(c.basis);
    j["rho"] = c.rho;
    j["T"] = c.T;
    j["source"] = to_string(c.source);
    if (c.nx) j["nx"] = *c.nx;
    if (!c.nx_list.empty()) j["nx_list"] = c.nx_list;
    if (c.tau) j["tau"] = *c.tau;
    if (!c.tau_list.empty()) j["tau_list"] = c.tau_list;
    return j;
}

void write_json(const fs::path& path, const nlohmann::json& doc)
{
    write_text_file(path, doc.dump(2) + "\n");
}

void write_boundary(const RunConfig& c, const fs::path& dir)
{
    std::ostringstream buf;
    write_boundary_csv(make_boundary(c.boundary, c.T), c.T, buf);
    write_text_file(dir / "boundary.csv", buf.str());
}

void write_report_outputs(const RunReport& report, const RunConfig& c, const fs::path& dir)
{
    std::ostringstream rates;
    write_rates_csv(report, rates);
    write_text_file(dir / "rates.csv", rates.str());

    std::ostringstream series;
    write_error_series_csv(report, series);
    write_text_file(dir / "error_series.csv", series.str());

    nlohmann::json doc = report_to_json(report);
    doc["config"] = config_json(c);
    write_json(dir / "report.json", doc);
}

int simulate(const RunConfig& c, const fs::path& dir, std::ostream& log)
{
    const FeSpacePtr space = make_space(c.dim, *c.nx, c.basis);
    const ManufacturedCase mms = builtin_case(c.dim, c.boundary, c.rho, c.T);
    SchrodingerProblem problem = mms.problem();
    const bool manufactured = c.source == SourceKind::Manufactured;
    if (!manufactured) problem.f = nullptr;

    const double tau = *c.tau;
    const int N = step_count(c.T, tau);
    int stride = c.snap_stride;
    if (stride == 0) {
        stride = (c.dim == 2 && N % 4 == 0) ? N / 4 : 1;
    }

    const SystemMatrices S = assemble_matrices(space);
    std::ostringstream norms;
    norms << "m,t,mass_norm_sq\n";
    std::ostringstream errors;
    errors << "m,t,error\n";
    double max_error = 0.0;
    int snapshots = 0;

    auto finish = [&](int steps, const nlohmann::json& extra) {
        write_text_file(dir / "norm_series.csv", norms.str());
        if (manufactured) write_text_file(dir / "error_series.csv", errors.str());
        nlohmann::json doc{
            {"mode", "simulate"},
            {"config", config_json(c)},
            {"h", space->mesh().h()},
            {"tau", tau},
            {"steps", N},
            {"completed_steps", steps},
            {"snapshots", snapshots},
            {"free_dofs", space->num_free()},
        };
        if (manufactured) doc["E"] = max_error;
        doc.update(extra);
        write_json(dir / "report.json", doc);
    };

    MarchOptions options;
    options.warnings = &log;
    int last = -1;
    try {
        march(problem, S, tau, [&](int m, double t, const DiscreteField& U) {
            last = m;
            norms << m << ',' << format_number(t) << ',' << format_number(mass_norm_squared(S, U.coefficients()))
                  << '\n';
            if (manufactured) {
                const double e = l2_error(U, [&](const Point& y) { return mms.exact(y, t); });
                max_error = std::max(max_error, e);
                errors << m << ',' << format_number(t) << ',' << format_number(e) << '\n';
            }
            if (m % stride == 0 || m == N) {
                write_snapshot(U, t, dir / snapshot_name(t), c.snap_grid);
                ++snapshots;
            }
        }, options);
    } catch (const DivergenceError& err) {
        finish(last, {{"diverged", true}});
        write_json(dir / "error.json", {{"error", "divergence"}, {"step", err.step()}, {"message", err.what()}});
        log << "diverged: " << err.what() << '\n';
        return kExitDiverged;
    }
    finish(N, {{"diverged", false}});
    log << "simulate: " << N << " steps, " << snapshots << " snapshots written to " << dir.string() << '\n';
    return kExitOk;
}

} // namespace

int run(const RunConfig& c, std::ostream& log)
{
    const fs::path dir(c.out);
    fs::create_directories(dir);
    write_boundary(c, dir);
    log << "kernels: " << simd::active_kernels().name << '\n';

    switch (c.mode) {
    case Mode::Simulate:
        return simulate(c, dir, log);
    case Mode::MmsSweep: {
        const ManufacturedCase mms = builtin_case(c.dim, c.boundary, c.rho, c.T);
        const TauRule rule = c.tau ? TauRule::fixed_step(*c.tau) : TauRule::coupled();
        const RunReport report = convergence_sweep(mms, c.basis, c.nx_list, rule);
        write_report_outputs(report, c, dir);
        log << "mms_sweep: global slope " << format_number(report.global_slope) << '\n';
        const bool diverged = std::any_of(report.records.begin(), report.records.end(),
                                          [](const RunRecord& r) { return r.diverged; });
        return diverged ? kExitDiverged : kExitOk;
    }
    case Mode::TemporalCheck: {
        const ManufacturedCase mms = builtin_case(c.dim, c.boundary, c.rho, c.T);
        const RunReport report = temporal_order_check(mms, c.basis, *c.nx, c.tau_list);
        write_report_outputs(report, c, dir);
        log << "temporal_check: global slope " << format_number(report.global_slope) << '\n';
        const bool diverged = std::any_of(report.records.begin(), report.records.end(),
                                          [](const RunRecord& r) { return r.diverged; });
        return diverged ? kExitDiverged : kExitOk;
    }
    }
    return kExitFailure;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    if (std::find(args.begin(), args.end(), "--help") != args.end() ||
        std::find(args.begin(), args.end(), "-h") != args.end()) {
        out << config_help();
        return kExitOk;
    }
    RunConfig config;
    try {
        config = parse_config(args);
    } catch (const ConfigValidationError& e) {
        err << nlohmann::json{{"error", "invalid_config"}, {"violations", e.violations()}}.dump(2) << '\n';
        return kExitInvalidConfig;
    }
    try {
        return run(config, out);
    } catch (const std::exception& e) {
        err << nlohmann::json{{"error", "run_failed"}, {"message", e.what()}}.dump(2) << '\n';
        return kExitFailure;
    }
}

} // namespace nlsfem
