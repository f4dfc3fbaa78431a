#include "nlsfem/config.hpp"

#include "nlsfem/report_io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

namespace nlsfem {

namespace {

struct RawFlags {
    std::string mode;
    std::string dim;
    std::string boundary;
    std::string basis;
    std::string rho;
    std::string T;
    std::string nx;
    std::string nx_list;
    std::string tau;
    std::string tau_list;
    std::string source;
    std::string out;
    std::string snap_stride;
    std::string snap_grid;
};

void register_flags(CLI::App& app, RawFlags& raw)
{
    app.set_config("--config", "", "flat key=value file; keys are flag names");
    app.add_option("--mode", raw.mode, "mms_sweep | temporal_check | simulate");
    app.add_option("--dim", raw.dim, "spatial dimension, 1 or 2");
    app.add_option("--boundary", raw.boundary, "boundary law: b1 | b2 | b3");
    app.add_option("--basis", raw.basis, "finite element basis: p1 | p2 | p3 | hermite");
    app.add_option("--rho", raw.rho, "nonlinearity exponent (default 3)");
    app.add_option("--T", raw.T, "final time (default 1)");
    app.add_option("--nx", raw.nx, "elements per direction");
    app.add_option("--nx-list", raw.nx_list, "comma-separated mesh levels for mms_sweep");
    app.add_option("--tau", raw.tau, "time step; omitted in mms_sweep selects tau = h^((p+1)/2)");
    app.add_option("--tau-list", raw.tau_list, "comma-separated time steps for temporal_check");
    app.add_option("--source", raw.source, "manufactured | zero");
    app.add_option("--out", raw.out, "output directory (default .)");
    app.add_option("--snap-stride", raw.snap_stride, "snapshot every n-th level; 0 = automatic");
    app.add_option("--snap-grid", raw.snap_grid, "snapshot grid intervals per direction (default 200)");
}

template <class T>
bool parse_number(const std::string& text, T& value)
{
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        items.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
    }
    return items;
}

bool divides(double T, double tau)
{
    const double ratio = T / tau;
    return std::abs(ratio - std::round(ratio)) <= 1e-9 && std::round(ratio) >= 1.0;
}

template <class T>
std::string join(const std::vector<T>& values)
{
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) s += ',';
        if constexpr (std::is_same_v<T, double>) {
            s += format_number(values[i]);
        } else {
            s += std::to_string(values[i]);
        }
    }
    return s;
}

std::vector<std::pair<std::string, std::string>> key_values(const RunConfig& c)
{
    std::vector<std::pair<std::string, std::string>> kv{
        {"mode", to_string(c.mode)},
        {"dim", std::to_string(c.dim)},
        {"boundary", to_string(c.boundary)},
        {"basis", to_string(c.basis)},
        {"rho", format_number(c.rho)},
        {"T", format_number(c.T)},
    };
    if (c.nx) kv.emplace_back("nx", std::to_string(*c.nx));
    if (!c.nx_list.empty()) kv.emplace_back("nx-list", join(c.nx_list));
    if (c.tau) kv.emplace_back("tau", format_number(*c.tau));
    if (!c.tau_list.empty()) kv.emplace_back("tau-list", join(c.tau_list));
    kv.emplace_back("source", to_string(c.source));
    kv.emplace_back("out", c.out);
    kv.emplace_back("snap-stride", std::to_string(c.snap_stride));
    kv.emplace_back("snap-grid", std::to_string(c.snap_grid));
    return kv;
}

} // namespace

std::string to_string(Mode mode)
{
    switch (mode) {
    case Mode::MmsSweep: return "mms_sweep";
    case Mode::TemporalCheck: return "temporal_check";
    case Mode::Simulate: return "simulate";
    }
    return "simulate";
}

std::string to_string(SourceKind source)
{
    return source == SourceKind::Manufactured ? "manufactured" : "zero";
}

ConfigValidationError::ConfigValidationError(std::vector<std::string> violations)
    : ConfigurationError([&] {
          std::string msg = "invalid configuration:";
          for (const auto& v : violations) msg += "\n  " + v;
          return msg;
      }()),
      violations_(std::move(violations))
{
}

RunConfig parse_config(const std::vector<std::string>& args)
{
    CLI::App app{"nlsfem"};
    RawFlags raw;
    register_flags(app, raw);

    std::vector<std::string> violations;
    try {
        // CLI11 consumes the vector from the back.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& err) {
        throw ConfigValidationError({err.what()});
    }

    RunConfig c;

    auto given = [&](const char* flag) { return app.count(flag) > 0; };
    auto require = [&](const char* flag) {
        if (!given(flag)) violations.push_back(std::string(flag) + ": required flag is missing");
        return given(flag);
    };
    auto forbid = [&](const char* flag, const std::string& mode) {
        if (given(flag)) violations.push_back(std::string(flag) + ": not used in " + mode + " mode");
    };

    bool mode_ok = false;
    if (require("--mode")) {
        if (raw.mode == "mms_sweep") {
            c.mode = Mode::MmsSweep;
            mode_ok = true;
        } else if (raw.mode == "temporal_check") {
            c.mode = Mode::TemporalCheck;
            mode_ok = true;
        } else if (raw.mode == "simulate") {
            c.mode = Mode::Simulate;
            mode_ok = true;
        } else {
            violations.push_back("--mode: unknown mode '" + raw.mode + "' (expected mms_sweep|temporal_check|simulate)");
        }
    }
    if (require("--dim")) {
        if (!parse_number(raw.dim, c.dim) || (c.dim != 1 && c.dim != 2)) {
            violations.push_back("--dim: must be 1 or 2, got '" + raw.dim + "'");
        }
    }
    if (require("--boundary")) {
        try {
            c.boundary = parse_boundary_id(raw.boundary);
        } catch (const ConfigurationError&) {
            violations.push_back("--boundary: unknown boundary '" + raw.boundary + "' (expected b1|b2|b3)");
        }
    }
    if (require("--basis")) {
        try {
            c.basis = parse_basis_kind(raw.basis);
        } catch (const ConfigurationError&) {
            violations.push_back("--basis: unknown basis '" + raw.basis + "' (expected p1|p2|p3|hermite)");
        }
    }
    if (given("--rho") && (!parse_number(raw.rho, c.rho) || !(c.rho >= 0.0) || !std::isfinite(c.rho))) {
        violations.push_back("--rho: must be a finite number >= 0, got '" + raw.rho + "'");
    }
    bool T_ok = true;
    if (given("--T") && (!parse_number(raw.T, c.T) || !(c.T > 0.0) || !std::isfinite(c.T))) {
        violations.push_back("--T: must be a positive number, got '" + raw.T + "'");
        T_ok = false;
    }
    if (given("--nx")) {
        int nx = 0;
        if (!parse_number(raw.nx, nx) || nx < 2) {
            violations.push_back("--nx: must be an integer >= 2, got '" + raw.nx + "'");
        } else {
            c.nx = nx;
        }
    }
    if (given("--nx-list")) {
        bool ok = true;
        for (const auto& item : split_list(raw.nx_list)) {
            int nx = 0;
            if (!parse_number(item, nx) || nx < 2) {
                violations.push_back("--nx-list: entry '" + item + "' is not an integer >= 2");
                ok = false;
                continue;
            }
            c.nx_list.push_back(nx);
        }
        for (std::size_t i = 1; ok && i < c.nx_list.size(); ++i) {
            if (c.nx_list[i] <= c.nx_list[i - 1]) {
                violations.push_back("--nx-list: entries must be strictly increasing");
                ok = false;
            }
        }
        if (ok && c.nx_list.size() < 3) {
            violations.push_back("--nx-list: needs at least 3 mesh levels");
        }
    }
    if (given("--tau")) {
        double tau = 0.0;
        if (!parse_number(raw.tau, tau) || !(tau > 0.0) || !std::isfinite(tau)) {
            violations.push_back("--tau: must be a positive number, got '" + raw.tau + "'");
        } else {
            c.tau = tau;
            if (T_ok && !divides(c.T, tau)) {
                violations.push_back("--tau: " + raw.tau + " does not divide T = " + format_number(c.T));
            }
        }
    }
    if (given("--tau-list")) {
        for (const auto& item : split_list(raw.tau_list)) {
            double tau = 0.0;
            if (!parse_number(item, tau) || !(tau > 0.0) || !std::isfinite(tau)) {
                violations.push_back("--tau-list: entry '" + item + "' is not a positive number");
                continue;
            }
            if (T_ok && !divides(c.T, tau)) {
                violations.push_back("--tau-list: " + item + " does not divide T = " + format_number(c.T));
            }
            c.tau_list.push_back(tau);
        }
        if (c.tau_list.size() < 2) {
            violations.push_back("--tau-list: needs at least 2 time steps");
        }
    }
    bool source_given = false;
    if (given("--source")) {
        if (raw.source == "manufactured") {
            c.source = SourceKind::Manufactured;
            source_given = true;
        } else if (raw.source == "zero") {
            c.source = SourceKind::Zero;
            source_given = true;
        } else {
            violations.push_back("--source: unknown source '" + raw.source + "' (expected manufactured|zero)");
        }
    }
    if (given("--out")) {
        if (raw.out.empty()) violations.push_back("--out: must not be empty");
        c.out = raw.out;
    }
    if (given("--snap-stride") && (!parse_number(raw.snap_stride, c.snap_stride) || c.snap_stride < 0)) {
        violations.push_back("--snap-stride: must be an integer >= 0, got '" + raw.snap_stride + "'");
    }
    if (given("--snap-grid") && (!parse_number(raw.snap_grid, c.snap_grid) || c.snap_grid < 1)) {
        violations.push_back("--snap-grid: must be an integer >= 1, got '" + raw.snap_grid + "'");
    }

    if (mode_ok) {
        const std::string m = to_string(c.mode);
        switch (c.mode) {
        case Mode::MmsSweep:
            require("--nx-list");
            forbid("--nx", m);
            forbid("--tau-list", m);
            break;
        case Mode::TemporalCheck:
            require("--nx");
            require("--tau-list");
            forbid("--nx-list", m);
            forbid("--tau", m);
            break;
        case Mode::Simulate:
            require("--nx");
            require("--tau");
            forbid("--nx-list", m);
            forbid("--tau-list", m);
            break;
        }
        if (c.mode != Mode::Simulate) {
            if (source_given && c.source != SourceKind::Manufactured) {
                violations.push_back("--source: " + m + " needs the manufactured source");
            }
            c.source = SourceKind::Manufactured;
        }
    }

    if (!violations.empty()) {
        throw ConfigValidationError(std::move(violations));
    }
    return c;
}

std::vector<std::string> to_args(const RunConfig& config)
{
    std::vector<std::string> args;
    for (const auto& [key, value] : key_values(config)) {
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

std::string to_config_text(const RunConfig& config)
{
    std::string text;
    for (const auto& [key, value] : key_values(config)) {
        text += key + "=\"" + value + "\"\n";
    }
    return text;
}

std::string config_help()
{
    CLI::App app{"nlsfem: linearized Crank-Nicolson Galerkin solver for the NLS equation on a moving domain"};
    RawFlags raw;
    register_flags(app, raw);
    return app.help();
}

} // namespace nlsfem
