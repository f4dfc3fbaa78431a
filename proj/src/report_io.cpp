#include "nlsfem/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nlsfem {

std::string format_number(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_rates_csv(const RunReport& report, std::ostream& out)
{
    out << "nx,h,tau,E,pair_slope\n";
    for (const RunRecord& r : report.records) {
        out << r.nx << ',' << format_number(r.h) << ',' << format_number(r.tau) << ','
            << format_number(r.error) << ',' << format_number(r.pair_slope) << '\n';
    }
}

void write_error_series_csv(const RunReport& report, std::ostream& out)
{
    out << "nx,tau,m,t,error\n";
    for (const RunRecord& r : report.records) {
        for (std::size_t m = 0; m < r.series.errors.size(); ++m) {
            out << r.nx << ',' << format_number(r.tau) << ',' << m << ',' << format_number(r.series.times[m])
                << ',' << format_number(r.series.errors[m]) << '\n';
        }
    }
}

nlohmann::json report_to_json(const RunReport& report)
{
    auto num = [](double v) -> nlohmann::json {
        if (std::isfinite(v)) return v;
        return nullptr;
    };
    nlohmann::json records = nlohmann::json::array();
    for (const RunRecord& r : report.records) {
        records.push_back({
            {"nx", r.nx},
            {"h", num(r.h)},
            {"tau", num(r.tau)},
            {"E", num(r.error)},
            {"pair_slope", num(r.pair_slope)},
            {"diverged", r.diverged},
            {"below_floor", r.below_floor},
            {"note", r.note},
        });
    }
    return {
        {"mode", report.mode},
        {"basis", report.basis},
        {"boundary", report.boundary},
        {"dim", report.dim},
        {"rho", report.rho},
        {"T", report.T},
        {"abscissa", report.abscissa},
        {"error_floor", kErrorFloor},
        {"global_slope", num(report.global_slope)},
        {"records", records},
    };
}

std::string snapshot_name(double t)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "snap_t%.6f.csv", t);
    return buf;
}

void write_snapshot(const DiscreteField& field, double t, std::ostream& out, int intervals)
{
    const int dim = field.space()->dim();
    const std::string ts = format_number(t);
    if (dim == 1) {
        out << "t,y1,re,im\n";
        for (int i = 0; i <= intervals; ++i) {
            const double y = static_cast<double>(i) / intervals;
            const Complex v = field.evaluate({y, 0.0});
            out << ts << ',' << format_number(y) << ',' << format_number(v.real()) << ','
                << format_number(v.imag()) << '\n';
        }
        return;
    }
    out << "t,y1,y2,re,im\n";
    for (int j = 0; j <= intervals; ++j) {
        const double y2 = static_cast<double>(j) / intervals;
        for (int i = 0; i <= intervals; ++i) {
            const double y1 = static_cast<double>(i) / intervals;
            const Complex v = field.evaluate({y1, y2});
            out << ts << ',' << format_number(y1) << ',' << format_number(y2) << ','
                << format_number(v.real()) << ',' << format_number(v.imag()) << '\n';
        }
    }
}

void write_snapshot(const DiscreteField& field, double t, const std::filesystem::path& path, int intervals)
{
    std::ostringstream buf;
    write_snapshot(field, t, buf, intervals);
    write_text_file(path, buf.str());
}

void write_boundary_csv(const BoundaryLaw& law, double T, std::ostream& out, int samples)
{
    out << "t,k,k_prime\n";
    for (int i = 0; i < samples; ++i) {
        const double t = T * static_cast<double>(i) / (samples - 1);
        out << format_number(t) << ',' << format_number(law.k(t)) << ',' << format_number(law.k_prime(t))
            << '\n';
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    f << contents;
    if (!f) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

} // namespace nlsfem
