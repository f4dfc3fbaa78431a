#include "nlsfem/verification.hpp"

#include "nlsfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlsfem {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string law_name(const ManufacturedCase& mms)
{
    return to_string(mms.law.id());
}

RunRecord run_level(const ManufacturedCase& mms, BasisKind basis, int nx, double tau)
{
    const FeSpacePtr space = make_space(mms.dim, nx, basis);
    RunRecord rec;
    rec.nx = nx;
    rec.h = space->mesh().h();
    rec.tau = tau;
    try {
        rec.series = error_max_over_time(mms, space, tau);
        rec.error = rec.series.max_error;
    } catch (const DivergenceError& err) {
        rec.diverged = true;
        rec.error = kNaN;
        rec.note = err.what();
    }
    rec.below_floor = !rec.diverged && rec.error < kErrorFloor;
    return rec;
}

} // namespace

ErrorSeries error_max_over_time(const ManufacturedCase& mms, const FeSpacePtr& space, double tau)
{
    const SchrodingerProblem problem = mms.problem();
    ErrorSeries series;
    march(problem, space, tau, [&](int, double t, const DiscreteField& U) {
        const double e = l2_error(U, [&](const Point& y) { return mms.exact(y, t); });
        series.times.push_back(t);
        series.errors.push_back(e);
        series.max_error = std::max(series.max_error, e);
    });
    return series;
}

double TauRule::tau_for(double h, int p, double T) const
{
    if (kind == Kind::Fixed) return fixed;
    const double target = std::pow(h, 0.5 * (p + 1));
    const double steps = std::ceil(T / target - 1e-9);
    return T / std::max(1.0, steps);
}

int RunReport::usable_records() const
{
    return static_cast<int>(std::count_if(records.begin(), records.end(), [](const RunRecord& r) {
        return !r.diverged && !r.below_floor;
    }));
}

double least_squares_slope(const std::vector<double>& abscissa, const std::vector<double>& errors)
{
    const std::size_t n = abscissa.size();
    if (n < 2 || errors.size() != n) return kNaN;
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += std::log(abscissa[i]);
        sy += std::log(errors[i]);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(abscissa[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(errors[i]) - my);
    }
    return sxx > 0.0 ? sxy / sxx : kNaN;
}

void fit_slopes(RunReport& report)
{
    const bool by_tau = report.abscissa == "tau";
    auto x_of = [by_tau](const RunRecord& r) { return by_tau ? r.tau : r.h; };
    auto usable = [](const RunRecord& r) { return !r.diverged && !r.below_floor && r.error > 0.0; };

    std::vector<double> xs;
    std::vector<double> es;
    for (std::size_t i = 0; i < report.records.size(); ++i) {
        RunRecord& r = report.records[i];
        r.pair_slope = kNaN;
        if (i > 0) {
            const RunRecord& prev = report.records[i - 1];
            if (usable(r) && usable(prev) && x_of(r) != x_of(prev)) {
                r.pair_slope = std::log(prev.error / r.error) / std::log(x_of(prev) / x_of(r));
            }
        }
        if (usable(r)) {
            xs.push_back(x_of(r));
            es.push_back(r.error);
        }
    }
    report.global_slope = least_squares_slope(xs, es);
}

RunReport convergence_sweep(const ManufacturedCase& mms, BasisKind basis, const std::vector<int>& nx_list,
                            const TauRule& rule, const SweepOptions& options)
{
    if (nx_list.size() < 3) {
        throw ConfigurationError("convergence sweep needs at least 3 mesh levels");
    }
    for (std::size_t i = 1; i < nx_list.size(); ++i) {
        if (nx_list[i] <= nx_list[i - 1]) {
            throw ConfigurationError("nx list must be strictly increasing");
        }
    }

    RunReport report;
    report.mode = "mms_sweep";
    report.basis = to_string(basis);
    report.boundary = law_name(mms);
    report.dim = mms.dim;
    report.rho = mms.rho;
    report.T = mms.T;
    report.abscissa = "h";

    const int p = polynomial_degree(basis);
    for (const int nx : nx_list) {
        const double h = Mesh(mms.dim, nx).h();
        const double tau = rule.tau_for(h, p, mms.T);
        report.records.push_back(run_level(mms, basis, nx, tau));
        if (options.stop_below_floor && report.records.back().below_floor) break;
    }
    fit_slopes(report);
    return report;
}

RunReport temporal_order_check(const ManufacturedCase& mms, BasisKind basis, int nx,
                               const std::vector<double>& tau_list)
{
    if (tau_list.size() < 2) {
        throw ConfigurationError("temporal order check needs at least 2 time steps (insufficient points)");
    }
    std::vector<double> taus = tau_list;
    std::sort(taus.begin(), taus.end(), std::greater<>());

    RunReport report;
    report.mode = "temporal_check";
    report.basis = to_string(basis);
    report.boundary = law_name(mms);
    report.dim = mms.dim;
    report.rho = mms.rho;
    report.T = mms.T;
    report.abscissa = "tau";
    for (const double tau : taus) {
        report.records.push_back(run_level(mms, basis, nx, tau));
    }
    fit_slopes(report);
    return report;
}

} // namespace nlsfem
