#pragma once

#include "nlsfem/manufactured.hpp"

#include <string>
#include <vector>

namespace nlsfem {

/// Errors below this are treated as roundoff and excluded from slope fits.
inline constexpr double kErrorFloor = 1e-10;

/// Per-level L2 errors of one march against the exact solution.
struct ErrorSeries {
    std::vector<double> times;
    std::vector<double> errors;
    double max_error = 0.0;
};

/// E(h, tau) = max_m ||v(t_m) - U^m||_L2 over m = 0..N.
ErrorSeries error_max_over_time(const ManufacturedCase& mms, const FeSpacePtr& space, double tau);

/// Time step for a refinement level.
struct TauRule {
    enum class Kind { Coupled, Fixed };
    Kind kind = Kind::Coupled;
    double fixed = 0.0;

    static TauRule coupled() { return {}; }
    static TauRule fixed_step(double tau) { return {Kind::Fixed, tau}; }

    /// Coupled: N = ceil(T / h^((p+1)/2)), tau = T / N.
    [[nodiscard]] double tau_for(double h, int p, double T) const;
};

struct RunRecord {
    int nx = 0;
    double h = 0.0;
    double tau = 0.0;
    double error = 0.0;
    /// Slope against the previous record; NaN for the first or a degenerate pair.
    double pair_slope = 0.0;
    bool diverged = false;
    bool below_floor = false;
    std::string note;
    ErrorSeries series;
};

struct RunReport {
    std::string mode;
    std::string basis;
    std::string boundary;
    int dim = 1;
    double rho = 3.0;
    double T = 1.0;
    /// "h" for spatial sweeps, "tau" for temporal checks.
    std::string abscissa = "h";
    /// Sorted by decreasing abscissa.
    std::vector<RunRecord> records;
    /// Least-squares slope of log E against log abscissa; NaN if < 2 usable records.
    double global_slope = 0.0;

    [[nodiscard]] int usable_records() const;
};

/// Pair slopes and global least-squares slope, skipping diverged and
/// below-floor records.
void fit_slopes(RunReport& report);

struct SweepOptions {
    /// Skip remaining levels once E drops under kErrorFloor.
    bool stop_below_floor = true;
};

/// Spatial refinement study; nx_list strictly increasing with >= 3 entries.
RunReport convergence_sweep(const ManufacturedCase& mms, BasisKind basis, const std::vector<int>& nx_list,
                            const TauRule& rule, const SweepOptions& options = {});

/// Temporal study on a fixed mesh; tau_list needs >= 2 entries.
RunReport temporal_order_check(const ManufacturedCase& mms, BasisKind basis, int nx,
                               const std::vector<double>& tau_list);

/// Slope of log(errors) against log(abscissa) by least squares.
double least_squares_slope(const std::vector<double>& abscissa, const std::vector<double>& errors);

} // namespace nlsfem
