#pragma once

#include "nlsfem/basis.hpp"
#include "nlsfem/errors.hpp"
#include "nlsfem/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nlsfem {

enum class Mode { MmsSweep, TemporalCheck, Simulate };
enum class SourceKind { Manufactured, Zero };

std::string to_string(Mode mode);
std::string to_string(SourceKind source);

/// Validated run configuration. Defaults follow the reference experiments:
/// rho = 3, T = 1; the source is manufactured for convergence studies and
/// zero for plain simulations unless given.
struct RunConfig {
    Mode mode = Mode::Simulate;
    int dim = 1;
    BoundaryId boundary = BoundaryId::B1;
    BasisKind basis = BasisKind::LagrangeP1;
    double rho = 3.0;
    double T = 1.0;
    std::optional<int> nx;
    std::vector<int> nx_list;
    /// Fixed step; for mms_sweep its absence selects tau = h^((p+1)/2).
    std::optional<double> tau;
    std::vector<double> tau_list;
    SourceKind source = SourceKind::Zero;
    std::string out = ".";
    /// Write a snapshot every snap_stride levels; 0 selects automatically.
    int snap_stride = 0;
    /// Snapshot grid intervals per direction.
    int snap_grid = 200;

    bool operator==(const RunConfig&) const = default;
};

/// Every violation found, one message each.
class ConfigValidationError : public ConfigurationError {
public:
    explicit ConfigValidationError(std::vector<std::string> violations);

    [[nodiscard]] const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Parses flags (program name excluded). `--config FILE` reads a flat
/// key=value file using the flag names as keys; flags given on the command
/// line win over file values. Throws ConfigValidationError.
RunConfig parse_config(const std::vector<std::string>& args);

/// Flags that parse back to the same configuration.
std::vector<std::string> to_args(const RunConfig& config);

/// key=value document that parses back to the same configuration.
std::string to_config_text(const RunConfig& config);

std::string config_help();

} // namespace nlsfem
