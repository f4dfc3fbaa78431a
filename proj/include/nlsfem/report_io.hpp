#pragma once

#include "nlsfem/field.hpp"
#include "nlsfem/geometry.hpp"
#include "nlsfem/verification.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace nlsfem {

/// Shortest round-trippable decimal ("%.17g"); "nan" for NaN.
std::string format_number(double value);

/// Header nx,h,tau,E,pair_slope; one row per record.
void write_rates_csv(const RunReport& report, std::ostream& out);

/// Header nx,tau,m,t,error; one row per level of every record.
void write_error_series_csv(const RunReport& report, std::ostream& out);

/// Full metadata and records. NaN values become null.
nlohmann::json report_to_json(const RunReport& report);

/// File name snap_t{t with six decimals}.csv.
std::string snapshot_name(double t);

/// CSV with header t,y1[,y2],re,im sampled on a uniform grid of
/// (intervals + 1)^dim points including the endpoints; y1 varies fastest.
void write_snapshot(const DiscreteField& field, double t, std::ostream& out, int intervals = 200);
void write_snapshot(const DiscreteField& field, double t, const std::filesystem::path& path,
                    int intervals = 200);

/// Samples t,k,k_prime of a law on [0,T].
void write_boundary_csv(const BoundaryLaw& law, double T, std::ostream& out, int samples = 1001);

/// Throws std::runtime_error if the file cannot be opened.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

} // namespace nlsfem
