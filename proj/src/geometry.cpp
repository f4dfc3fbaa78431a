#include "nlsfem/geometry.hpp"

#include "nlsfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlsfem {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_horizon(double T)
{
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw ConfigurationError("final time T must be positive, got " + std::to_string(T));
    }
}

double max_abs_kk(const BoundaryLaw& law, double T)
{
    double best = 0.0;
    for (int i = 0; i <= kLambdaGridPoints; ++i) {
        const double t = T * static_cast<double>(i) / kLambdaGridPoints;
        best = std::max(best, std::abs(law.k(t) * law.k_prime(t)));
    }
    return best;
}

} // namespace

DomainSpec::DomainSpec(int dim) : dim_(dim)
{
    if (dim != 1 && dim != 2) {
        throw ConfigurationError("dimension must be 1 or 2, got " + std::to_string(dim));
    }
}

double DomainSpec::d_omega() const noexcept
{
    return dim_ == 1 ? 1.0 : std::numbers::sqrt2;
}

BoundaryId parse_boundary_id(std::string_view text)
{
    if (text == "b1") return BoundaryId::B1;
    if (text == "b2") return BoundaryId::B2;
    if (text == "b3") return BoundaryId::B3;
    throw ConfigurationError("unknown boundary '" + std::string(text) + "' (expected b1|b2|b3)");
}

std::string to_string(BoundaryId id)
{
    switch (id) {
    case BoundaryId::B1: return "b1";
    case BoundaryId::B2: return "b2";
    case BoundaryId::B3: return "b3";
    case BoundaryId::Custom: return "custom";
    }
    return "custom";
}

BoundaryLaw::BoundaryLaw(BoundaryId id, Function k, Function k_prime, double k0)
    : id_(id), k_(std::move(k)), k_prime_(std::move(k_prime)), k0_(k0)
{
    if (!(k0_ > 0.0)) {
        throw ConfigurationError("boundary law must satisfy k(t) >= k0 > 0");
    }
}

BoundaryLaw make_boundary(BoundaryId id, double T)
{
    require_positive_horizon(T);
    switch (id) {
    case BoundaryId::B1: {
        auto k = [](double t) { return 0.75 + 0.25 * std::cos(4.0 * kPi * t); };
        auto kp = [](double t) { return -kPi * std::sin(4.0 * kPi * t); };
        // First minimum of cos(4 pi t) is at t = 1/4.
        const double k0 = T >= 0.25 ? 0.5 : k(T);
        return {id, k, kp, k0};
    }
    case BoundaryId::B2: {
        auto k = [](double t) { return (t + 2.0) / (4.0 * t + 2.0); };
        auto kp = [](double t) {
            const double d = 4.0 * t + 2.0;
            return -6.0 / (d * d);
        };
        // Decreasing on t >= 0.
        return {id, k, kp, k(T)};
    }
    case BoundaryId::B3: {
        auto k = [](double t) { return (16.0 * t + 1.0) / (16.0 * t + 2.0); };
        auto kp = [](double t) {
            const double d = 16.0 * t + 2.0;
            return 16.0 / (d * d);
        };
        // Increasing on t >= 0.
        return {id, k, kp, k(0.0)};
    }
    case BoundaryId::Custom:
        break;
    }
    throw ConfigurationError("make_boundary: custom laws need make_custom_boundary");
}

BoundaryLaw make_custom_boundary(BoundaryLaw::Function k, BoundaryLaw::Function k_prime, double T)
{
    require_positive_horizon(T);
    double k0 = k(0.0);
    for (int i = 1; i <= kLambdaGridPoints; ++i) {
        k0 = std::min(k0, k(T * static_cast<double>(i) / kLambdaGridPoints));
    }
    return {BoundaryId::Custom, std::move(k), std::move(k_prime), k0};
}

double lambda0(const BoundaryLaw& law, const DomainSpec& dom, double T)
{
    require_positive_horizon(T);
    const double s = dom.d_omega() * max_abs_kk(law, T);
    return 0.5 * s * s;
}

double gamma_at(const BoundaryLaw& law, double t, double T)
{
    // Midpoint times are computed as (m - 1/2) tau and may overshoot T by an ulp.
    const double slack = 1e-12 * std::max(1.0, T);
    if (!(t >= -slack && t <= T + slack)) {
        throw DomainError("gamma_at: t = " + std::to_string(t) + " outside [0, T]");
    }
    return law.k(t) * law.k_prime(t);
}

Coefficients::Coefficients(BoundaryLaw law, DomainSpec dom, double T)
    : law_(std::move(law)), dom_(dom), T_(T)
{
    require_positive_horizon(T);
    max_abs_gamma_ = max_abs_kk(law_, T_);
    const double s = dom_.d_omega() * max_abs_gamma_;
    lambda0_ = 0.5 * s * s;
}

double Coefficients::inv_k2(double t) const
{
    const double k = law_.k(t);
    return 1.0 / (k * k);
}

} // namespace nlsfem
