#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace nlsfem {

/// The fixed reference box (0,1)^dim on which the transformed problem is posed.
class DomainSpec {
public:
    explicit DomainSpec(int dim);

    [[nodiscard]] int dim() const noexcept { return dim_; }

    /// sup |y| over the box: 1 in 1D, sqrt(2) in 2D.
    [[nodiscard]] double d_omega() const noexcept;

private:
    int dim_;
};

enum class BoundaryId { B1, B2, B3, Custom };

/// Parses "b1" | "b2" | "b3". Throws ConfigurationError otherwise.
BoundaryId parse_boundary_id(std::string_view text);
std::string to_string(BoundaryId id);

/// Homothety k(t) mapping the reference box onto the moving domain, with its
/// derivative. Laws are defined for every t >= 0; k0 is the lower bound of k
/// on the horizon the law was built for.
class BoundaryLaw {
public:
    using Function = std::function<double(double)>;

    BoundaryLaw(BoundaryId id, Function k, Function k_prime, double k0);

    [[nodiscard]] BoundaryId id() const noexcept { return id_; }
    [[nodiscard]] double k(double t) const { return k_(t); }
    [[nodiscard]] double k_prime(double t) const { return k_prime_(t); }
    [[nodiscard]] double k0() const noexcept { return k0_; }

private:
    BoundaryId id_;
    Function k_;
    Function k_prime_;
    double k0_;
};

/// Built-in laws:
///   B1: k = 3/4 + cos(4 pi t)/4
///   B2: k = (t+2)/(4t+2)
///   B3: k = (16t+1)/(16t+2)
/// k0 is the analytic minimum of k on [0,T].
BoundaryLaw make_boundary(BoundaryId id, double T);

/// User-supplied law. k0 is the minimum of k over a 10^4-point grid on [0,T];
/// throws ConfigurationError if it is not positive.
BoundaryLaw make_custom_boundary(BoundaryLaw::Function k, BoundaryLaw::Function k_prime, double T);

/// Number of grid points used to estimate sup |k k'| on [0,T].
inline constexpr int kLambdaGridPoints = 10000;

/// Coercivity shift (d_omega * max_[0,T] |k k'|)^2 / 2, with the max sampled
/// on a uniform grid of kLambdaGridPoints + 1 points.
double lambda0(const BoundaryLaw& law, const DomainSpec& dom, double T);

/// gamma(t) = k(t) k'(t); throws DomainError for t outside [0,T].
double gamma_at(const BoundaryLaw& law, double t, double T);

/// Scalar coefficients of the transformed equation for one problem horizon.
class Coefficients {
public:
    Coefficients(BoundaryLaw law, DomainSpec dom, double T);

    [[nodiscard]] double gamma(double t) const { return gamma_at(law_, t, T_); }
    [[nodiscard]] double inv_k2(double t) const;
    [[nodiscard]] double lambda0() const noexcept { return lambda0_; }
    [[nodiscard]] double final_time() const noexcept { return T_; }
    [[nodiscard]] const BoundaryLaw& law() const noexcept { return law_; }
    [[nodiscard]] const DomainSpec& domain() const noexcept { return dom_; }

    /// max |gamma| over the lambda0 sampling grid.
    [[nodiscard]] double max_abs_gamma() const noexcept { return max_abs_gamma_; }

private:
    BoundaryLaw law_;
    DomainSpec dom_;
    double T_;
    double max_abs_gamma_;
    double lambda0_;
};

} // namespace nlsfem
