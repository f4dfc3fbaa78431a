#include "nlsfem/manufactured.hpp"

#include <cmath>
#include <numbers>

namespace nlsfem {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kOnePlusI{1.0, 1.0};

} // namespace

Complex ManufacturedCase::source(const Point& y, double t) const
{
    const Complex v = exact(y, t);
    const ComplexGradient g = gradient(y, t);
    const double k = law.k(t);
    const Complex advect = y[0] * g[0] + (dim == 2 ? y[1] * g[1] : Complex{});
    const Complex linear = time_derivative(y, t) - (law.k_prime(t) / k) * advect -
                           Complex{0.0, 1.0 / (k * k)} * laplacian(y, t);
    if (!nonlinear) {
        return linear;
    }
    const double power = rho == 0.0 ? 1.0 : std::pow(std::abs(v), rho);
    return linear + power * v;
}

SmoothFunction ManufacturedCase::at(double t) const
{
    SmoothFunction out;
    out.value = [this, t](const Point& y) { return exact(y, t); };
    out.gradient = [this, t](const Point& y) { return gradient(y, t); };
    if (mixed) {
        out.mixed = [this, t](const Point& y) { return mixed(y, t); };
    }
    return out;
}

SchrodingerProblem ManufacturedCase::problem() const
{
    SchrodingerProblem p;
    p.dom = DomainSpec(dim);
    p.law = law;
    p.rho = rho;
    p.nonlinear = nonlinear;
    p.T = T;
    // Copies keep the problem valid independently of this case object.
    p.v0 = [v = exact](const Point& y) { return v(y, 0.0); };
    p.grad_v0 = [g = gradient](const Point& y) { return g(y, 0.0); };
    p.f = [c = *this](const Point& y, double t) { return c.source(y, t); };
    return p;
}

ManufacturedCase builtin_case(int dim, BoundaryId law_id, double rho, double T)
{
    ManufacturedCase c;
    c.dim = DomainSpec(dim).dim();
    c.law = make_boundary(law_id, T);
    c.rho = rho;
    c.T = T;
    if (dim == 1) {
        c.exact = [](const Point& y, double t) { return std::sin(kPi * y[0]) * std::exp(-t) * kOnePlusI; };
        c.gradient = [](const Point& y, double t) {
            return ComplexGradient{kPi * std::cos(kPi * y[0]) * std::exp(-t) * kOnePlusI, Complex{}};
        };
        c.laplacian = [](const Point& y, double t) {
            return -kPi * kPi * std::sin(kPi * y[0]) * std::exp(-t) * kOnePlusI;
        };
        c.mixed = [](const Point&, double) { return Complex{}; };
    } else {
        c.exact = [](const Point& y, double t) {
            return std::sin(kPi * y[0]) * std::sin(kPi * y[1]) * std::exp(-t) * kOnePlusI;
        };
        c.gradient = [](const Point& y, double t) {
            const double e = std::exp(-t);
            return ComplexGradient{kPi * std::cos(kPi * y[0]) * std::sin(kPi * y[1]) * e * kOnePlusI,
                                   kPi * std::sin(kPi * y[0]) * std::cos(kPi * y[1]) * e * kOnePlusI};
        };
        c.laplacian = [](const Point& y, double t) {
            return -2.0 * kPi * kPi * std::sin(kPi * y[0]) * std::sin(kPi * y[1]) * std::exp(-t) * kOnePlusI;
        };
        c.mixed = [](const Point& y, double t) {
            return kPi * kPi * std::cos(kPi * y[0]) * std::cos(kPi * y[1]) * std::exp(-t) * kOnePlusI;
        };
    }
    c.time_derivative = [ex = c.exact](const Point& y, double t) { return -ex(y, t); };
    return c;
}

ManufacturedCase zero_case(int dim, BoundaryId law_id, double rho, double T)
{
    ManufacturedCase c;
    c.dim = DomainSpec(dim).dim();
    c.law = make_boundary(law_id, T);
    c.rho = rho;
    c.T = T;
    auto zero = [](const Point&, double) { return Complex{}; };
    c.exact = zero;
    c.time_derivative = zero;
    c.laplacian = zero;
    c.mixed = zero;
    c.gradient = [](const Point&, double) { return ComplexGradient{}; };
    return c;
}

SchrodingerProblem homogeneous_problem(int dim, BoundaryId law_id, double rho, double T)
{
    SchrodingerProblem p = builtin_case(dim, law_id, rho, T).problem();
    p.f = nullptr;
    return p;
}

} // namespace nlsfem
