#pragma once

#include "nlsfem/field.hpp"
#include "nlsfem/geometry.hpp"
#include "nlsfem/solver.hpp"

#include <functional>

namespace nlsfem {

using SpaceTimeFunction = std::function<Complex(const Point&, double)>;
using SpaceTimeGradient = std::function<ComplexGradient(const Point&, double)>;

/// Closed-form exact solution of the transformed problem together with the
/// derivatives needed to build its source term
///   f = v_t - (k'/k) y . grad v - (i/k^2) Lap v + |v|^rho v.
struct ManufacturedCase {
    int dim = 1;
    BoundaryLaw law = make_boundary(BoundaryId::B1, 1.0);
    double rho = 3.0;
    /// false drops |v|^rho v from both the equation and the source.
    bool nonlinear = true;
    double T = 1.0;

    SpaceTimeFunction exact;
    SpaceTimeFunction time_derivative;
    SpaceTimeGradient gradient;
    SpaceTimeFunction laplacian;
    /// d2 v / dy1 dy2 (2D Hermite interpolation only).
    SpaceTimeFunction mixed;

    [[nodiscard]] Complex source(const Point& y, double t) const;

    /// v(., t) as a SmoothFunction for interpolation and projection.
    [[nodiscard]] SmoothFunction at(double t) const;

    /// Problem with v0 = v(., 0) and f = source.
    [[nodiscard]] SchrodingerProblem problem() const;
};

/// v = sin(pi y)(1+i) e^-t in 1D, sin(pi y1) sin(pi y2)(1+i) e^-t in 2D.
ManufacturedCase builtin_case(int dim, BoundaryId law_id, double rho, double T = 1.0);

/// v = 0, f = 0 on the given law; used for degenerate-fit checks.
ManufacturedCase zero_case(int dim, BoundaryId law_id, double rho, double T = 1.0);

/// Problem with the builtin initial datum and no source (homogeneous runs).
SchrodingerProblem homogeneous_problem(int dim, BoundaryId law_id, double rho, double T = 1.0);

} // namespace nlsfem
