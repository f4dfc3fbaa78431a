#pragma once

#include "nlsfem/field.hpp"
#include "nlsfem/geometry.hpp"
#include "nlsfem/quadrature.hpp"
#include "nlsfem/sparse.hpp"

#include <functional>

namespace nlsfem {

using SourceFunction = std::function<Complex(const Point&, double)>;

/// Real matrices over the free dofs, sharing one sparsity pattern:
///   mass       M_ij = (phi_j, phi_i)
///   stiffness  K_ij = (grad phi_j, grad phi_i)
///   advection  A_ij = (y . grad phi_j, phi_i)
/// The time-dependent form is a_L(t; u, w) = w^H K u + i gamma(t) w^H A u.
struct SystemMatrices {
    FeSpacePtr space;
    CsrPatternPtr pattern;
    RealCsr mass;
    RealCsr stiffness;
    RealCsr advection;
};

SystemMatrices assemble_matrices(const FeSpacePtr& space);
SystemMatrices assemble_matrices(const FeSpacePtr& space, const QuadratureRule& quad);

/// Combination c_M M + c_K K + c_A A on the shared pattern.
ComplexCsr combine(const SystemMatrices& S, Complex c_mass, Complex c_stiff, Complex c_adv);

/// Crank-Nicolson left operator M/tau + (i/(2 k(t)^2)) (K + i gamma(t) A).
ComplexCsr system_matrix(const SystemMatrices& S, double t, double tau, const Coefficients& coeffs);

/// G_i = (|w|^rho w, phi_i) by quadrature of the expanded field.
ComplexVector nonlinear_vector(const DiscreteField& w, double rho);
ComplexVector nonlinear_vector(const DiscreteField& w, double rho, const QuadratureRule& quad);

/// F_i = (f(., t), phi_i) by quadrature.
ComplexVector load_vector(const FeSpacePtr& space, const SourceFunction& f, double t);
ComplexVector load_vector(const FeSpacePtr& space, const SourceFunction& f, double t,
                          const QuadratureRule& quad);

/// b_i = (u, phi_i) for a function of space only.
ComplexVector project_rhs(const FeSpacePtr& space, const ComplexFunction& u, const QuadratureRule& quad);

/// ||exact - field||_L2 with the space's error rule (p + 3 points) unless given.
double l2_error(const DiscreteField& field, const ComplexFunction& exact);
double l2_error(const DiscreteField& field, const ComplexFunction& exact, const QuadratureRule& quad);

/// |exact - field|_H1 (gradient seminorm) by quadrature.
double h1_seminorm_error(const DiscreteField& field, const ComplexGradientFunction& exact_grad);

/// u^H M u.
double mass_norm_squared(const SystemMatrices& S, const ComplexVector& u);

} // namespace nlsfem
