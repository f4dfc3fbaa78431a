#pragma once

#include "nlsfem/assembly.hpp"
#include "nlsfem/linear_solve.hpp"

#include <functional>
#include <iosfwd>
#include <optional>

namespace nlsfem {

/// Transformed problem on the fixed box:
///   v_t - (k'/k) y . grad v - (i/k^2) Lap v + |v|^rho v = f,  v = 0 on the boundary.
struct SchrodingerProblem {
    DomainSpec dom{1};
    BoundaryLaw law = make_boundary(BoundaryId::B1, 1.0);
    double rho = 3.0;
    /// false drops the |v|^rho v term (plain linear Crank-Nicolson).
    bool nonlinear = true;
    double T = 1.0;
    ComplexFunction v0;
    ComplexGradientFunction grad_v0;
    /// Empty means f = 0.
    SourceFunction f;

    /// Throws ConfigurationError for rho < 0, T <= 0 or missing initial data.
    void validate() const;
};

/// Ritz projection onto the space for the shifted form
///   a_L0(t; u, w) = (grad u, grad w) + i gamma (y . grad u, w) + lambda (u, w).
/// Solves (K + i gamma A + lambda M) P = b with b assembled from u by quadrature.
DiscreteField ritz_project(const SystemMatrices& S, double gamma, double lambda,
                           const ComplexFunction& u, const ComplexGradientFunction& grad_u,
                           const QuadratureRule& quad);

/// Time-dependent projection P_h(t, u): gamma = gamma(t), lambda = lambda0.
DiscreteField ritz_project(const SystemMatrices& S, const Coefficients& coeffs, double t,
                           const ComplexFunction& u, const ComplexGradientFunction& grad_u);

/// U^0 = P_h(0, v0).
DiscreteField initial_field(const SchrodingerProblem& problem, const SystemMatrices& S,
                            const Coefficients& coeffs);

/// Two stored levels of the linearized Crank-Nicolson march.
struct StepperState {
    int m = 0;
    double tau = 0.0;
    DiscreteField U_prev;   // U^m
    DiscreteField U_prev2;  // U^(m-1), empty before the first step
};

/// One linear solve per level of the unified scheme
///   (dU, chi) + (i/k^2) a_L(t_mid; U_hat, chi) + (g^m, chi) = (f(t_mid), chi)
/// where the three level kinds differ only in the argument of g:
///   predictor 1-: U^0,  corrector 1: (U^1- + U^0)/2,  m >= 2: (3U^(m-1) - U^(m-2))/2.
class CrankNicolsonStepper {
public:
    CrankNicolsonStepper(const SystemMatrices& S, const Coefficients& coeffs,
                         const SchrodingerProblem& problem, double tau);

    /// Solve for the level after U_prev with midpoint t_mid = (m - 1/2) tau and
    /// nonlinearity evaluated at g_argument.
    DiscreteField advance(int m, const DiscreteField& U_prev, const DiscreteField& g_argument);

    DiscreteField predictor(const DiscreteField& U0);
    DiscreteField corrector(const DiscreteField& U0, const DiscreteField& U1_minus);
    /// m >= 2 from U^(m-1) and U^(m-2).
    DiscreteField step(int m, const DiscreteField& U_m1, const DiscreteField& U_m2);

    [[nodiscard]] double tau() const noexcept { return tau_; }
    [[nodiscard]] const ComplexCsr& last_matrix() const noexcept { return lhs_; }
    [[nodiscard]] const ComplexVector& last_rhs() const noexcept { return rhs_; }
    [[nodiscard]] double last_residual() const noexcept { return solver_.last_residual(); }

private:
    void subtract_nonlinear(int m, const DiscreteField& g_argument);

    const SystemMatrices& S_;
    const Coefficients& coeffs_;
    const SchrodingerProblem& problem_;
    double tau_;
    ComplexSparseSolver solver_;
    std::optional<double> factored_at_;
    ComplexCsr lhs_;
    ComplexCsr rhs_op_;
    ComplexVector rhs_;
};

/// Advance StepperState from level m-1 to m (m >= 2).
DiscreteField cn_step(StepperState& state, CrankNicolsonStepper& stepper);

/// Observer contract: called once per accepted level m = 0, 1, ..., N.
using Observer = std::function<void(int m, double t, const DiscreteField& U)>;

struct MarchOptions {
    /// Divergence when ||U^m||_M exceeds this factor times (1 + ||U^0||_M).
    double blowup_factor = 1e6;
    /// Receives the step-restriction warning; nullptr silences it.
    std::ostream* warnings = nullptr;
};

struct MarchResult {
    StepperState state;
    int steps = 0;
};

/// Number of steps N = T / tau; throws ConfigurationError unless integral within 1e-9.
int step_count(double T, double tau);

/// Full march: U^0 by Ritz projection, predictor, corrector, then m = 2..N.
/// Throws DivergenceError naming the first offending level.
MarchResult march(const SchrodingerProblem& problem, const FeSpacePtr& space, double tau,
                  const Observer& observer, const MarchOptions& options = {});
MarchResult march(const SchrodingerProblem& problem, const SystemMatrices& S, double tau,
                  const Observer& observer, const MarchOptions& options = {});

} // namespace nlsfem
