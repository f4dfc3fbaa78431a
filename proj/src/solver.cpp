#include "nlsfem/solver.hpp"

#include "nlsfem/errors.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace nlsfem {

void SchrodingerProblem::validate() const
{
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw ConfigurationError("nonlinearity exponent rho must be finite and >= 0");
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw ConfigurationError("final time T must be positive");
    }
    if (!v0 || !grad_v0) {
        throw ConfigurationError("initial datum v0 and its gradient are required");
    }
}

DiscreteField ritz_project(const SystemMatrices& S, double gamma, double lambda,
                           const ComplexFunction& u, const ComplexGradientFunction& grad_u,
                           const QuadratureRule& quad)
{
    const FeSpacePtr& space = S.space;
    const Mesh& mesh = space->mesh();
    const Tabulation tab = space->basis().tabulate(quad);
    const std::size_t nd = tab.dofs;
    const double jac = mesh.element_measure();
    const double inv_side = 1.0 / mesh.side();
    const Complex i_gamma{0.0, gamma};

    ComplexVector b(static_cast<std::size_t>(space->num_free()));
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto free = space->dofs().element_free(e);
        for (std::size_t q = 0; q < tab.points; ++q) {
            const Point y = mesh.map_to_physical(e, quad.points[q]);
            const Complex uq = u(y);
            const ComplexGradient gq = grad_u(y);
            const double w = quad.weights[q] * jac;
            const Complex advect = y[0] * gq[0] + y[1] * gq[1];
            for (std::size_t a = 0; a < nd; ++a) {
                if (free[a] < 0) continue;
                const double N = tab.value[q * nd + a];
                const double gx = tab.grad_x[q * nd + a] * inv_side;
                const double gy = tab.grad_y[q * nd + a] * inv_side;
                b[static_cast<std::size_t>(free[a])] +=
                    w * (gq[0] * gx + gq[1] * gy + i_gamma * advect * N + lambda * uq * N);
            }
        }
    }

    const ComplexCsr op = combine(S, Complex{lambda, 0.0}, Complex{1.0, 0.0}, i_gamma);
    ComplexSparseSolver solver(S.pattern);
    solver.factorize(op);
    return DiscreteField(space, solver.solve(b));
}

DiscreteField ritz_project(const SystemMatrices& S, const Coefficients& coeffs, double t,
                           const ComplexFunction& u, const ComplexGradientFunction& grad_u)
{
    return ritz_project(S, coeffs.gamma(t), coeffs.lambda0(), u, grad_u, S.space->assembly_rule());
}

DiscreteField initial_field(const SchrodingerProblem& problem, const SystemMatrices& S,
                            const Coefficients& coeffs)
{
    return ritz_project(S, coeffs, 0.0, problem.v0, problem.grad_v0);
}

CrankNicolsonStepper::CrankNicolsonStepper(const SystemMatrices& S, const Coefficients& coeffs,
                                           const SchrodingerProblem& problem, double tau)
    : S_(S), coeffs_(coeffs), problem_(problem), tau_(tau), solver_(S.pattern)
{
    if (!(tau > 0.0)) {
        throw ConfigurationError("time step tau must be positive");
    }
}

DiscreteField CrankNicolsonStepper::advance(int m, const DiscreteField& U_prev,
                                            const DiscreteField& g_argument)
{
    const double t_mid = (m - 0.5) * tau_;
    if (!factored_at_ || *factored_at_ != t_mid) {
        const double half_inv_k2 = 0.5 * coeffs_.inv_k2(t_mid);
        const double gamma = coeffs_.gamma(t_mid);
        lhs_ = combine(S_, Complex{1.0 / tau_, 0.0}, Complex{0.0, half_inv_k2},
                       Complex{-gamma * half_inv_k2, 0.0});
        rhs_op_ = combine(S_, Complex{1.0 / tau_, 0.0}, Complex{0.0, -half_inv_k2},
                          Complex{gamma * half_inv_k2, 0.0});
        solver_.factorize(lhs_);
        factored_at_ = t_mid;
    }

    multiply(rhs_op_, U_prev.coefficients(), rhs_);
    if (problem_.nonlinear) {
        subtract_nonlinear(m, g_argument);
    }
    if (problem_.f) {
        const ComplexVector F = load_vector(S_.space, problem_.f, t_mid);
        for (std::size_t i = 0; i < rhs_.size(); ++i) rhs_[i] += F[i];
    }
    return DiscreteField(S_.space, solver_.solve(rhs_));
}

void CrankNicolsonStepper::subtract_nonlinear(int m, const DiscreteField& g_argument)
{
    const ComplexVector G = nonlinear_vector(g_argument, problem_.rho);
    for (std::size_t i = 0; i < rhs_.size(); ++i) {
        if (!std::isfinite(G[i].real()) || !std::isfinite(G[i].imag())) {
            throw DivergenceError(m, "non-finite nonlinear term at step " + std::to_string(m));
        }
        rhs_[i] -= G[i];
    }
}

DiscreteField CrankNicolsonStepper::predictor(const DiscreteField& U0)
{
    return advance(1, U0, U0);
}

DiscreteField CrankNicolsonStepper::corrector(const DiscreteField& U0, const DiscreteField& U1_minus)
{
    ComplexVector mid(U0.size());
    for (std::size_t i = 0; i < mid.size(); ++i) {
        mid[i] = 0.5 * (U1_minus.coefficients()[i] + U0.coefficients()[i]);
    }
    return advance(1, U0, DiscreteField(U0.space(), std::move(mid)));
}

DiscreteField CrankNicolsonStepper::step(int m, const DiscreteField& U_m1, const DiscreteField& U_m2)
{
    ComplexVector extrapolated(U_m1.size());
    for (std::size_t i = 0; i < extrapolated.size(); ++i) {
        extrapolated[i] = 1.5 * U_m1.coefficients()[i] - 0.5 * U_m2.coefficients()[i];
    }
    return advance(m, U_m1, DiscreteField(U_m1.space(), std::move(extrapolated)));
}

DiscreteField cn_step(StepperState& state, CrankNicolsonStepper& stepper)
{
    const int m = state.m + 1;
    if (m < 2 || state.U_prev2.size() == 0) {
        throw ConfigurationError("cn_step needs two stored levels (m >= 2)");
    }
    DiscreteField next = stepper.step(m, state.U_prev, state.U_prev2);
    state.U_prev2 = std::move(state.U_prev);
    state.U_prev = next;
    state.m = m;
    return next;
}

int step_count(double T, double tau)
{
    if (!(tau > 0.0)) {
        throw ConfigurationError("time step tau must be positive");
    }
    const double ratio = T / tau;
    const double N = std::round(ratio);
    if (N < 1.0 || std::abs(ratio - N) > 1e-9) {
        throw ConfigurationError("tau = " + std::to_string(tau) + " does not divide T = " + std::to_string(T));
    }
    return static_cast<int>(N);
}

MarchResult march(const SchrodingerProblem& problem, const FeSpacePtr& space, double tau,
                  const Observer& observer, const MarchOptions& options)
{
    const SystemMatrices S = assemble_matrices(space);
    return march(problem, S, tau, observer, options);
}

MarchResult march(const SchrodingerProblem& problem, const SystemMatrices& S, double tau,
                  const Observer& observer, const MarchOptions& options)
{
    problem.validate();
    const int N = step_count(problem.T, tau);
    const FeSpace& space = *S.space;
    if (space.dim() != problem.dom.dim()) {
        throw ConfigurationError("space and problem dimensions differ");
    }
    if (options.warnings != nullptr) {
        const double limit = std::pow(space.mesh().h(), space.dim() / 4.0);
        if (tau > limit) {
            *options.warnings << "warning: tau = " << tau << " exceeds h^(n/4) = " << limit
                              << "; the error estimate assumes tau = o(h^(n/4))\n";
        }
    }

    const Coefficients coeffs(problem.law, problem.dom, problem.T);
    CrankNicolsonStepper stepper(S, coeffs, problem, tau);

    MarchResult result;
    StepperState& state = result.state;
    state.tau = tau;
    state.U_prev = initial_field(problem, S, coeffs);
    const double norm0 = std::sqrt(mass_norm_squared(S, state.U_prev.coefficients()));
    const double limit = options.blowup_factor * (1.0 + norm0);

    auto accept = [&](int m, const DiscreteField& U) {
        if (!U.all_finite()) {
            throw DivergenceError(m, "non-finite solution at step " + std::to_string(m));
        }
        if (std::sqrt(mass_norm_squared(S, U.coefficients())) > limit) {
            throw DivergenceError(m, "solution norm blew up at step " + std::to_string(m));
        }
        if (observer) observer(m, m * tau, U);
        result.steps = m;
    };

    accept(0, state.U_prev);

    const DiscreteField U1_minus = stepper.predictor(state.U_prev);
    DiscreteField U1 = stepper.corrector(state.U_prev, U1_minus);
    accept(1, U1);
    state.U_prev2 = std::move(state.U_prev);
    state.U_prev = std::move(U1);
    state.m = 1;

    while (state.m < N) {
        const DiscreteField& next = cn_step(state, stepper);
        accept(state.m, next);
    }
    return result;
}

} // namespace nlsfem
