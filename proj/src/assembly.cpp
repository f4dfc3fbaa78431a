#include "nlsfem/assembly.hpp"

#include "nlsfem/simd/kernels.hpp"

#include <cmath>
#include <optional>

namespace nlsfem {

namespace {

// Tabulation for `quad`, reusing the space's cached tables for its default rules.
class TabulationFor {
public:
    TabulationFor(const FeSpace& space, const QuadratureRule& quad)
    {
        if (quad.dim == space.dim() && quad.points_per_dir == space.assembly_rule().points_per_dir) {
            tab_ = &space.assembly_tabulation();
        } else if (quad.dim == space.dim() && quad.points_per_dir == space.error_rule().points_per_dir) {
            tab_ = &space.error_tabulation();
        } else {
            owned_.emplace(space.basis().tabulate(quad));
            tab_ = &*owned_;
        }
    }

    const Tabulation& operator*() const noexcept { return *tab_; }
    const Tabulation* operator->() const noexcept { return tab_; }

private:
    std::optional<Tabulation> owned_;
    const Tabulation* tab_ = nullptr;
};

void scatter(RealCsr& target, std::span<const int> free, const std::vector<double>& local, std::size_t nd)
{
    const CsrPattern& p = *target.pattern;
    for (std::size_t a = 0; a < nd; ++a) {
        const int i = free[a];
        if (i < 0) continue;
        for (std::size_t b = 0; b < nd; ++b) {
            const int j = free[b];
            if (j < 0) continue;
            target.values[static_cast<std::size_t>(p.find(i, j))] += local[a * nd + b];
        }
    }
}

void scatter_vector(ComplexVector& target, std::span<const int> free, const ComplexVector& local)
{
    for (std::size_t a = 0; a < free.size(); ++a) {
        if (free[a] >= 0) target[static_cast<std::size_t>(free[a])] += local[a];
    }
}

} // namespace

SystemMatrices assemble_matrices(const FeSpacePtr& space)
{
    return assemble_matrices(space, space->assembly_rule());
}

SystemMatrices assemble_matrices(const FeSpacePtr& space, const QuadratureRule& quad)
{
    SystemMatrices S;
    S.space = space;
    S.pattern = build_pattern(*space);
    for (RealCsr* m : {&S.mass, &S.stiffness, &S.advection}) {
        m->pattern = S.pattern;
        m->values.assign(S.pattern->nnz(), 0.0);
    }

    const Mesh& mesh = space->mesh();
    const TabulationFor tab(*space, quad);
    const std::size_t nd = tab->dofs;
    const std::size_t nq = tab->points;
    const double jac = mesh.element_measure();
    const double inv_side = 1.0 / mesh.side();
    std::vector<double> Me(nd * nd);
    std::vector<double> Ke(nd * nd);
    std::vector<double> Ae(nd * nd);

    for (int e = 0; e < mesh.num_elements(); ++e) {
        std::fill(Me.begin(), Me.end(), 0.0);
        std::fill(Ke.begin(), Ke.end(), 0.0);
        std::fill(Ae.begin(), Ae.end(), 0.0);
        for (std::size_t q = 0; q < nq; ++q) {
            const double w = quad.weights[q] * jac;
            const Point y = mesh.map_to_physical(e, quad.points[q]);
            const double* N = tab->value.data() + q * nd;
            const double* Gx = tab->grad_x.data() + q * nd;
            const double* Gy = tab->grad_y.data() + q * nd;
            for (std::size_t a = 0; a < nd; ++a) {
                for (std::size_t b = 0; b < nd; ++b) {
                    const double gxb = Gx[b] * inv_side;
                    const double gyb = Gy[b] * inv_side;
                    Me[a * nd + b] += w * N[a] * N[b];
                    Ke[a * nd + b] += w * (Gx[a] * inv_side * gxb + Gy[a] * inv_side * gyb);
                    Ae[a * nd + b] += w * (y[0] * gxb + y[1] * gyb) * N[a];
                }
            }
        }
        const auto free = space->dofs().element_free(e);
        scatter(S.mass, free, Me, nd);
        scatter(S.stiffness, free, Ke, nd);
        scatter(S.advection, free, Ae, nd);
    }
    return S;
}

ComplexCsr combine(const SystemMatrices& S, Complex c_mass, Complex c_stiff, Complex c_adv)
{
    ComplexCsr out;
    out.pattern = S.pattern;
    out.values.resize(S.pattern->nnz());
    simd::active_kernels().combine3(c_mass, S.mass.values.data(), c_stiff, S.stiffness.values.data(),
                                    c_adv, S.advection.values.data(), out.values.data(),
                                    out.values.size());
    return out;
}

ComplexCsr system_matrix(const SystemMatrices& S, double t, double tau, const Coefficients& coeffs)
{
    // (i/(2k^2)) (K + i gamma A) = (i/(2k^2)) K - (gamma/(2k^2)) A
    const double half_inv_k2 = 0.5 * coeffs.inv_k2(t);
    const double gamma = coeffs.gamma(t);
    return combine(S, Complex{1.0 / tau, 0.0}, Complex{0.0, half_inv_k2},
                   Complex{-gamma * half_inv_k2, 0.0});
}

ComplexVector nonlinear_vector(const DiscreteField& w, double rho)
{
    return nonlinear_vector(w, rho, w.space()->assembly_rule());
}

ComplexVector nonlinear_vector(const DiscreteField& w, double rho, const QuadratureRule& quad)
{
    const FeSpace& space = *w.space();
    const auto& k = simd::active_kernels();
    const TabulationFor tab(space, quad);
    const std::size_t nd = tab->dofs;
    const std::size_t nq = tab->points;
    const double jac = space.mesh().element_measure();

    std::vector<double> weights(nq);
    for (std::size_t q = 0; q < nq; ++q) weights[q] = quad.weights[q] * jac;

    ComplexVector G(w.size());
    ComplexVector local(nd);
    ComplexVector at_points(nq);
    ComplexVector g_points(nq);
    ComplexVector contrib(nd);
    for (int e = 0; e < space.mesh().num_elements(); ++e) {
        w.gather(e, local);
        k.tab_eval(tab->value.data(), nq, nd, local.data(), at_points.data());
        k.nonlinear(at_points.data(), weights.data(), rho, g_points.data(), nq);
        std::fill(contrib.begin(), contrib.end(), Complex{});
        k.tab_accumulate(tab->value.data(), nq, nd, g_points.data(), contrib.data());
        scatter_vector(G, space.dofs().element_free(e), contrib);
    }
    return G;
}

ComplexVector load_vector(const FeSpacePtr& space, const SourceFunction& f, double t)
{
    return load_vector(space, f, t, space->assembly_rule());
}

ComplexVector load_vector(const FeSpacePtr& space, const SourceFunction& f, double t,
                          const QuadratureRule& quad)
{
    return project_rhs(space, [&](const Point& y) { return f(y, t); }, quad);
}

ComplexVector project_rhs(const FeSpacePtr& space, const ComplexFunction& u, const QuadratureRule& quad)
{
    const auto& k = simd::active_kernels();
    const TabulationFor tab(*space, quad);
    const std::size_t nd = tab->dofs;
    const std::size_t nq = tab->points;
    const Mesh& mesh = space->mesh();
    const double jac = mesh.element_measure();

    ComplexVector F(static_cast<std::size_t>(space->num_free()));
    ComplexVector values(nq);
    ComplexVector contrib(nd);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        for (std::size_t q = 0; q < nq; ++q) {
            values[q] = (quad.weights[q] * jac) * u(mesh.map_to_physical(e, quad.points[q]));
        }
        std::fill(contrib.begin(), contrib.end(), Complex{});
        k.tab_accumulate(tab->value.data(), nq, nd, values.data(), contrib.data());
        scatter_vector(F, space->dofs().element_free(e), contrib);
    }
    return F;
}

double l2_error(const DiscreteField& field, const ComplexFunction& exact)
{
    return l2_error(field, exact, field.space()->error_rule());
}

double l2_error(const DiscreteField& field, const ComplexFunction& exact, const QuadratureRule& quad)
{
    const FeSpace& space = *field.space();
    const auto& k = simd::active_kernels();
    const TabulationFor tab(space, quad);
    const std::size_t nd = tab->dofs;
    const std::size_t nq = tab->points;
    const Mesh& mesh = space.mesh();
    const double jac = mesh.element_measure();

    std::vector<double> weights(nq);
    for (std::size_t q = 0; q < nq; ++q) weights[q] = quad.weights[q] * jac;

    ComplexVector local(nd);
    ComplexVector uh(nq);
    ComplexVector ue(nq);
    double sum = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        field.gather(e, local);
        k.tab_eval(tab->value.data(), nq, nd, local.data(), uh.data());
        for (std::size_t q = 0; q < nq; ++q) {
            ue[q] = exact(mesh.map_to_physical(e, quad.points[q]));
        }
        sum += k.weighted_sq_diff(ue.data(), uh.data(), weights.data(), nq);
    }
    return std::sqrt(sum);
}

double h1_seminorm_error(const DiscreteField& field, const ComplexGradientFunction& exact_grad)
{
    const FeSpace& space = *field.space();
    const QuadratureRule& quad = space.error_rule();
    const Tabulation& tab = space.error_tabulation();
    const std::size_t nd = tab.dofs;
    const Mesh& mesh = space.mesh();
    const double jac = mesh.element_measure();
    const double inv_side = 1.0 / mesh.side();

    ComplexVector local(nd);
    double sum = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        field.gather(e, local);
        for (std::size_t q = 0; q < tab.points; ++q) {
            ComplexGradient gh{};
            for (std::size_t a = 0; a < nd; ++a) {
                gh[0] += (tab.grad_x[q * nd + a] * inv_side) * local[a];
                gh[1] += (tab.grad_y[q * nd + a] * inv_side) * local[a];
            }
            const ComplexGradient ge = exact_grad(mesh.map_to_physical(e, quad.points[q]));
            sum += quad.weights[q] * jac * (std::norm(ge[0] - gh[0]) + std::norm(ge[1] - gh[1]));
        }
    }
    return std::sqrt(sum);
}

double mass_norm_squared(const SystemMatrices& S, const ComplexVector& u)
{
    return bilinear(S.mass, u, u).real();
}

} // namespace nlsfem
