#include "nlsfem/assembly.hpp"

#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace nlsfem;
using nlsfem::testing::max_abs;
using nlsfem::testing::max_abs_diff;
using nlsfem::testing::random_vector;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr BasisKind kKinds[] = {BasisKind::LagrangeP1, BasisKind::LagrangeP2, BasisKind::LagrangeP3,
                                BasisKind::HermiteCubic};
constexpr BoundaryId kLaws[] = {BoundaryId::B1, BoundaryId::B2, BoundaryId::B3};

Complex quadratic(const RealCsr& B, const ComplexVector& u) { return bilinear(B, u, u); }

} // namespace

TEST(Assembly, SmallestP1SystemInClosedForm)
{
    const SystemMatrices S = assemble_matrices(make_space(1, 2, BasisKind::LagrangeP1));
    ASSERT_EQ(S.pattern->rows, 1);
    EXPECT_NEAR(S.mass.at(0, 0), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(S.stiffness.at(0, 0), 4.0, 1e-14);
    EXPECT_NEAR(S.advection.at(0, 0), -1.0 / 6.0, 1e-15);
    EXPECT_NEAR(2 * S.advection.at(0, 0), -S.mass.at(0, 0), 1e-15);
}

TEST(Assembly, AdvectionIdentityHoldsEverywhere)
{
    for (int dim : {1, 2}) {
        for (BasisKind kind : kKinds) {
            for (int nx : {2, 3, 8}) {
                const SystemMatrices S = assemble_matrices(make_space(dim, nx, kind));
                const CsrPattern& P = *S.pattern;
                double worst = 0.0, mmax = 0.0;
                for (int i = 0; i < P.rows; ++i) {
                    for (int k = P.row_ptr[i]; k < P.row_ptr[i + 1]; ++k) {
                        const int j = P.col[static_cast<std::size_t>(k)];
                        const double r = S.advection.at(i, j) + S.advection.at(j, i) + dim * S.mass.at(i, j);
                        worst = std::max(worst, std::abs(r));
                        mmax = std::max(mmax, std::abs(S.mass.at(i, j)));
                    }
                }
                EXPECT_LE(worst / mmax, 1e-12) << to_string(kind) << " dim=" << dim << " nx=" << nx;
            }
        }
    }
}

TEST(Assembly, MatricesAreSymmetricAndPatternShared)
{
    const SystemMatrices S = assemble_matrices(make_space(2, 4, BasisKind::HermiteCubic));
    EXPECT_EQ(S.mass.pattern, S.pattern);
    EXPECT_EQ(S.stiffness.pattern, S.pattern);
    EXPECT_EQ(S.advection.pattern, S.pattern);
    for (int i = 0; i < S.pattern->rows; ++i) {
        for (int k = S.pattern->row_ptr[i]; k < S.pattern->row_ptr[i + 1]; ++k) {
            const int j = S.pattern->col[static_cast<std::size_t>(k)];
            EXPECT_NEAR(S.mass.at(i, j), S.mass.at(j, i), 1e-15);
            EXPECT_NEAR(S.stiffness.at(i, j), S.stiffness.at(j, i), 1e-12);
        }
    }
}

TEST(Assembly, StiffnessAnnihilatesLiftedConstant)
{
    // Unconstrained P1 Laplacian row sums vanish; on the free block this
    // means K times ones equals minus the coupling to boundary nodes.
    // For nx = 4 in 1D: rows 1 and 3 couple once to a boundary node (-1/h).
    const SystemMatrices S = assemble_matrices(make_space(1, 4, BasisKind::LagrangeP1));
    const ComplexVector ones(3, Complex{1.0, 0.0});
    const ComplexVector Ku = multiply(S.stiffness, ones);
    EXPECT_NEAR(Ku[0].real(), 4.0, 1e-13);
    EXPECT_NEAR(Ku[1].real(), 0.0, 1e-13);
    EXPECT_NEAR(Ku[2].real(), 4.0, 1e-13);
}

TEST(Assembly, SystemMatrixScalars)
{
    const auto V = make_space(1, 2, BasisKind::LagrangeP1);
    const SystemMatrices S = assemble_matrices(V);
    const Coefficients unit(make_custom_boundary([](double) { return 1.0; }, [](double) { return 0.0; }, 1.0),
                            DomainSpec(1), 1.0);
    const ComplexCsr A = system_matrix(S, 0.5, 1.0, unit);
    EXPECT_NEAR(A.values[0].real(), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(A.values[0].imag(), 2.0, 1e-14);

    const Coefficients twice(make_custom_boundary([](double) { return 2.0; }, [](double) { return 0.0; }, 1.0),
                             DomainSpec(1), 1.0);
    EXPECT_NEAR(system_matrix(S, 0.5, 1.0, twice).values[0].imag(), 0.5, 1e-15);
}

TEST(Assembly, SystemMatrixIsAffineInInverseTau)
{
    const SystemMatrices S = assemble_matrices(make_space(2, 4, BasisKind::LagrangeP2));
    const Coefficients c(make_boundary(BoundaryId::B1, 1.0), DomainSpec(2), 1.0);
    auto frob_without_mass = [&](double tau) {
        const ComplexCsr A = system_matrix(S, 0.3, tau, c);
        double s = 0.0;
        for (std::size_t k = 0; k < A.values.size(); ++k) s += std::norm(A.values[k] - S.mass.values[k] / tau);
        return std::sqrt(s);
    };
    const double base = frob_without_mass(0.1);
    EXPECT_NEAR(frob_without_mass(0.05), base, 1e-12 * base);
    EXPECT_NEAR(frob_without_mass(0.025), base, 1e-12 * base);
}

TEST(Assembly, SystemMatrixAgreesWithHandCombination)
{
    const SystemMatrices S = assemble_matrices(make_space(2, 3, BasisKind::HermiteCubic));
    const Coefficients c(make_boundary(BoundaryId::B3, 1.0), DomainSpec(2), 1.0);
    const double t = 0.37, tau = 0.01;
    const double k = c.law().k(t), g = c.gamma(t);
    const ComplexCsr A = system_matrix(S, t, tau, c);
    for (std::size_t q = 0; q < A.values.size(); ++q) {
        const Complex expected = S.mass.values[q] / tau +
                                 Complex{0.0, 1.0 / (2 * k * k)} *
                                     (S.stiffness.values[q] + Complex{0.0, g} * S.advection.values[q]);
        ASSERT_NEAR(std::abs(A.values[q] - expected), 0.0, 1e-12 * std::abs(expected) + 1e-14);
    }
}

TEST(Assembly, CoercivityOnRandomVectors)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ut(0.0, 1.0);
    for (int dim : {1, 2}) {
        const SystemMatrices S = assemble_matrices(make_space(dim, 6, BasisKind::LagrangeP2));
        for (BoundaryId id : kLaws) {
            const Coefficients c(make_boundary(id, 1.0), DomainSpec(dim), 1.0);
            for (int trial = 0; trial < 50; ++trial) {
                const ComplexVector u = random_vector(static_cast<std::size_t>(S.pattern->rows), rng);
                const double t = ut(rng);
                const Complex K = quadratic(S.stiffness, u), M = quadratic(S.mass, u), A = quadratic(S.advection, u);
                const double lhs = (K + Complex{0.0, c.gamma(t)} * A).real() + c.lambda0() * M.real();
                EXPECT_GE(lhs, 0.5 * (K.real() + M.real()));
            }
        }
    }
}

TEST(Assembly, ContinuityOnRandomVectors)
{
    std::mt19937_64 rng(5);
    for (int dim : {1, 2}) {
        const SystemMatrices S = assemble_matrices(make_space(dim, 5, BasisKind::HermiteCubic));
        for (BoundaryId id : kLaws) {
            const Coefficients c(make_boundary(id, 1.0), DomainSpec(dim), 1.0);
            const double C = std::sqrt(1.0 + DomainSpec(dim).d_omega() * c.max_abs_gamma());
            for (int trial = 0; trial < 50; ++trial) {
                const auto n = static_cast<std::size_t>(S.pattern->rows);
                const ComplexVector u = random_vector(n, rng), w = random_vector(n, rng);
                const double t = 0.02 * trial;
                const Complex a = bilinear(S.stiffness, w, u) + Complex{0.0, c.gamma(t)} * bilinear(S.advection, w, u);
                const double nu = std::sqrt((quadratic(S.stiffness, u) + quadratic(S.mass, u)).real());
                const double nw = std::sqrt((quadratic(S.stiffness, w) + quadratic(S.mass, w)).real());
                EXPECT_LE(std::abs(a), C * nu * nw);
            }
        }
    }
}

TEST(Nonlinear, ZeroFieldGivesZeroVector)
{
    const DiscreteField z(make_space(2, 3, BasisKind::LagrangeP2));
    EXPECT_EQ(max_abs(nonlinear_vector(z, 3.0)), 0.0);
}

TEST(Nonlinear, LinearCaseEqualsMassTimesCoefficients)
{
    const auto V = make_space(1, 2, BasisKind::LagrangeP1);
    const SystemMatrices S = assemble_matrices(V);
    const DiscreteField w(V, ComplexVector{Complex{1.0, 1.0}});
    const ComplexVector G = nonlinear_vector(w, 0.0);
    EXPECT_NEAR(std::abs(G[0] - Complex{1.0, 1.0} / 3.0), 0.0, 1e-15);

    std::mt19937_64 rng(2);
    for (BasisKind kind : kKinds) {
        const auto V2 = make_space(2, 3, kind);
        const SystemMatrices S2 = assemble_matrices(V2);
        const DiscreteField u(V2, random_vector(static_cast<std::size_t>(V2->num_free()), rng));
        EXPECT_LE(max_abs_diff(nonlinear_vector(u, 0.0), multiply(S2.mass, u.coefficients())), 1e-13)
            << to_string(kind);
    }
}

TEST(Nonlinear, CubicPowerOnConstantModulus)
{
    // w = (1+i) phi on the single P1 hat: |w|^3 w = 2 sqrt2 (1+i) phi^4, so
    // G_0 = 2 sqrt2 (1+i) int phi^5 = 2 sqrt2 (1+i) * 2h/6.
    const auto V = make_space(1, 2, BasisKind::LagrangeP1);
    const DiscreteField w(V, ComplexVector{Complex{1.0, 1.0}});
    const ComplexVector G = nonlinear_vector(w, 3.0, gauss_rule(1, 4));
    const Complex expected = 2.0 * std::numbers::sqrt2 * Complex{1.0, 1.0} * (2.0 * 0.5 / 6.0);
    EXPECT_NEAR(std::abs(G[0] - expected), 0.0, 1e-14);
}

TEST(Load, ZeroAndPartitionOfUnity)
{
    const auto V = make_space(1, 4, BasisKind::LagrangeP1);
    EXPECT_EQ(max_abs(load_vector(V, [](const Point&, double) { return Complex{}; }, 0.0)), 0.0);

    const ComplexVector F = load_vector(V, [](const Point&, double) { return Complex{1.0, 0.0}; }, 0.0);
    Complex s{};
    for (const auto& z : F) s += z;
    // The two boundary hats each integrate to h/2.
    EXPECT_NEAR(s.real() + 2 * (0.25 / 2), 1.0, 1e-14);
}

TEST(Load, BasisFunctionGivesMassColumn)
{
    const auto V = make_space(1, 5, BasisKind::LagrangeP2);
    const SystemMatrices S = assemble_matrices(V);
    const int j = 3;
    ComplexVector e(static_cast<std::size_t>(V->num_free()));
    e[static_cast<std::size_t>(j)] = 1.0;
    const DiscreteField phi(V, e);
    const ComplexVector F = load_vector(V, [&](const Point& y, double) { return phi.evaluate(y); }, 0.0);
    for (int i = 0; i < V->num_free(); ++i) {
        EXPECT_NEAR(F[static_cast<std::size_t>(i)].real(), S.mass.at(i, j), 1e-14);
        EXPECT_NEAR(F[static_cast<std::size_t>(i)].imag(), 0.0, 1e-15);
    }
}

TEST(ErrorNorm, KnownIntegrals)
{
    const DiscreteField z1(make_space(1, 4, BasisKind::LagrangeP1));
    EXPECT_EQ(l2_error(z1, [](const Point&) { return Complex{}; }), 0.0);
    EXPECT_NEAR(l2_error(z1, [](const Point& y) { return Complex{std::sin(kPi * y[0]), 0.0}; }),
                std::sqrt(0.5), 1e-6);

    const DiscreteField z2(make_space(2, 4, BasisKind::LagrangeP1));
    EXPECT_NEAR(l2_error(z2,
                         [](const Point& y) {
                             return std::sin(kPi * y[0]) * std::sin(kPi * y[1]) * Complex{1.0, 1.0};
                         }),
                std::sqrt(0.5), 1e-6);
}

TEST(ErrorNorm, H1SeminormOfZeroField)
{
    // |sin(pi y)|_H1^2 = pi^2 / 2.
    const DiscreteField z(make_space(1, 8, BasisKind::LagrangeP2));
    const double e = h1_seminorm_error(z, [](const Point& y) {
        return ComplexGradient{Complex{kPi * std::cos(kPi * y[0]), 0.0}, {}};
    });
    EXPECT_NEAR(e, kPi / std::numbers::sqrt2, 1e-8);
}

TEST(ErrorNorm, MassNormMatchesQuadrature)
{
    std::mt19937_64 rng(9);
    const auto V = make_space(2, 3, BasisKind::LagrangeP3);
    const SystemMatrices S = assemble_matrices(V);
    const DiscreteField u(V, random_vector(static_cast<std::size_t>(V->num_free()), rng));
    const double l2 = l2_error(u, [](const Point&) { return Complex{}; });
    EXPECT_NEAR(mass_norm_squared(S, u.coefficients()), l2 * l2, 1e-12);
}
