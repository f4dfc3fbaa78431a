#include "nlsfem/basis.hpp"
#include "nlsfem/errors.hpp"
#include "nlsfem/field.hpp"
#include "nlsfem/quadrature.hpp"
#include "nlsfem/space.hpp"

#include "test_support.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>

using namespace nlsfem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr BasisKind kKinds[] = {BasisKind::LagrangeP1, BasisKind::LagrangeP2, BasisKind::LagrangeP3,
                                BasisKind::HermiteCubic};

SmoothFunction smooth(int dim)
{
    // Non-symmetric so that derivative dofs are exercised in both directions.
    SmoothFunction f;
    if (dim == 1) {
        f.value = [](const Point& y) { return Complex{std::sin(kPi * y[0]), 0.5 * std::sin(2 * kPi * y[0])}; };
        f.gradient = [](const Point& y) {
            return ComplexGradient{Complex{kPi * std::cos(kPi * y[0]), kPi * std::cos(2 * kPi * y[0])}, {}};
        };
    } else {
        f.value = [](const Point& y) { return Complex{1.0, -2.0} * std::sin(kPi * y[0]) * std::sin(2 * kPi * y[1]); };
        f.gradient = [](const Point& y) {
            const Complex c{1.0, -2.0};
            return ComplexGradient{c * kPi * std::cos(kPi * y[0]) * std::sin(2 * kPi * y[1]),
                                   c * (2 * kPi) * std::sin(kPi * y[0]) * std::cos(2 * kPi * y[1])};
        };
        f.mixed = [](const Point& y) {
            return Complex{1.0, -2.0} * (2 * kPi * kPi) * std::cos(kPi * y[0]) * std::cos(2 * kPi * y[1]);
        };
    }
    return f;
}

double max_error_at_quadrature_points(const DiscreteField& field, const ComplexFunction& exact)
{
    const FeSpace& V = *field.space();
    double err = 0.0;
    for (int e = 0; e < V.mesh().num_elements(); ++e) {
        for (const Point& xi : V.error_rule().points) {
            const Point y = V.mesh().map_to_physical(e, xi);
            err = std::max(err, std::abs(exact(y) - field.evaluate(y)));
        }
    }
    return err;
}

} // namespace

TEST(Quadrature, TwoPointRule)
{
    const QuadratureRule r = gauss_rule(1, 2);
    ASSERT_EQ(r.size(), 2u);
    const double d = 1.0 / (2.0 * std::sqrt(3.0));
    EXPECT_NEAR(r.points[0][0], 0.5 - d, 1e-15);
    EXPECT_NEAR(r.points[1][0], 0.5 + d, 1e-15);
    EXPECT_NEAR(r.weights[0], 0.5, 1e-15);
    EXPECT_NEAR(r.weights[1], 0.5, 1e-15);
}

TEST(Quadrature, ExactnessDegree)
{
    const QuadratureRule r = gauss_rule(1, 3);
    double s = 0.0;
    for (std::size_t q = 0; q < r.size(); ++q) s += r.weights[q] * std::pow(r.points[q][0], 4);
    EXPECT_NEAR(s, 0.2, 1e-15);

    for (int n = 1; n <= 10; ++n) {
        const QuadratureRule rn = gauss_rule(1, n);
        const int deg = 2 * n - 1;
        double m = 0.0;
        for (std::size_t q = 0; q < rn.size(); ++q) m += rn.weights[q] * std::pow(rn.points[q][0], deg);
        EXPECT_NEAR(m, 1.0 / (deg + 1), 1e-14) << "n=" << n;
    }
}

TEST(Quadrature, TensorRule)
{
    const QuadratureRule r = gauss_rule(2, 2);
    ASSERT_EQ(r.size(), 4u);
    double w = 0.0, xy = 0.0;
    for (std::size_t q = 0; q < r.size(); ++q) {
        w += r.weights[q];
        xy += r.weights[q] * r.points[q][0] * r.points[q][0] * r.points[q][1];
    }
    EXPECT_NEAR(w, 1.0, 1e-15);
    EXPECT_NEAR(xy, 1.0 / 6.0, 1e-15);
    EXPECT_LT(r.points[0][0], r.points[1][0]);
    EXPECT_EQ(r.points[0][1], r.points[1][1]);
}

TEST(Quadrature, RejectsOutOfRange)
{
    EXPECT_THROW(gauss_rule(1, 0), ConfigurationError);
    EXPECT_THROW(gauss_rule(1, 11), ConfigurationError);
    EXPECT_THROW(gauss_rule(3, 2), ConfigurationError);
}

TEST(Basis, ReferenceValues)
{
    const Basis1D p1(BasisKind::LagrangeP1);
    EXPECT_DOUBLE_EQ(p1.value(0, 0.5), 0.5);
    EXPECT_DOUBLE_EQ(p1.value(1, 0.5), 0.5);

    const Basis1D p2(BasisKind::LagrangeP2);
    EXPECT_NEAR(p2.value(0, 0.5), 0.0, 1e-15);
    EXPECT_NEAR(p2.value(1, 0.5), 1.0, 1e-15);
    EXPECT_NEAR(p2.value(2, 0.5), 0.0, 1e-15);

    const Basis1D h(BasisKind::HermiteCubic);
    EXPECT_DOUBLE_EQ(h.value(0, 0.0), 1.0);
    for (int a = 1; a < 4; ++a) EXPECT_DOUBLE_EQ(h.value(a, 0.0), 0.0);
}

TEST(Basis, HermiteInterpolationConditions)
{
    const Basis1D h(BasisKind::HermiteCubic);
    // Rows: value at 0, slope at 0, value at 1, slope at 1.
    for (int a = 0; a < 4; ++a) {
        EXPECT_NEAR(h.value(a, 0.0), a == 0 ? 1.0 : 0.0, 1e-15);
        EXPECT_NEAR(h.derivative(a, 0.0), a == 1 ? 1.0 : 0.0, 1e-15);
        EXPECT_NEAR(h.value(a, 1.0), a == 2 ? 1.0 : 0.0, 1e-15);
        EXPECT_NEAR(h.derivative(a, 1.0), a == 3 ? 1.0 : 0.0, 1e-15);
    }
}

TEST(Basis, LagrangeKroneckerAndPartitionOfUnity)
{
    for (BasisKind kind : {BasisKind::LagrangeP1, BasisKind::LagrangeP2, BasisKind::LagrangeP3}) {
        const Basis1D b(kind);
        const int p = polynomial_degree(kind);
        for (int a = 0; a <= p; ++a) {
            for (int c = 0; c <= p; ++c) {
                EXPECT_NEAR(b.value(a, static_cast<double>(c) / p), a == c ? 1.0 : 0.0, 1e-14);
            }
        }
        for (double xi : {0.1, 0.37, 0.8}) {
            double s = 0.0, ds = 0.0;
            for (int a = 0; a <= p; ++a) {
                s += b.value(a, xi);
                ds += b.derivative(a, xi);
            }
            EXPECT_NEAR(s, 1.0, 1e-14);
            EXPECT_NEAR(ds, 0.0, 1e-12);
        }
    }
}

TEST(Basis, GradientMatchesCentralDifference)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const double eps = 1e-6;
    for (int dim : {1, 2}) {
        for (BasisKind kind : kKinds) {
            const BasisFamily basis(kind, dim);
            for (int trial = 0; trial < 20; ++trial) {
                const Point xi{u(rng), dim == 2 ? u(rng) : 0.0};
                for (int a = 0; a < basis.dofs_per_element(); ++a) {
                    const auto g = basis.gradient(a, xi);
                    for (int d = 0; d < dim; ++d) {
                        Point lo = xi, hi = xi;
                        lo[static_cast<std::size_t>(d)] -= eps;
                        hi[static_cast<std::size_t>(d)] += eps;
                        const double fd = (basis.value(a, hi) - basis.value(a, lo)) / (2 * eps);
                        ASSERT_NEAR(g[static_cast<std::size_t>(d)], fd, 1e-6)
                            << to_string(kind) << " dim=" << dim << " a=" << a;
                    }
                }
            }
        }
    }
}

TEST(Basis, TabulationMatchesPointwiseEvaluation)
{
    const BasisFamily basis(BasisKind::LagrangeP2, 2);
    const QuadratureRule rule = gauss_rule(2, 3);
    const Tabulation tab = basis.tabulate(rule);
    ASSERT_EQ(tab.points, rule.size());
    ASSERT_EQ(tab.dofs, 9u);
    for (std::size_t q = 0; q < tab.points; ++q) {
        for (std::size_t a = 0; a < tab.dofs; ++a) {
            const int ai = static_cast<int>(a);
            EXPECT_DOUBLE_EQ(tab.value[q * tab.dofs + a], basis.value(ai, rule.points[q]));
            EXPECT_DOUBLE_EQ(tab.grad_x[q * tab.dofs + a], basis.gradient(ai, rule.points[q])[0]);
            EXPECT_DOUBLE_EQ(tab.grad_y[q * tab.dofs + a], basis.gradient(ai, rule.points[q])[1]);
        }
    }
}

TEST(Basis, ParsesKinds)
{
    EXPECT_EQ(parse_basis_kind("p1"), BasisKind::LagrangeP1);
    EXPECT_EQ(parse_basis_kind("hermite"), BasisKind::HermiteCubic);
    EXPECT_THROW(parse_basis_kind("p4"), ConfigurationError);
    EXPECT_EQ(polynomial_degree(BasisKind::HermiteCubic), 3);
}

TEST(Mesh, SizesAndDiameter)
{
    EXPECT_DOUBLE_EQ(build_mesh(1, 32).h(), 1.0 / 32);
    EXPECT_DOUBLE_EQ(build_mesh(2, 32).h(), std::numbers::sqrt2 / 32);
    const Mesh m = build_mesh(1, 2);
    EXPECT_EQ(m.num_elements(), 2);
    EXPECT_EQ(m.num_vertices(), 3);
    EXPECT_EQ(build_mesh(2, 3).num_elements(), 9);
    EXPECT_EQ(build_mesh(2, 3).num_vertices(), 16);
    EXPECT_THROW(build_mesh(1, 1), ConfigurationError);
}

TEST(Mesh, LocateRoundTrips)
{
    const Mesh m = build_mesh(2, 5);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Point y{u(rng), u(rng)};
        const auto [e, xi] = m.locate(y);
        const Point back = m.map_to_physical(e, xi);
        EXPECT_NEAR(back[0], y[0], 1e-14);
        EXPECT_NEAR(back[1], y[1], 1e-14);
    }
    EXPECT_EQ(m.locate({1.0, 1.0}).first, m.num_elements() - 1);
    EXPECT_THROW((void)m.locate({1.1, 0.5}), DomainError);
}

TEST(DofMap, SlotCountsMatchReferenceCounts)
{
    for (int dim : {1, 2}) {
        for (BasisKind kind : kKinds) {
            const auto V = make_space(dim, 4, kind);
            const DofMap& dofs = V->dofs();
            std::map<int, int> refs;
            for (int e = 0; e < V->mesh().num_elements(); ++e) {
                for (int g : dofs.element_global(e)) ++refs[g];
            }
            EXPECT_EQ(static_cast<int>(refs.size()), dofs.num_global());
            int total = 0;
            for (const auto& [g, count] : refs) total += count;
            EXPECT_EQ(total, V->mesh().num_elements() * dofs.dofs_per_element());
            EXPECT_EQ(dofs.num_free() + static_cast<int>(dofs.boundary_dofs().size()), dofs.num_global());
        }
    }
}

TEST(DofMap, FreeCounts)
{
    EXPECT_EQ(make_space(1, 2, BasisKind::LagrangeP1)->num_free(), 1);
    EXPECT_EQ(make_space(1, 4, BasisKind::LagrangeP3)->num_free(), 11);
    EXPECT_EQ(make_space(2, 4, BasisKind::LagrangeP2)->num_free(), 49);
    // Hermite 1D: 2 dofs per vertex, two boundary values removed.
    EXPECT_EQ(make_space(1, 4, BasisKind::HermiteCubic)->num_free(), 8);
    // Hermite 2D: interior vertices keep 4, edge vertices 2, corners 1 (the mixed dof).
    EXPECT_EQ(make_space(2, 4, BasisKind::HermiteCubic)->num_free(), 9 * 4 + 12 * 2 + 4 * 1);
}

TEST(Field, NodalInterpolantIsExactAtNodes)
{
    const auto V = make_space(1, 2, BasisKind::LagrangeP1);
    SmoothFunction f;
    f.value = [](const Point& y) { return std::sin(kPi * y[0]) * Complex{1.0, 1.0}; };
    f.gradient = [](const Point& y) { return ComplexGradient{kPi * std::cos(kPi * y[0]) * Complex{1.0, 1.0}, {}}; };
    const DiscreteField u = interpolate(V, f);
    const Complex mid = evaluate_field(u, {0.5, 0.0});
    EXPECT_NEAR(mid.real(), 1.0, 1e-15);
    EXPECT_NEAR(mid.imag(), 1.0, 1e-15);

    const auto V2 = make_space(2, 3, BasisKind::LagrangeP3);
    const SmoothFunction g = smooth(2);
    const DiscreteField w = interpolate(V2, g);
    for (int gi = 0; gi < V2->dofs().num_global(); ++gi) {
        const Point node = V2->dofs().descriptor(gi).node;
        EXPECT_NEAR(std::abs(w.evaluate(node) - g.value(node)), 0.0, 1e-13);
    }
}

TEST(Field, ZeroCoefficientsEvaluateToZero)
{
    for (BasisKind kind : kKinds) {
        const auto V = make_space(2, 3, kind);
        const DiscreteField z(V);
        EXPECT_EQ(z.evaluate({0.3, 0.7}), Complex{});
        EXPECT_EQ(z.evaluate({1.0, 1.0}), Complex{});
    }
    const DiscreteField z(make_space(1, 3, BasisKind::LagrangeP1));
    EXPECT_THROW((void)z.evaluate({-0.1, 0.0}), DomainError);
}

TEST(Field, InterpolationConvergesAtOrderPPlusOne)
{
    for (int dim : {1, 2}) {
        for (BasisKind kind : kKinds) {
            const SmoothFunction f = smooth(dim);
            const int p = polynomial_degree(kind);
            std::vector<double> errs;
            for (int nx : {8, 16, 32}) {
                errs.push_back(max_error_at_quadrature_points(interpolate(make_space(dim, nx, kind), f), f.value));
            }
            for (std::size_t i = 1; i < errs.size(); ++i) {
                const double slope = std::log2(errs[i - 1] / errs[i]);
                EXPECT_NEAR(slope, p + 1, 0.3) << to_string(kind) << " dim=" << dim;
            }
        }
    }
}

TEST(Field, HermiteInterpolantReproducesCubics)
{
    // Bicubic functions vanishing on the boundary lie in the 2D Hermite space.
    SmoothFunction f;
    f.value = [](const Point& y) { return Complex{1.0, 0.5} * y[0] * (1 - y[0]) * y[0] * y[1] * (1 - y[1]); };
    f.gradient = [](const Point& y) {
        const Complex c{1.0, 0.5};
        return ComplexGradient{c * (2 * y[0] - 3 * y[0] * y[0]) * y[1] * (1 - y[1]),
                               c * y[0] * y[0] * (1 - y[0]) * (1 - 2 * y[1])};
    };
    f.mixed = [](const Point& y) { return Complex{1.0, 0.5} * (2 * y[0] - 3 * y[0] * y[0]) * (1 - 2 * y[1]); };
    const DiscreteField u = interpolate(make_space(2, 3, BasisKind::HermiteCubic), f);
    EXPECT_LT(max_error_at_quadrature_points(u, f.value), 1e-14);
    const ComplexGradient g = u.gradient({0.41, 0.77});
    const ComplexGradient ge = f.gradient({0.41, 0.77});
    EXPECT_NEAR(std::abs(g[0] - ge[0]), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(g[1] - ge[1]), 0.0, 1e-13);
}
