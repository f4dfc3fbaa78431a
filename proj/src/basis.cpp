#include "nlsfem/basis.hpp"

#include "nlsfem/errors.hpp"

namespace nlsfem {

BasisKind parse_basis_kind(std::string_view text)
{
    if (text == "p1") return BasisKind::LagrangeP1;
    if (text == "p2") return BasisKind::LagrangeP2;
    if (text == "p3") return BasisKind::LagrangeP3;
    if (text == "hermite") return BasisKind::HermiteCubic;
    throw ConfigurationError("unknown basis '" + std::string(text) + "' (expected p1|p2|p3|hermite)");
}

std::string to_string(BasisKind kind)
{
    switch (kind) {
    case BasisKind::LagrangeP1: return "p1";
    case BasisKind::LagrangeP2: return "p2";
    case BasisKind::LagrangeP3: return "p3";
    case BasisKind::HermiteCubic: return "hermite";
    }
    return "p1";
}

int polynomial_degree(BasisKind kind)
{
    switch (kind) {
    case BasisKind::LagrangeP1: return 1;
    case BasisKind::LagrangeP2: return 2;
    case BasisKind::LagrangeP3: return 3;
    case BasisKind::HermiteCubic: return 3;
    }
    return 1;
}

Basis1D::Basis1D(BasisKind kind) : kind_(kind)
{
    if (kind == BasisKind::HermiteCubic) {
        n_ = 4;
        return;
    }
    const int p = polynomial_degree(kind);
    n_ = p + 1;
    for (int a = 0; a <= p; ++a) {
        nodes_.push_back(static_cast<double>(a) / p);
    }
}

double Basis1D::value(int a, double x) const
{
    if (kind_ == BasisKind::HermiteCubic) {
        const double x2 = x * x;
        const double x3 = x2 * x;
        switch (a) {
        case 0: return 1.0 - 3.0 * x2 + 2.0 * x3;
        case 1: return x - 2.0 * x2 + x3;
        case 2: return 3.0 * x2 - 2.0 * x3;
        default: return x3 - x2;
        }
    }
    double v = 1.0;
    const double xa = nodes_[static_cast<std::size_t>(a)];
    for (int b = 0; b < n_; ++b) {
        if (b == a) continue;
        const double xb = nodes_[static_cast<std::size_t>(b)];
        v *= (x - xb) / (xa - xb);
    }
    return v;
}

double Basis1D::derivative(int a, double x) const
{
    if (kind_ == BasisKind::HermiteCubic) {
        const double x2 = x * x;
        switch (a) {
        case 0: return -6.0 * x + 6.0 * x2;
        case 1: return 1.0 - 4.0 * x + 3.0 * x2;
        case 2: return 6.0 * x - 6.0 * x2;
        default: return 3.0 * x2 - 2.0 * x;
        }
    }
    const double xa = nodes_[static_cast<std::size_t>(a)];
    double sum = 0.0;
    for (int c = 0; c < n_; ++c) {
        if (c == a) continue;
        double term = 1.0 / (xa - nodes_[static_cast<std::size_t>(c)]);
        for (int b = 0; b < n_; ++b) {
            if (b == a || b == c) continue;
            const double xb = nodes_[static_cast<std::size_t>(b)];
            term *= (x - xb) / (xa - xb);
        }
        sum += term;
    }
    return sum;
}

BasisFamily::BasisFamily(BasisKind kind, int dim) : basis1d_(kind), dim_(dim)
{
    if (dim != 1 && dim != 2) {
        throw ConfigurationError("basis dimension must be 1 or 2");
    }
}

int BasisFamily::dofs_per_element() const noexcept
{
    const int n = basis1d_.size();
    return dim_ == 1 ? n : n * n;
}

double BasisFamily::value(int a, const Point& xi) const
{
    if (dim_ == 1) return basis1d_.value(a, xi[0]);
    const int n = basis1d_.size();
    return basis1d_.value(a % n, xi[0]) * basis1d_.value(a / n, xi[1]);
}

std::array<double, 2> BasisFamily::gradient(int a, const Point& xi) const
{
    if (dim_ == 1) return {basis1d_.derivative(a, xi[0]), 0.0};
    const int n = basis1d_.size();
    const int ax = a % n;
    const int ay = a / n;
    return {basis1d_.derivative(ax, xi[0]) * basis1d_.value(ay, xi[1]),
            basis1d_.value(ax, xi[0]) * basis1d_.derivative(ay, xi[1])};
}

Tabulation BasisFamily::tabulate(const QuadratureRule& rule) const
{
    Tabulation tab;
    tab.points = rule.size();
    tab.dofs = static_cast<std::size_t>(dofs_per_element());
    tab.value.resize(tab.points * tab.dofs);
    tab.grad_x.resize(tab.points * tab.dofs);
    tab.grad_y.resize(tab.points * tab.dofs);
    for (std::size_t q = 0; q < tab.points; ++q) {
        for (std::size_t a = 0; a < tab.dofs; ++a) {
            const auto ia = static_cast<int>(a);
            const auto g = gradient(ia, rule.points[q]);
            tab.value[q * tab.dofs + a] = value(ia, rule.points[q]);
            tab.grad_x[q * tab.dofs + a] = g[0];
            tab.grad_y[q * tab.dofs + a] = g[1];
        }
    }
    return tab;
}

BasisFamily reference_basis(BasisKind kind, int dim)
{
    return BasisFamily(kind, dim);
}

} // namespace nlsfem
