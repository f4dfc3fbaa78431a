#include "nlsfem/space.hpp"

#include "nlsfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace nlsfem {

Mesh::Mesh(int dim, int nx) : dim_(dim), nx_(nx)
{
    if (dim != 1 && dim != 2) {
        throw ConfigurationError("mesh dimension must be 1 or 2, got " + std::to_string(dim));
    }
    if (nx < 2) {
        throw ConfigurationError("mesh needs nx >= 2 elements per direction, got " + std::to_string(nx));
    }
}

double Mesh::h() const noexcept
{
    return dim_ == 1 ? side() : std::numbers::sqrt2 * side();
}

double Mesh::element_measure() const noexcept
{
    return dim_ == 1 ? side() : side() * side();
}

int Mesh::num_elements() const noexcept
{
    return dim_ == 1 ? nx_ : nx_ * nx_;
}

int Mesh::num_vertices() const noexcept
{
    return dim_ == 1 ? nx_ + 1 : (nx_ + 1) * (nx_ + 1);
}

Point Mesh::vertex(int v) const
{
    if (dim_ == 1) return {v * side(), 0.0};
    return {(v % (nx_ + 1)) * side(), (v / (nx_ + 1)) * side()};
}

Point Mesh::element_origin(int e) const
{
    if (dim_ == 1) return {e * side(), 0.0};
    return {(e % nx_) * side(), (e / nx_) * side()};
}

std::vector<Point> Mesh::element_vertices(int e) const
{
    const Point o = element_origin(e);
    const double s = side();
    if (dim_ == 1) return {o, {o[0] + s, 0.0}};
    return {o, {o[0] + s, o[1]}, {o[0] + s, o[1] + s}, {o[0], o[1] + s}};
}

std::pair<int, Point> Mesh::locate(const Point& y) const
{
    constexpr double tol = 1e-14;
    auto axis = [&](double c, int& index, double& xi) {
        if (!(c >= -tol && c <= 1.0 + tol)) {
            throw DomainError("point coordinate " + std::to_string(c) + " outside [0,1]");
        }
        const double scaled = std::clamp(c, 0.0, 1.0) * nx_;
        index = std::clamp(static_cast<int>(std::floor(scaled)), 0, nx_ - 1);
        xi = scaled - index;
    };
    int ix = 0;
    int iy = 0;
    Point xi{0.0, 0.0};
    axis(y[0], ix, xi[0]);
    if (dim_ == 2) {
        axis(y[1], iy, xi[1]);
    }
    return {ix + nx_ * iy, xi};
}

Point Mesh::map_to_physical(int e, const Point& xi) const
{
    const Point o = element_origin(e);
    if (dim_ == 1) return {o[0] + side() * xi[0], 0.0};
    return {o[0] + side() * xi[0], o[1] + side() * xi[1]};
}

Mesh build_mesh(int dim, int nx)
{
    return Mesh(dim, nx);
}

DofMap::DofMap(const Mesh& mesh, const BasisFamily& basis)
{
    const int dim = mesh.dim();
    const int nx = mesh.nx();
    const int n1 = basis.dofs_per_direction();
    per_element_ = basis.dofs_per_element();
    std::vector<bool> constrained;

    if (basis.is_hermite()) {
        const int verts = nx + 1;
        const int per_node = dim == 1 ? 2 : 4;
        const int total = per_node * (dim == 1 ? verts : verts * verts);
        descriptors_.resize(static_cast<std::size_t>(total));
        constrained.assign(static_cast<std::size_t>(total), false);
        for (int iy = 0; iy < (dim == 1 ? 1 : verts); ++iy) {
            for (int ix = 0; ix < verts; ++ix) {
                const bool on_x = ix == 0 || ix == nx;
                const bool on_y = dim == 2 && (iy == 0 || iy == nx);
                for (int k = 0; k < per_node; ++k) {
                    const int kx = k % 2;
                    const int ky = k / 2;
                    const int g = per_node * (ix + verts * iy) + k;
                    descriptors_[static_cast<std::size_t>(g)] =
                        {{ix * mesh.side(), dim == 1 ? 0.0 : iy * mesh.side()}, kx, ky};
                    constrained[static_cast<std::size_t>(g)] = (on_x && kx == 0) || (on_y && ky == 0);
                }
            }
        }
        for (int e = 0; e < mesh.num_elements(); ++e) {
            const int ex = e % nx;
            const int ey = dim == 1 ? 0 : e / nx;
            for (int a = 0; a < per_element_; ++a) {
                const int ax = a % n1;
                const int ay = a / n1;
                const int ix = ex + ax / 2;
                const int iy = ey + ay / 2;
                const int k = (ax % 2) + 2 * (ay % 2);
                element_global_.push_back(per_node * (ix + verts * iy) + k);
            }
        }
    } else {
        const int p = basis.degree();
        const int lattice = p * nx + 1;
        const int total = dim == 1 ? lattice : lattice * lattice;
        const double spacing = 1.0 / (p * nx);
        descriptors_.resize(static_cast<std::size_t>(total));
        constrained.assign(static_cast<std::size_t>(total), false);
        for (int g = 0; g < total; ++g) {
            const int ix = g % lattice;
            const int iy = g / lattice;
            descriptors_[static_cast<std::size_t>(g)] = {{ix * spacing, iy * spacing}, 0, 0};
            const bool on_x = ix == 0 || ix == lattice - 1;
            const bool on_y = dim == 2 && (iy == 0 || iy == lattice - 1);
            constrained[static_cast<std::size_t>(g)] = on_x || on_y;
        }
        for (int e = 0; e < mesh.num_elements(); ++e) {
            const int ex = e % nx;
            const int ey = dim == 1 ? 0 : e / nx;
            for (int a = 0; a < per_element_; ++a) {
                const int ix = ex * p + a % n1;
                const int iy = ey * p + a / n1;
                element_global_.push_back(ix + lattice * iy);
            }
        }
    }

    global_to_free_.assign(descriptors_.size(), -1);
    for (std::size_t g = 0; g < descriptors_.size(); ++g) {
        if (constrained[g]) {
            boundary_.push_back(static_cast<int>(g));
        } else {
            global_to_free_[g] = static_cast<int>(free_to_global_.size());
            free_to_global_.push_back(static_cast<int>(g));
        }
    }
    element_free_.reserve(element_global_.size());
    for (const int g : element_global_) {
        element_free_.push_back(global_to_free_[static_cast<std::size_t>(g)]);
    }
}

std::span<const int> DofMap::element_global(int e) const
{
    return {element_global_.data() + static_cast<std::ptrdiff_t>(e) * per_element_,
            static_cast<std::size_t>(per_element_)};
}

std::span<const int> DofMap::element_free(int e) const
{
    return {element_free_.data() + static_cast<std::ptrdiff_t>(e) * per_element_,
            static_cast<std::size_t>(per_element_)};
}

FeSpace::FeSpace(int dim, int nx, BasisKind kind)
    : mesh_(dim, nx),
      basis_(kind, dim),
      dofs_(mesh_, basis_),
      assembly_rule_(gauss_rule(dim, basis_.degree() + 2)),
      error_rule_(gauss_rule(dim, basis_.degree() + 3)),
      assembly_tab_(basis_.tabulate(assembly_rule_)),
      error_tab_(basis_.tabulate(error_rule_))
{
}

FeSpacePtr make_space(int dim, int nx, BasisKind kind)
{
    return std::make_shared<const FeSpace>(dim, nx, kind);
}

} // namespace nlsfem
