#pragma once

#include "nlsfem/basis.hpp"
#include "nlsfem/types.hpp"

#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace nlsfem {

/// Uniform partition of (0,1)^dim into nx^dim congruent intervals or squares.
///
/// h() is the element diameter (1/nx in 1D, sqrt(2)/nx in 2D); side() is the
/// edge length 1/nx. Elements are numbered x-fastest.
class Mesh {
public:
    Mesh(int dim, int nx);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] int nx() const noexcept { return nx_; }
    [[nodiscard]] double side() const noexcept { return 1.0 / nx_; }
    [[nodiscard]] double h() const noexcept;
    [[nodiscard]] double element_measure() const noexcept;
    [[nodiscard]] int num_elements() const noexcept;
    [[nodiscard]] int num_vertices() const noexcept;

    [[nodiscard]] Point vertex(int v) const;
    [[nodiscard]] Point element_origin(int e) const;
    /// Counter-clockwise in 2D, left-to-right in 1D.
    [[nodiscard]] std::vector<Point> element_vertices(int e) const;

    /// Element containing y and the local coordinate of y in it. Points on
    /// shared faces go to the element with the larger index. Throws
    /// DomainError if y lies outside the closed box.
    [[nodiscard]] std::pair<int, Point> locate(const Point& y) const;

    /// Physical coordinate of reference point xi in element e.
    [[nodiscard]] Point map_to_physical(int e, const Point& xi) const;

private:
    int dim_;
    int nx_;
};

Mesh build_mesh(int dim, int nx);

/// What a global degree of freedom measures: the value or a scaled
/// derivative d^(dx+dy) / dx^dx dy^dy at a node, multiplied by side^(dx+dy).
struct DofDescriptor {
    Point node{};
    int dx = 0;
    int dy = 0;
};

/// Global numbering of the finite element space and its homogeneous
/// Dirichlet constraints.
///
/// Lagrange: nodes on the (p nx + 1)^dim lattice, value dofs on the boundary
/// are constrained.
/// Hermite 1D: (value, scaled derivative) per vertex; boundary values constrained.
/// Hermite 2D: (v, s v_x, s v_y, s^2 v_xy) per vertex. On a vertical edge the
/// dofs with no x-derivative (v, v_y) are constrained, on a horizontal edge
/// those with no y-derivative (v, v_x). The mixed dof stays free everywhere,
/// corners included, since it does not enter any boundary trace.
class DofMap {
public:
    DofMap(const Mesh& mesh, const BasisFamily& basis);

    [[nodiscard]] int num_global() const noexcept { return static_cast<int>(descriptors_.size()); }
    [[nodiscard]] int num_free() const noexcept { return static_cast<int>(free_to_global_.size()); }
    [[nodiscard]] int dofs_per_element() const noexcept { return per_element_; }

    [[nodiscard]] std::span<const int> element_global(int e) const;
    /// Free (unconstrained) index per local dof, -1 for constrained dofs.
    [[nodiscard]] std::span<const int> element_free(int e) const;

    [[nodiscard]] const std::vector<int>& boundary_dofs() const noexcept { return boundary_; }
    [[nodiscard]] int free_index(int global) const { return global_to_free_[static_cast<std::size_t>(global)]; }
    [[nodiscard]] int global_index(int free) const { return free_to_global_[static_cast<std::size_t>(free)]; }
    [[nodiscard]] const DofDescriptor& descriptor(int global) const { return descriptors_[static_cast<std::size_t>(global)]; }

private:
    int per_element_ = 0;
    std::vector<int> element_global_;
    std::vector<int> element_free_;
    std::vector<DofDescriptor> descriptors_;
    std::vector<int> boundary_;
    std::vector<int> global_to_free_;
    std::vector<int> free_to_global_;
};

/// Immutable bundle of mesh, reference element and dof numbering.
class FeSpace {
public:
    FeSpace(int dim, int nx, BasisKind kind);

    [[nodiscard]] const Mesh& mesh() const noexcept { return mesh_; }
    [[nodiscard]] const BasisFamily& basis() const noexcept { return basis_; }
    [[nodiscard]] const DofMap& dofs() const noexcept { return dofs_; }
    [[nodiscard]] int dim() const noexcept { return mesh_.dim(); }
    [[nodiscard]] int degree() const { return basis_.degree(); }
    [[nodiscard]] int num_free() const noexcept { return dofs_.num_free(); }

    /// Default assembly rule: p + 2 points per direction.
    [[nodiscard]] const QuadratureRule& assembly_rule() const noexcept { return assembly_rule_; }
    /// Default error-norm rule: p + 3 points per direction.
    [[nodiscard]] const QuadratureRule& error_rule() const noexcept { return error_rule_; }

    /// Basis tabulated on the default rules.
    [[nodiscard]] const Tabulation& assembly_tabulation() const noexcept { return assembly_tab_; }
    [[nodiscard]] const Tabulation& error_tabulation() const noexcept { return error_tab_; }

private:
    Mesh mesh_;
    BasisFamily basis_;
    DofMap dofs_;
    QuadratureRule assembly_rule_;
    QuadratureRule error_rule_;
    Tabulation assembly_tab_;
    Tabulation error_tab_;
};

using FeSpacePtr = std::shared_ptr<const FeSpace>;

FeSpacePtr make_space(int dim, int nx, BasisKind kind);

} // namespace nlsfem
