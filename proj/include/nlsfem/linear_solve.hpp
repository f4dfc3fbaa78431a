#pragma once

#include "nlsfem/sparse.hpp"

#include <memory>

namespace nlsfem {

/// Direct sparse LU for complex matrices on a fixed pattern.
///
/// The symbolic analysis runs once per pattern; factorize() refreshes the
/// numeric values only. Every solution is checked against the relative
/// residual tolerance, with up to three steps of iterative refinement.
class ComplexSparseSolver {
public:
    explicit ComplexSparseSolver(CsrPatternPtr pattern, double tolerance = 1e-10);
    ~ComplexSparseSolver();
    ComplexSparseSolver(ComplexSparseSolver&&) noexcept;
    ComplexSparseSolver& operator=(ComplexSparseSolver&&) noexcept;

    /// Throws SolverError on a singular matrix or a foreign pattern.
    void factorize(const ComplexCsr& A);

    /// Throws SolverError if the relative residual stays above tolerance.
    [[nodiscard]] ComplexVector solve(const ComplexVector& b);

    [[nodiscard]] double tolerance() const noexcept { return tolerance_; }
    [[nodiscard]] double last_residual() const noexcept { return last_residual_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    double tolerance_;
    double last_residual_ = 0.0;
};

/// ||b - A x|| / ||b||, or ||A x|| when b = 0.
double relative_residual(const ComplexCsr& A, const ComplexVector& x, const ComplexVector& b);

} // namespace nlsfem
