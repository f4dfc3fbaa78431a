#include "nlsfem/linear_solve.hpp"

#include "nlsfem/errors.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>

namespace nlsfem {

namespace {

double norm2(const ComplexVector& v)
{
    double s = 0.0;
    for (const Complex& c : v) s += std::norm(c);
    return std::sqrt(s);
}

} // namespace

struct ComplexSparseSolver::Impl {
    using Matrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, int>;

    CsrPatternPtr pattern;
    Matrix matrix;
    // CSR value index -> CSC value index of the same entry.
    std::vector<int> csr_to_csc;
    Eigen::SparseLU<Matrix, Eigen::COLAMDOrdering<int>> lu;
    ComplexCsr current;
    bool analyzed = false;
    bool factorized = false;
};

ComplexSparseSolver::ComplexSparseSolver(CsrPatternPtr pattern, double tolerance)
    : impl_(std::make_unique<Impl>()), tolerance_(tolerance)
{
    Impl& s = *impl_;
    s.pattern = std::move(pattern);
    const CsrPattern& p = *s.pattern;

    std::vector<Eigen::Triplet<Complex, int>> triplets;
    triplets.reserve(p.nnz());
    for (int i = 0; i < p.rows; ++i) {
        for (int k = p.row_ptr[static_cast<std::size_t>(i)]; k < p.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            // Store the CSR position in the value so the permutation can be read back.
            triplets.emplace_back(i, p.col[static_cast<std::size_t>(k)], Complex(static_cast<double>(k), 0.0));
        }
    }
    s.matrix.resize(p.rows, p.rows);
    s.matrix.setFromTriplets(triplets.begin(), triplets.end());
    s.matrix.makeCompressed();
    s.csr_to_csc.assign(p.nnz(), -1);
    for (int k = 0; k < static_cast<int>(s.matrix.nonZeros()); ++k) {
        s.csr_to_csc[static_cast<std::size_t>(s.matrix.valuePtr()[k].real())] = k;
    }
}

ComplexSparseSolver::~ComplexSparseSolver() = default;
ComplexSparseSolver::ComplexSparseSolver(ComplexSparseSolver&&) noexcept = default;
ComplexSparseSolver& ComplexSparseSolver::operator=(ComplexSparseSolver&&) noexcept = default;

void ComplexSparseSolver::factorize(const ComplexCsr& A)
{
    Impl& s = *impl_;
    if (A.pattern != s.pattern && !(A.pattern->row_ptr == s.pattern->row_ptr && A.pattern->col == s.pattern->col)) {
        throw SolverError("factorize: matrix pattern differs from the analysed pattern");
    }
    Complex* values = s.matrix.valuePtr();
    for (std::size_t k = 0; k < A.values.size(); ++k) {
        values[s.csr_to_csc[k]] = A.values[k];
    }
    if (!s.analyzed) {
        s.lu.analyzePattern(s.matrix);
        s.analyzed = true;
    }
    s.lu.factorize(s.matrix);
    if (s.lu.info() != Eigen::Success) {
        s.factorized = false;
        throw SolverError("sparse LU factorization failed: " + s.lu.lastErrorMessage());
    }
    s.current = A;
    s.factorized = true;
}

ComplexVector ComplexSparseSolver::solve(const ComplexVector& b)
{
    Impl& s = *impl_;
    if (!s.factorized) {
        throw SolverError("solve called before a successful factorize");
    }
    const auto n = static_cast<Eigen::Index>(b.size());
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        last_residual_ = 0.0;
        return ComplexVector(b.size());
    }

    Eigen::Map<const Eigen::VectorXcd> rhs(b.data(), n);
    Eigen::VectorXcd x = s.lu.solve(rhs);
    ComplexVector out(x.data(), x.data() + n);
    ComplexVector Ax;
    for (int pass = 0;; ++pass) {
        multiply(s.current, out, Ax);
        ComplexVector r(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - Ax[i];
        last_residual_ = norm2(r) / bnorm;
        if (!std::isfinite(last_residual_)) {
            throw SolverError("sparse solve produced non-finite values");
        }
        if (last_residual_ <= tolerance_) break;
        if (pass == 3) {
            throw SolverError("relative residual " + std::to_string(last_residual_) +
                              " above tolerance after refinement");
        }
        Eigen::Map<const Eigen::VectorXcd> rv(r.data(), n);
        const Eigen::VectorXcd dx = s.lu.solve(rv);
        for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] += dx[i];
    }
    return out;
}

double relative_residual(const ComplexCsr& A, const ComplexVector& x, const ComplexVector& b)
{
    ComplexVector Ax;
    multiply(A, x, Ax);
    ComplexVector r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - Ax[i];
    const double bn = norm2(b);
    return bn == 0.0 ? norm2(r) : norm2(r) / bn;
}

} // namespace nlsfem
