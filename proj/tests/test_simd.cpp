#include "nlsfem/simd/kernels.hpp"

#include "test_support.hpp"

#include <random>
#include <vector>

using namespace nlsfem;
using nlsfem::testing::max_abs_diff;
using nlsfem::testing::random_vector;

namespace {

std::vector<double> random_real(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

double rel(const ComplexVector& a, const ComplexVector& b)
{
    return max_abs_diff(a, b) / std::max(1.0, nlsfem::testing::max_abs(b));
}

class SimdEquivalence : public ::testing::Test {
protected:
    void SetUp() override
    {
        vec_ = simd::avx2_kernels();
        if (vec_ == nullptr) GTEST_SKIP() << "AVX2 kernels unavailable on this CPU or build";
    }

    const simd::KernelTable& ref_ = simd::scalar_kernels();
    const simd::KernelTable* vec_ = nullptr;
    std::mt19937_64 rng_{1234};
};

// Odd lengths exercise the scalar tails.
constexpr std::size_t kLengths[] = {0, 1, 2, 3, 7, 16, 33, 1001};

} // namespace

TEST(SimdDispatch, ActiveTableIsKnown)
{
    const auto& k = simd::active_kernels();
    EXPECT_TRUE(k.isa == simd::Isa::Scalar || k.isa == simd::Isa::Avx2);
    EXPECT_EQ(simd::scalar_kernels().isa, simd::Isa::Scalar);
}

TEST_F(SimdEquivalence, Combine3)
{
    for (std::size_t n : kLengths) {
        const auto x = random_real(n, rng_), y = random_real(n, rng_), z = random_real(n, rng_);
        const Complex a{0.3, -1.2}, b{2.0, 0.5}, c{-0.7, 0.1};
        ComplexVector r(n), v(n);
        ref_.combine3(a, x.data(), b, y.data(), c, z.data(), r.data(), n);
        vec_->combine3(a, x.data(), b, y.data(), c, z.data(), v.data(), n);
        EXPECT_LE(rel(v, r), 1e-15) << n;
    }
}

TEST_F(SimdEquivalence, CsrMatvec)
{
    // Random rows of varying length, including empty ones.
    const std::size_t rows = 57;
    std::uniform_int_distribution<int> len(0, 9);
    std::vector<int> row_ptr{0}, col;
    for (std::size_t i = 0; i < rows; ++i) {
        const int l = len(rng_);
        for (int k = 0; k < l; ++k) col.push_back(static_cast<int>((i * 7 + static_cast<std::size_t>(k) * 13) % rows));
        row_ptr.push_back(static_cast<int>(col.size()));
    }
    const ComplexVector val = random_vector(col.size(), rng_), x = random_vector(rows, rng_);
    ComplexVector r(rows), v(rows);
    ref_.csr_matvec(row_ptr.data(), col.data(), val.data(), x.data(), r.data(), rows);
    vec_->csr_matvec(row_ptr.data(), col.data(), val.data(), x.data(), v.data(), rows);
    EXPECT_LE(rel(v, r), 1e-14);
}

TEST_F(SimdEquivalence, TabulationKernels)
{
    for (std::size_t nq : {1u, 4u, 9u, 25u}) {
        for (std::size_t nd : {2u, 3u, 4u, 9u, 16u}) {
            const auto table = random_real(nq * nd, rng_);
            const ComplexVector c = random_vector(nd, rng_), s = random_vector(nq, rng_);
            ComplexVector r(nq), v(nq);
            ref_.tab_eval(table.data(), nq, nd, c.data(), r.data());
            vec_->tab_eval(table.data(), nq, nd, c.data(), v.data());
            EXPECT_LE(rel(v, r), 1e-14);

            ComplexVector ra = random_vector(nd, rng_);
            ComplexVector va = ra;
            ref_.tab_accumulate(table.data(), nq, nd, s.data(), ra.data());
            vec_->tab_accumulate(table.data(), nq, nd, s.data(), va.data());
            EXPECT_LE(rel(va, ra), 1e-14);
        }
    }
}

TEST_F(SimdEquivalence, NonlinearAndNorm)
{
    for (std::size_t n : kLengths) {
        const ComplexVector z = random_vector(n, rng_), b = random_vector(n, rng_);
        std::vector<double> w = random_real(n, rng_);
        for (auto& x : w) x = std::abs(x);
        for (double rho : {0.0, 1.0, 2.0, 3.0, 2.5}) {
            ComplexVector r(n), v(n);
            ref_.nonlinear(z.data(), w.data(), rho, r.data(), n);
            vec_->nonlinear(z.data(), w.data(), rho, v.data(), n);
            EXPECT_LE(rel(v, r), 1e-14) << "n=" << n << " rho=" << rho;
        }
        const double r = ref_.weighted_sq_diff(z.data(), b.data(), w.data(), n);
        const double v = vec_->weighted_sq_diff(z.data(), b.data(), w.data(), n);
        EXPECT_NEAR(v, r, 1e-13 * std::max(1.0, r)) << n;
    }
}

TEST(SimdScalar, NonlinearReferenceValue)
{
    const Complex z{1.0, 1.0};
    const double w = 1.0;
    Complex out;
    simd::scalar_kernels().nonlinear(&z, &w, 3.0, &out, 1);
    EXPECT_NEAR(std::abs(out - 2.0 * std::sqrt(2.0) * z), 0.0, 1e-15);
}
