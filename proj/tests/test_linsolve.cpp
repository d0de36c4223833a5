#include "ave/linsolve.hpp"
#include "random_problems.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <random>

using ave::CsrMatrix;
using ave::SolveStatus;
using ave::Vector;
using ave::testing::C;

TEST(HssSweep, ScalarExample) {
    // A = 2, b = 1, α = 1: x½ = 1/3, x1 = 2/3
    const auto f = ave::factorize(ave::split(CsrMatrix<double>::identity(1, 2.0)), 1.0);
    const auto x1 = ave::hss_sweep(f, { 1.0 }, { 0.0 });
    EXPECT_NEAR(x1[0], 2.0 / 3.0, 1e-15);
}

TEST(HssLinearSolve, ScalarConvergesToHalf) {
    const auto rep = ave::hss_linear_solve(CsrMatrix<double>::identity(1, 2.0), Vector<double>{ 1.0 }, 1.0);
    EXPECT_EQ(rep.status, SolveStatus::Converged);
    EXPECT_NEAR(rep.x[0], 0.5, 1e-10);
    EXPECT_EQ(rep.residual_history.size(), rep.outer_iterations + 1);
}

TEST(HssLinearSolve, ZeroRhsNeedsNoIterations) {
    const auto rep = ave::hss_linear_solve(CsrMatrix<double>::identity(3, 2.0), Vector<double>(3, 0.0), 1.0);
    EXPECT_EQ(rep.status, SolveStatus::Converged);
    EXPECT_EQ(rep.outer_iterations, 0u);
}

TEST(HssLinearSolve, RandomPositiveDefiniteAllAlphas) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = 10 + 10 * trial;
        const auto A = ave::testing::random_pd<C>(rng, n, 3, 0.6, 1.0);
        const auto b = ave::testing::random_vector<C>(rng, n);
        for (const double alpha : { 0.1, 1.0, 10.0 }) {
            ave::LinearIterOptions o;
            o.tol = 1e-8;
            o.max_iter = 10000;
            const auto rep = ave::hss_linear_solve(A, b, alpha, o);
            EXPECT_EQ(rep.status, SolveStatus::Converged) << "alpha=" << alpha;
        }
    }
}

TEST(HssLinearSolve, MaxIterationsAndBadOptions) {
    ave::LinearIterOptions o;
    o.max_iter = 2;
    const auto rep = ave::hss_linear_solve(CsrMatrix<double>::identity(1, 2.0), Vector<double>{ 1.0 }, 100.0, o);
    EXPECT_EQ(rep.status, SolveStatus::MaxIterations);
    EXPECT_EQ(rep.outer_iterations, 2u);
    o.tol = 0.0;
    EXPECT_THROW((void)ave::hss_linear_solve(CsrMatrix<double>::identity(1), Vector<double>{ 1.0 }, 1.0, o), std::invalid_argument);
}

TEST(HssLinearSolve, FactorizationFailureIsReported) {
    const auto rep = ave::hss_linear_solve(CsrMatrix<double>::identity(2, -5.0), Vector<double>{ 1.0, 1.0 }, 1.0);
    EXPECT_EQ(rep.status, SolveStatus::FactorizationFailure);
    EXPECT_FALSE(rep.message.empty());
}
