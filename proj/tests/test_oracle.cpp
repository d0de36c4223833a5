#include "ave/oracle.hpp"
#include "ave/problems.hpp"
#include "ave/solvers.hpp"
#include "random_problems.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using ave::CsrMatrix;
using ave::Vector;

TEST(Oracle, ScaledIdentityUnique) {
    const auto r = ave::sign_enumeration_solve(CsrMatrix<double>::identity(2, 3.0), { 2.0, -2.0 });
    ASSERT_EQ(r.solutions.size(), 1u);
    EXPECT_TRUE(r.exhaustive);
    EXPECT_NEAR(r.solutions[0][0], 1.0, 1e-14);
    EXPECT_NEAR(r.solutions[0][1], -0.5, 1e-14);
}

TEST(Oracle, TwoSolutionsWhenSingularValueBelowOne) {
    // 0.5 x - |x| = -1: x = -2/3 or x = 2
    const auto r = ave::sign_enumeration_solve(CsrMatrix<double>::identity(1, 0.5), { -1.0 });
    ASSERT_EQ(r.solutions.size(), 2u);
    EXPECT_NEAR(r.solutions[0][0], -2.0 / 3.0, 1e-14);
    EXPECT_NEAR(r.solutions[1][0], 2.0, 1e-14);
}

TEST(Oracle, NoSolution) {
    // 0.5 x - |x| = 1 has no solution
    const auto r = ave::sign_enumeration_solve(CsrMatrix<double>::identity(1, 0.5), { 1.0 });
    EXPECT_TRUE(r.solutions.empty());
}

TEST(Oracle, SizeLimitAndShape) {
    EXPECT_THROW((void)ave::sign_enumeration_solve(CsrMatrix<double>::identity(5), Vector<double>(5), 4), std::invalid_argument);
    EXPECT_THROW((void)ave::sign_enumeration_solve(CsrMatrix<double>::identity(3), Vector<double>(2)), ave::dimension_error);
}

TEST(Oracle, MinSingularValueOfPoissonMatrix) {
    // smallest eigenvalue of the 2D 5-point Laplacian, m = 10: 8 sin²(π/22)
    const double expected = 8.0 * std::pow(std::sin(std::numbers::pi / 22.0), 2);
    const auto A = ave::build_matrix({ 10, 0.0, 0.0 });
    EXPECT_NEAR(ave::min_singular_value(A), expected, 1e-10);
    EXPECT_FALSE(ave::min_singular_exceeds_one(A));
    EXPECT_TRUE(ave::min_singular_exceeds_one(CsrMatrix<double>::identity(3, 1.5)));
    EXPECT_FALSE(ave::min_singular_exceeds_one(CsrMatrix<double>::identity(3, 1.0)));
}

TEST(Oracle, AgreesWithHssLikeOnRandomInstances) {
    std::mt19937 rng(17);
    int checked = 0;
    while (checked < 20) {
        const std::size_t n = 2 + static_cast<std::size_t>(checked % 6);
        const auto A = ave::testing::random_pd<double>(rng, n, n - 1, 1.5, 1.0);
        if (!ave::min_singular_exceeds_one(A)) {
            continue;
        }
        const auto b = ave::testing::random_vector<double>(rng, n, 3.0);
        const auto r = ave::sign_enumeration_solve(A, b);
        ASSERT_EQ(r.solutions.size(), 1u);
        ave::AveSolveOptions<double> o;
        o.tol = 1e-12;
        const auto rep = ave::hss_like(ave::AveProblem<double>(A, b), 1.0, o);
        ASSERT_EQ(rep.status, ave::SolveStatus::Converged);
        const double err = ave::norm2(ave::subtract(rep.x, r.solutions[0])) / std::max(1.0, ave::norm2(r.solutions[0]));
        EXPECT_LE(err, 1e-9);
        ++checked;
    }
}
