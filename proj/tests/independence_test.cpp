#include "egs/independence.hpp"
#include "egs/simulation.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace egs {
namespace {

Dataset continuous(Eigen::MatrixXd m) {
    auto names = default_names(static_cast<int>(m.cols()));
    return Dataset(std::move(names), std::move(m), DataKind::continuous);
}

Dataset discrete(Eigen::MatrixXd m, int categories) {
    const int cols = static_cast<int>(m.cols());
    return Dataset(default_names(cols), std::move(m), std::vector<int>(cols, categories));
}

// Partial correlation as the correlation of OLS residuals.
double residual_partial_correlation(const Eigen::MatrixXd& rec, int x, int y, const std::vector<int>& s) {
    const Eigen::Index n = rec.rows();
    Eigen::MatrixXd design(n, s.size() + 1);
    design.col(0).setOnes();
    for (std::size_t k = 0; k < s.size(); ++k) design.col(k + 1) = rec.col(s[k]);
    auto residual = [&](int v) -> Eigen::VectorXd {
        Eigen::VectorXd target = rec.col(v);
        Eigen::VectorXd beta = design.colPivHouseholderQr().solve(target);
        return target - design * beta;
    };
    const Eigen::VectorXd rx = residual(x), ry = residual(y);
    return rx.dot(ry) / std::sqrt(rx.squaredNorm() * ry.squaredNorm());
}

Eigen::MatrixXd gaussian(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> z;
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = z(rng);
    return m;
}

TEST(FisherZTest, MatchesResidualOracle) {
    Rng rng(1);
    Eigen::MatrixXd m = gaussian(300, 5, rng);
    m.col(2) += 0.6 * m.col(0);
    m.col(3) += 0.5 * m.col(2) + 0.4 * m.col(1);
    m.col(4) += 0.3 * m.col(3);
    const auto data = continuous(m);
    const std::vector<std::vector<int>> sets{{}, {2}, {1, 2}, {1, 2, 4}};
    for (const auto& s : sets) {
        const double r = residual_partial_correlation(m, 0, 3, s);
        const double z = 0.5 * std::log((1 + r) / (1 - r)) * std::sqrt(300.0 - s.size() - 3);
        const double p = std::erfc(std::abs(z) / std::sqrt(2.0));
        auto dec = fisher_z_test(data, 0, 3, s, 0.05);
        EXPECT_NEAR(dec.statistic, z, 1e-9);
        EXPECT_NEAR(dec.p_value, p, 1e-9);
        EXPECT_EQ(dec.independent, p > 0.05);
    }
}

TEST(FisherZTest, Symmetric) {
    Rng rng(2);
    Eigen::MatrixXd m = gaussian(200, 4, rng);
    m.col(1) += 0.3 * m.col(0);
    m.col(3) += 0.2 * m.col(1) - 0.2 * m.col(2);
    const auto data = continuous(m);
    for (auto [x, y] : testing::all_pairs(4)) {
        std::vector<int> s;
        for (int v = 0; v < 4; ++v)
            if (v != x && v != y) s.push_back(v);
        for (const auto& sub : testing::all_subsets(s)) {
            auto xy = fisher_z_test(data, x, y, sub, 0.05);
            auto yx = fisher_z_test(data, y, x, sub, 0.05);
            EXPECT_EQ(xy.p_value, yx.p_value);
            EXPECT_EQ(xy.independent, yx.independent);
        }
    }
}

TEST(FisherZTest, NullCalibration) {
    Rng rng(3);
    int independent = 0;
    const int reps = 400;
    for (int i = 0; i < reps; ++i) {
        const auto data = continuous(gaussian(500, 2, rng));
        independent += fisher_z_test(data, 0, 1, {}, 0.05).independent;
    }
    // 95% expected; binomial sd is about 1.1 points at 400 draws.
    EXPECT_NEAR(independent / static_cast<double>(reps), 0.95, 0.035);
}

TEST(FisherZTest, CopiedColumnIsDependent) {
    Rng rng(4);
    Eigen::MatrixXd m = gaussian(100, 2, rng);
    m.col(1) = m.col(0);
    auto dec = fisher_z_test(continuous(m), 0, 1, {}, 1e-9);
    EXPECT_FALSE(dec.independent);
    EXPECT_LT(dec.p_value, 1e-12);
}

TEST(FisherZTest, ChainScreensOff) {
    Rng rng(5);
    int independent = 0;
    for (int i = 0; i < 100; ++i) {
        Eigen::MatrixXd m = gaussian(2000, 3, rng);
        m.col(2) += 0.7 * m.col(0);  // x -> z
        m.col(1) += 0.7 * m.col(2);  // z -> y
        const auto data = continuous(m);
        const std::vector<int> z{2};
        independent += fisher_z_test(data, 0, 1, z, 0.05).independent;
    }
    EXPECT_GE(independent, 90);
}

TEST(FisherZTest, DegenerateInputsThrow) {
    Rng rng(6);
    Eigen::MatrixXd m = gaussian(50, 3, rng);
    m.col(2).setConstant(1.0);
    const auto data = continuous(m);
    EXPECT_THROW(fisher_z_test(data, 0, 2, {}, 0.05), DegenerateData);
    const std::vector<int> s{2};
    EXPECT_THROW(fisher_z_test(data, 0, 1, s, 0.05), DegenerateData);

    const auto tiny = continuous(gaussian(4, 3, rng));
    const std::vector<int> one{2};
    EXPECT_THROW(fisher_z_test(tiny, 0, 1, one, 0.05), DegenerateData);
}

TEST(FisherZTest, ArgumentValidation) {
    Rng rng(7);
    const auto data = continuous(gaussian(50, 3, rng));
    EXPECT_THROW(fisher_z_test(data, 0, 1, {}, 0.0), std::invalid_argument);
    EXPECT_THROW(fisher_z_test(data, 0, 1, {}, 1.0), std::invalid_argument);
    const std::vector<int> bad{0};
    EXPECT_THROW(fisher_z_test(data, 0, 1, bad, 0.05), std::invalid_argument);
    EXPECT_THROW(fisher_z_test(data, 0, 0, {}, 0.05), std::invalid_argument);
}

TEST(FisherZTest, ClassTreatsDegenerateAsDependentAndMemoIsTransparent) {
    Rng rng(8);
    Eigen::MatrixXd m = gaussian(300, 4, rng);
    m.col(3).setZero();
    m.col(1) += 0.1 * m.col(0);
    const auto data = continuous(m);
    const FisherZTest memo(data, true), plain(data, false);
    auto dec = memo.test(0, 3, {}, 0.05);
    EXPECT_FALSE(dec.independent);
    for (double alpha : {0.01, 0.05, 0.2, 0.01}) {
        for (auto [x, y] : testing::all_pairs(3)) {
            auto a = memo.test(x, y, {}, alpha);
            auto b = plain.test(x, y, {}, alpha);
            EXPECT_EQ(a.p_value, b.p_value);
            EXPECT_EQ(a.independent, b.independent);
            EXPECT_EQ(a.independent, a.p_value > alpha);
        }
    }
}

Eigen::MatrixXd coin_columns(int rows, int cols, Rng& rng) {
    std::bernoulli_distribution coin(0.5);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = coin(rng);
    return m;
}

TEST(GSquareTest, MatchesHandComputedTable) {
    // 2x2 table [[30, 10], [10, 30]]: G^2 = 2 * sum n log(n N / (r c)).
    Eigen::MatrixXd m(80, 2);
    int row = 0;
    auto put = [&](int x, int y, int count) {
        for (int i = 0; i < count; ++i, ++row) {
            m(row, 0) = x;
            m(row, 1) = y;
        }
    };
    put(0, 0, 30);
    put(0, 1, 10);
    put(1, 0, 10);
    put(1, 1, 30);
    const double g2 = 2.0 * (2 * 30 * std::log(30.0 * 80 / (40 * 40)) + 2 * 10 * std::log(10.0 * 80 / (40 * 40)));
    // Chi-square(1) tail via the normal distribution.
    const double p = std::erfc(std::sqrt(g2) / std::sqrt(2.0));
    auto dec = gsquare_test(discrete(m, 2), 0, 1, {}, 0.05);
    EXPECT_NEAR(dec.statistic, g2, 1e-9);
    EXPECT_NEAR(dec.p_value, p, 1e-12);
    EXPECT_FALSE(dec.independent);
}

TEST(GSquareTest, NullCalibration) {
    Rng rng(9);
    int independent = 0;
    const int reps = 400;
    for (int i = 0; i < reps; ++i)
        independent += gsquare_test(discrete(coin_columns(2000, 2, rng), 2), 0, 1, {}, 0.05).independent;
    EXPECT_NEAR(independent / static_cast<double>(reps), 0.95, 0.035);
}

TEST(GSquareTest, CopiedColumnIsDependent) {
    Rng rng(10);
    Eigen::MatrixXd m = coin_columns(500, 2, rng);
    m.col(1) = m.col(0);
    EXPECT_FALSE(gsquare_test(discrete(m, 2), 0, 1, {}, 1e-6).independent);
}

TEST(GSquareTest, ColliderOpensOnConditioning) {
    Rng rng(11);
    std::bernoulli_distribution noise(0.1);
    int marginal_independent = 0, conditional_dependent = 0;
    for (int rep = 0; rep < 100; ++rep) {
        Eigen::MatrixXd m = coin_columns(2000, 3, rng);
        for (int i = 0; i < m.rows(); ++i)
            m(i, 2) = static_cast<double>((static_cast<int>(m(i, 0)) ^ static_cast<int>(m(i, 1))) ^ noise(rng));
        const auto data = discrete(m, 2);
        const std::vector<int> z{2};
        marginal_independent += gsquare_test(data, 0, 1, {}, 0.05).independent;
        conditional_dependent += !gsquare_test(data, 0, 1, z, 0.05).independent;
    }
    EXPECT_GE(marginal_independent, 90);
    EXPECT_GE(conditional_dependent, 90);
}

TEST(GSquareTest, DegenerateRules) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(20, 2);
    const auto flat = discrete(m, 2);
    EXPECT_THROW(gsquare_test(flat, 0, 1, {}, 0.05), DegenerateData);
    const GSquareTest lenient(flat), strict(flat, false);
    EXPECT_TRUE(lenient.test(0, 1, {}, 0.05).independent);
    EXPECT_FALSE(strict.test(0, 1, {}, 0.05).independent);

    Eigen::MatrixXd one_level = Eigen::MatrixXd::Zero(10, 2);
    Dataset unary(default_names(2), one_level, std::vector<int>{1, 2});
    EXPECT_THROW(gsquare_test(unary, 0, 1, {}, 0.05), DegenerateData);
}

TEST(GSquareTest, RejectsContinuousData) {
    Rng rng(12);
    EXPECT_THROW(gsquare_test(continuous(gaussian(10, 2, rng)), 0, 1, {}, 0.05), DataMismatch);
}

Dag collider() {
    MixedGraph g(3);
    g.add_directed(0, 1);
    g.add_directed(2, 1);
    return Dag(g);
}

TEST(DsepOracleTest, Examples) {
    const std::vector<int> b{1};
    EXPECT_TRUE(dsep_oracle(collider(), 0, 2, {}).independent);
    EXPECT_FALSE(dsep_oracle(collider(), 0, 2, b).independent);
    MixedGraph chain(3);
    chain.add_directed(0, 1);
    chain.add_directed(1, 2);
    EXPECT_TRUE(dsep_oracle(Dag(chain), 0, 2, b).independent);
    EXPECT_EQ(dsep_oracle(Dag(chain), 0, 2, b).p_value, 1.0);
    EXPECT_EQ(dsep_oracle(Dag(chain), 0, 2, {}).p_value, 0.0);
}

void check_dsep_against_paths(const Dag& dag) {
    const int n = dag.num_nodes();
    for (auto [x, y] : testing::all_pairs(n)) {
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (v != x && v != y) rest.push_back(v);
        for (const auto& s : testing::all_subsets(rest))
            ASSERT_EQ(d_separated(dag, x, y, s), testing::brute_force_d_separated(dag, x, y, s))
                << x << " " << y;
    }
}

TEST(DsepOracleTest, AgreesWithPathBlockingOnAllDagsUpToFourNodes) {
    for (int n = 2; n <= 4; ++n)
        for (const auto& dag : testing::all_dags(n)) check_dsep_against_paths(dag);
}

TEST(DsepOracleTest, AgreesWithPathBlockingOnAllFiveNodeDags) {
    for (const auto& dag : testing::all_dags(5)) check_dsep_against_paths(dag);
}

TEST(DSeparationTestClass, DelegatesToOracle) {
    const DSeparationTest t(collider());
    EXPECT_EQ(t.num_variables(), 3);
    EXPECT_TRUE(t.test(0, 2, {}, 0.05).independent);
}

}  // namespace
}  // namespace egs
