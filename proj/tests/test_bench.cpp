#include "ave/bench.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using ave::BenchConfig;
using ave::Method;

namespace {

BenchConfig small_config() {
    BenchConfig c;
    c.p_values = { 0.0 };
    c.q_values = { 0.0, 100.0 };
    c.m_values = { 10 };
    return c;
}

const ave::BenchRow &find(const ave::BenchReport &r, double q, Method m) {
    for (const auto &row : r.rows) {
        if (row.q == q && row.method == m) {
            return row;
        }
    }
    throw std::logic_error("row not found");
}

}  // namespace

TEST(Bench, RowsFollowConfigOrder) {
    const auto rep = ave::run_bench(small_config());
    ASSERT_EQ(rep.rows.size(), 6u);
    EXPECT_EQ(rep.rows[0].method, Method::HssLike);
    EXPECT_EQ(rep.rows[2].method, Method::Picard);
    EXPECT_EQ(rep.rows[3].q, 100.0);
}

TEST(Bench, ReferenceCells) {
    const auto rep = ave::run_bench(small_config());
    const auto &h = find(rep, 0.0, Method::HssLike);
    EXPECT_EQ(h.status, "Converged");
    EXPECT_EQ(h.it, 27u);
    EXPECT_DOUBLE_EQ(*h.alpha, 1.3);
    EXPECT_NEAR(h.res_e6, 9.4084, 1e-3);
    EXPECT_DOUBLE_EQ(h.res_e6, h.res / 1e-6);
    const auto &pic = find(rep, 100.0, Method::Picard);
    EXPECT_EQ(pic.it, 4u);
    EXPECT_FALSE(pic.alpha);
    EXPECT_NE(find(rep, 0.0, Method::Picard).status, "Converged");
}

TEST(Bench, FixedAlphaAppliesToAllRows) {
    auto c = small_config();
    c.alpha_source = ave::AlphaFixed{ 1.0 };
    for (const auto &row : ave::run_bench(c).rows) {
        if (row.method != Method::Picard) {
            EXPECT_DOUBLE_EQ(*row.alpha, 1.0);
        }
    }
}

TEST(Bench, TunedAlpha) {
    auto c = small_config();
    c.q_values = { 10.0 };
    c.methods = { Method::HssLike };
    c.alpha_source = ave::AlphaTuned{};
    const auto rep = ave::run_bench(c);
    ASSERT_EQ(rep.rows.size(), 1u);
    EXPECT_NEAR(*rep.rows[0].alpha, 1.7, 0.2 + 1e-9);
}

TEST(Bench, ParallelMatchesSequentialCounts) {
    auto c = small_config();
    const auto a = ave::run_bench(c);
    c.parallel = true;
    const auto b = ave::run_bench(c);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].it, b.rows[i].it);
        EXPECT_EQ(a.rows[i].status, b.rows[i].status);
        EXPECT_EQ(a.rows[i].res, b.rows[i].res);
    }
}

TEST(Bench, EmptyMethodsIsUsageError) {
    auto c = small_config();
    c.methods.clear();
    EXPECT_THROW((void)ave::run_bench(c), std::invalid_argument);
}

TEST(Bench, MissingTableEntryRejected) {
    auto c = small_config();
    c.q_values = { 5.0 };
    EXPECT_THROW((void)ave::run_bench(c), std::invalid_argument);
}

TEST(Bench, CsvRoundTripIsLossless) {
    const auto rep = ave::run_bench(small_config());
    std::stringstream first;
    ave::write_bench_csv(first, rep);
    std::stringstream in(first.str());
    const auto back = ave::read_bench_csv(in);
    EXPECT_EQ(back.rows, rep.rows);
    std::stringstream second;
    ave::write_bench_csv(second, back);
    EXPECT_EQ(first.str(), second.str());
}

TEST(Bench, CsvRejectsBadHeader) {
    std::istringstream in("a,b,c\n");
    EXPECT_THROW((void)ave::read_bench_csv(in), ave::io::format_error);
}

TEST(Bench, MarkdownMarksNonConvergedCells) {
    std::ostringstream out;
    ave::write_bench_markdown(out, ave::run_bench(small_config()));
    const auto md = out.str();
    EXPECT_NE(md.find("| 27 |"), std::string::npos);
    EXPECT_NE(md.find("--"), std::string::npos);
    EXPECT_NE(md.find("IT_out"), std::string::npos);
}

TEST(Bench, ConfigFromJson) {
    const auto j = nlohmann::json::parse(R"({"p_values":[0.5],"q_values":[1],"m_values":[10],"methods":["hss-like"],"alpha":1.25,"tol":1e-6,"grid":"1:2:0.5"})");
    const auto c = BenchConfig::from_json(j);
    EXPECT_EQ(c.p_values, std::vector<double>{ 0.5 });
    EXPECT_DOUBLE_EQ(std::get<ave::AlphaFixed>(c.alpha_source).value, 1.25);
    EXPECT_DOUBLE_EQ(c.tol, 1e-6);
    EXPECT_EQ(c.grid.alphas.size(), 3u);
    EXPECT_THROW((void)BenchConfig::from_json(nlohmann::json::parse(R"({"methods":["newton"]})")), std::invalid_argument);
    EXPECT_THROW((void)BenchConfig::parse_alpha_source("-1"), std::invalid_argument);
    EXPECT_TRUE(std::holds_alternative<ave::AlphaTuned>(BenchConfig::parse_alpha_source("tune")));
}

TEST(Bench, ShippedAlphaTableMatchesBuiltIn) {
    std::ifstream in(AVE_DATA_DIR "/alpha_table.json");
    ASSERT_TRUE(in);
    const auto table = ave::alpha_table_from_json(nlohmann::json::parse(in));
    const auto builtin = ave::default_alpha_table();
    ASSERT_EQ(table.size(), builtin.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        EXPECT_EQ(table[i].p, builtin[i].p);
        EXPECT_EQ(table[i].q, builtin[i].q);
        EXPECT_EQ(table[i].m, builtin[i].m);
        EXPECT_EQ(table[i].hss_like, builtin[i].hss_like);
        EXPECT_EQ(table[i].picard_hss, builtin[i].picard_hss);
    }
}
