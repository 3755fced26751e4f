#include <gtest/gtest.h>

#include "suites.hpp"

using namespace glab::tools;

TEST(Suites, NamesAndCriteria) {
    EXPECT_EQ(suite_names().size(), 10u);
    EXPECT_EQ(suite_criterion("rotation"), 1);
    EXPECT_EQ(suite_criterion("regularity"), 7);
    EXPECT_THROW(suite_criterion("nope"), std::invalid_argument);
}

TEST(Suites, InvalidConfig) {
    ExperimentConfig c;
    c.suite = "nope";
    EXPECT_THROW(run_suite(c), std::invalid_argument);
    c.suite = "dkkw";
    c.levels = 1;
    EXPECT_THROW(run_suite(c), std::invalid_argument);
    c.levels = 40;
    c.max_dim = 1000;
    EXPECT_THROW(run_suite(c), std::length_error);
}

TEST(Suites, EmptyReportIsHeaderOnly) { EXPECT_EQ(report_csv({}), "quantity,scale,value,bound_kind,witness,seed\n"); }

TEST(Suites, DeterministicBytes) {
    ExperimentConfig c;
    c.suite = "thmA";
    c.levels = 5;
    c.seed = 7;
    const auto a = run_suite(c), b = run_suite(c);
    EXPECT_EQ(report_csv(a.rows), report_csv(b.rows));
    c.suite = "calibration";
    EXPECT_EQ(report_csv(run_suite(c).rows), report_csv(run_suite(c).rows));
}

TEST(Suites, VerdictJson) {
    ExperimentConfig c;
    c.suite = "rotation";
    const auto r = run_suite(c);
    const auto j = verdict_json(r);
    EXPECT_EQ(j.at("schema"), "glab.verdict/1");
    EXPECT_TRUE(j.at("pass").get<bool>());
    EXPECT_EQ(j.at("provenance").at("suite"), "rotation");
    for (const auto& v : j.at("verdicts")) EXPECT_EQ(v.at("criterion"), 1);
}
