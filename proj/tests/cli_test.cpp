#include "sepfaces/cli.hpp"

#include <gtest/gtest.h>

namespace sepfaces {
namespace {

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

TEST(CliTest, BGrid) {
  RunConfig c = config("witness");
  EXPECT_EQ(config_b_values(c), std::vector<double>{0.5});
  c.grid = "log:50";
  const auto g = config_b_values(c);
  ASSERT_EQ(g.size(), 50U);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_TRUE(std::isinf(g.back()));
  EXPECT_NEAR(g[1], 1e-2, 1e-15);
  EXPECT_NEAR(g[48], 1e2, 1e-11);
  for (std::size_t i = 2; i < 49; ++i) EXPECT_GT(g[i], g[i - 1]);
  c.grid = "0,1,inf";
  c.b = "2";
  EXPECT_EQ(config_b_values(c).size(), 4U);
  c.grid = "0,-1";
  EXPECT_THROW(config_b_values(c), ConfigError);
  c.grid = "log:x";
  EXPECT_THROW(config_b_values(c), ConfigError);
}

TEST(CliTest, RenderFormats) {
  Report r{"demo", json::object(), {"name", "value", "ok"}};
  r.rows.push_back({"a,b", 1.5, true});
  r.rows.push_back({"c", nullptr, false});
  r.check(false, "c failed");
  EXPECT_EQ(render(r, "csv"), "name,value,ok\n\"a,b\",1.5,true\nc,,false\n");
  const std::string md = render(r, "md");
  EXPECT_NE(md.find("| a,b | 1.5 | ✓ |"), std::string::npos);
  EXPECT_NE(md.find("- c failed"), std::string::npos);
  const json j = json::parse(render(r, "json"));
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_EQ(j["rows"][0]["name"], "a,b");
  EXPECT_THROW(render(r, "xml"), ConfigError);
}

TEST(CliTest, CommandsPassWithDefaults) {
  RunConfig c = config("enumerate");
  c.shapes = {"2x2", "2x3", "2x4"};
  c.trials = 20;
  const Report e = run_command(c);
  EXPECT_TRUE(e.pass());
  EXPECT_EQ(e.rows.size(), 3U);
  EXPECT_EQ(e.rows[2][3], json({{"4", 20}}));

  RunConfig cy = config("cyclic");
  cy.trials = 2000;
  EXPECT_TRUE(run_command(cy).pass());

  RunConfig f = config("faces");
  f.shapes = {"2x2", "2x3"};
  const Report fr = run_command(f);
  EXPECT_TRUE(fr.pass());
  EXPECT_EQ(fr.rows[0][3], 6);
  EXPECT_EQ(fr.rows[1][3], 8);
}

TEST(CliTest, FailuresAreReported) {
  RunConfig c = config("enumerate");
  c.trials = 5;
  c.tol = 1e-30;
  const Report r = run_command(c);
  EXPECT_FALSE(r.pass());
}

TEST(CliTest, ConfigErrors) {
  EXPECT_THROW(run_command(config("nope")), ConfigError);
  RunConfig c = config("faces");
  c.shapes = {"2x"};
  EXPECT_THROW(run_command(c), ConfigError);
  c = config("cyclic");
  c.tol = -1.0;
  EXPECT_THROW(run_command(c), ConfigError);
  c = config("catalog");
  c.shapes = {"2x3"};
  EXPECT_THROW(run_command(c), ConfigError);
}

TEST(CliTest, WitnessReportIndependentOfThreads) {
  RunConfig c = config("witness");
  c.b = "2";
  c.zero_starts = 300;
  c.threads = 1;
  const std::string one = render(run_command(c), "json");
  c.threads = 3;
  EXPECT_EQ(render(run_command(c), "json"), one);
}

}  // namespace
}  // namespace sepfaces
