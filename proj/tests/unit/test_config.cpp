#include <gtest/gtest.h>

#include "thermowiener/config.hpp"

using namespace thermowiener;

TEST(Config, ParsesAndDefaults) {
  const RunConfig c = RunConfig::parse("# comment\nseed = 7\nwiener.lambda = 0.5  # inline\n");
  EXPECT_EQ(c.seed(), 7u);
  EXPECT_DOUBLE_EQ(c.real("wiener.lambda"), 0.5);
  EXPECT_DOUBLE_EQ(c.real("wiener.mu"), 0.5);
  EXPECT_FALSE(c.has("wiener.mu"));
  EXPECT_EQ(c.reals("wiener.s_values"), (std::vector<double>{5, 10, 15, 20, 25, 30}));
}

TEST(Config, UnknownKeyReportsLine) {
  try {
    RunConfig::parse("seed = 1\nwiener.lamda = 0.2\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("config line 2"), std::string::npos);
  }
}

TEST(Config, RejectsBadValues) {
  EXPECT_THROW(RunConfig::parse("wiener.lambda = 1.5\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("wiener.lambda = 0\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("seed = 1\nseed = 2\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("wiener.K_max = -3\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("metric.kind = hyperbolic\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("no equals sign\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("classify.use_cone = maybe\n"), ConfigError);
}

TEST(Config, RelationsAreChecked) {
  EXPECT_THROW(RunConfig::parse("pde.walkers = 50\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("metric.kind = heisenberg\nmetric.dim = 2\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("domain.benchmark = cone\ndomain.radius = 0.3\n"), ConfigError);
  EXPECT_THROW(RunConfig::parse("domain.benchmark = nowhere\n"), ConfigError);
}

TEST(Config, CanonicalFormAndHash) {
  const RunConfig a = RunConfig::parse("wiener.lambda = 0.25\nseed = 3\n");
  const RunConfig b = RunConfig::parse("seed=3\n\n  wiener.lambda   =   0.25\n");
  EXPECT_EQ(a.canonical(), "seed = 3\nwiener.lambda = 0.25\n");
  EXPECT_EQ(a.canonical(), b.canonical());
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash_hex().size(), 16u);
  const RunConfig c = RunConfig::parse("wiener.lambda = 0.25\nseed = 4\n");
  EXPECT_NE(a.hash(), c.hash());
  EXPECT_EQ(RunConfig::parse(a.canonical()).canonical(), a.canonical());
}

TEST(Config, TypedViews) {
  const RunConfig c = RunConfig::parse("domain.benchmark = cylinder-top\nwiener.K_max = 25\npde.seed = 11\n");
  EXPECT_EQ(c.domain().family(), Family::kCylinder);
  EXPECT_EQ(c.series_options().K_max, 25);
  EXPECT_EQ(c.walk_config().seed, 11u);
  const RunConfig h = RunConfig::parse("metric.kind = heisenberg\nmetric.dim = 3\n");
  EXPECT_EQ(h.metric().dim(), 3);
}

TEST(Config, SchemaDocumentsEveryKey) {
  for (const auto& k : RunConfig::schema()) {
    EXPECT_FALSE(k.key.empty());
    EXPECT_FALSE(k.doc.empty()) << k.key;
  }
}
