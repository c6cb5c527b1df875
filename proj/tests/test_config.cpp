#include <cmath>
#include <limits>

#include "test_support.hpp"

using namespace cgtest;

namespace {

std::size_t error_line(const std::string& text) {
  RunConfig cfg;
  try {
    apply_config_text(cfg, text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return 0;
}

RunConfig small(std::vector<std::string> suites, std::uint64_t seed = 7) {
  RunConfig cfg;
  cfg.suites = std::move(suites);
  cfg.seed = seed;
  cfg.seed_given = true;
  cfg.points = 8;
  return cfg;
}

}  // namespace

TEST(KeyValue, BlocksCommentsAndLines) {
  const auto blocks = parse_key_value_blocks("# header\na = 1\nb = \"x\"\n\n\nc = [1, 2]\n");
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0][1].key, "b");
  EXPECT_EQ(blocks[0][1].value, "x");
  EXPECT_EQ(blocks[1][0].line, 6u);
  EXPECT_TRUE(parse_key_value_blocks("\n# only a comment\n").empty());
}

TEST(KeyValue, Errors) {
  EXPECT_THROW((void)parse_key_value_blocks("a 1\n"), ConfigError);
  EXPECT_THROW((void)parse_key_value_blocks(" = 1\n"), ConfigError);
  try {
    (void)parse_key_value_blocks("a = 1\nb = [1,\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Config, AppliesEveryKey) {
  RunConfig cfg;
  apply_config_text(cfg, R"cfg(n = 3
m = 2
subset = [1, 3]
metric = "lambda"
lambda = "w*q*p"
lambda.2 = "q2^2"
seed = 11
points = 20
suite = ["table1", "nabla"]
catalog = "cat.txt"
)cfg");
  EXPECT_EQ(cfg.n, 3);
  EXPECT_EQ(cfg.m, 2);
  EXPECT_EQ(cfg.index_subset().indices(), (std::vector<int>{1, 3}));
  EXPECT_EQ(cfg.metric, "lambda");
  EXPECT_EQ(cfg.seed, 11u);
  EXPECT_TRUE(cfg.seed_given);
  EXPECT_EQ(cfg.points, 20u);
  EXPECT_EQ(cfg.suites, (std::vector<std::string>{"table1", "nabla"}));
  EXPECT_EQ(cfg.catalog_path, "cat.txt");
  const PhaseSpace s(3);
  const LambdaFamily lam = cfg.lambda(s);
  EXPECT_EQ(free_variables(lam.components[0]), (std::set<std::string>{"w", "q1", "p1"}));
  EXPECT_EQ(free_variables(lam.components[1]), (std::set<std::string>{"q2"}));
  EXPECT_NO_THROW(validate(cfg));
}

TEST(Config, SingleSuiteStringAndDefaults) {
  RunConfig cfg;
  EXPECT_FALSE(cfg.seed_given);
  apply_config_text(cfg, "suite = \"einstein\"\nseed = \"5\"\n");
  EXPECT_EQ(cfg.suites, (std::vector<std::string>{"einstein"}));
  EXPECT_EQ(cfg.seed, 5u);
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("n = 2\nflavour = 1\n"), 2u);
  EXPECT_EQ(error_line("n = \"two\"\n"), 1u);
  EXPECT_EQ(error_line("\n\nmetric = acs\n"), 3u);
  EXPECT_EQ(error_line("metric = 3\n"), 1u);
  EXPECT_EQ(error_line("points = 0\n"), 1u);
  EXPECT_EQ(error_line("subset = [1, \"a\"]\n"), 1u);
  EXPECT_EQ(error_line("lambda.x = \"q\"\n"), 1u);
}

TEST(Config, ValidateRejectsBadValues) {
  auto bad = [](auto edit) {
    RunConfig cfg;
    edit(cfg);
    EXPECT_THROW(validate(cfg), ConfigError);
  };
  bad([](RunConfig& c) { c.n = 0; });
  bad([](RunConfig& c) { c.m = 3; });
  bad([](RunConfig& c) { c.metric = "kahler"; });
  bad([](RunConfig& c) { c.subset = std::vector<int>{1, 1}; });
  bad([](RunConfig& c) { c.subset = std::vector<int>{4}; });
  bad([](RunConfig& c) { c.lambda_template = "q*("; });
  bad([](RunConfig& c) { c.lambda_components[5] = "q"; });
}

TEST(Verify, UnknownSuiteIsConfigError) { EXPECT_THROW((void)run_suite(small({"table2"})), ConfigError); }

TEST(Verify, Deterministic) {
  const RunConfig cfg = small({"structures", "legendre", "table1"});
  const std::string a = run_suite(cfg).to_json_lines();
  EXPECT_EQ(a, run_suite(cfg).to_json_lines());
  EXPECT_NE(a, run_suite(small({"structures", "legendre", "table1"}, 8)).to_json_lines());
}

TEST(Verify, RecordsSortedAndPassing) {
  const Report r = run_suite(small({"heisenberg", "hamiltonian", "commutator", "metrics"}));
  ASSERT_FALSE(r.records.empty());
  for (std::size_t i = 1; i < r.records.size(); ++i) EXPECT_LE(r.records[i - 1].check, r.records[i].check);
  for (const auto& rec : r.records) EXPECT_TRUE(rec.pass) << rec.check << " " << rec.max_residual << " " << rec.error;
  EXPECT_TRUE(r.all_pass());
}

TEST(Verify, EinsteinFitAtThreeDegreesOfFreedom) {
  RunConfig cfg = small({"einstein"});
  cfg.n = 3;
  cfg.points = 3;
  const Report r = run_suite(cfg);
  ASSERT_TRUE(r.all_pass());
  const auto fit = std::find_if(r.records.begin(), r.records.end(), [](const auto& x) { return x.check == "einstein.fit"; });
  ASSERT_NE(fit, r.records.end());
  EXPECT_NEAR(fit->extra["lambda"].get<double>(), 8.0, 1e-8);
  EXPECT_NEAR(fit->extra["nu"].get<double>(), -2.0, 1e-8);
}

TEST(Verify, NegativeControlFailsForEvenLambda) {
  RunConfig cfg = small({"legendre"});
  cfg.lambda_template = "(q*p)^2";
  const Report r = run_suite(cfg);
  EXPECT_GT(r.failures(), 0u);
}

TEST(Verify, JsonLinesShape) {
  const Report r = run_suite(small({"table1"}));
  const std::string text = r.to_json_lines(true);
  std::istringstream in(text);
  std::string line;
  std::size_t count = 0;
  Json last;
  while (std::getline(in, line)) {
    last = Json::parse(line);
    if (!last.contains("summary")) {
      for (const char* key : {"check", "identity", "max_residual", "tolerance", "comparison", "pass", "points", "wall_seconds"})
        EXPECT_TRUE(last.contains(key)) << key;
    }
    ++count;
  }
  EXPECT_EQ(count, r.records.size() + 1);
  EXPECT_EQ(last["checks"], r.records.size());
  EXPECT_EQ(last["failed"], 0);
}

TEST(Output, SeventeenDigitsAndNull) {
  EXPECT_EQ(dump_json(Json{{"x", 0.1}}), "{\"x\":0.10000000000000001}");
  EXPECT_EQ(Json::parse(dump_json(Json(1.0 / 3.0))).get<double>(), 1.0 / 3.0);
  EXPECT_EQ(dump_json(Json::array({std::numeric_limits<double>::quiet_NaN(), 2})), "[null,2]");
}
