#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "qcopies/commands.hpp"
#include "qcopies/errors.hpp"

namespace qc = qcopies;

TEST(Config, PrecedenceDefaultsFileFlags) {
  const auto m = qc::merge_config("hoeffding", qc::Json{{"t", 50}, {"h", 0.3}}, qc::Json{{"h", 0.25}, {"seed", 1}});
  EXPECT_EQ(m.at("t").get<int>(), 50);
  EXPECT_DOUBLE_EQ(m.at("h").get<double>(), 0.25);
  EXPECT_DOUBLE_EQ(m.at("delta").get<double>(), 1e-4);
}

TEST(Config, UnknownKeysAndCommands) {
  EXPECT_THROW(qc::merge_config("allocate", qc::Json{{"bogus", 1}}, qc::Json::object()), qc::ConfigError);
  EXPECT_THROW(qc::merge_config("nope", qc::Json::object(), qc::Json::object()), qc::ConfigError);
  for (const auto& name : qc::command_names()) EXPECT_TRUE(qc::default_config(name).is_object());
}

TEST(Config, SeedFallsBackToEnvironment) {
  setenv("QCOPIES_SEED", "1234", 1);
  const auto m = qc::merge_config("simulate", qc::Json::object(), qc::Json::object());
  EXPECT_EQ(m.at("seed").get<std::uint64_t>(), 1234u);
  const auto f = qc::merge_config("simulate", qc::Json::object(), qc::Json{{"seed", 7}});
  EXPECT_EQ(f.at("seed").get<std::uint64_t>(), 7u);
  setenv("QCOPIES_SEED", "12x", 1);
  EXPECT_THROW(qc::merge_config("simulate", qc::Json::object(), qc::Json::object()), qc::ConfigError);
  unsetenv("QCOPIES_SEED");
}

TEST(Commands, AllocateUniformProbabilities) {
  const auto cfg = qc::merge_config("allocate", qc::Json::object(),
                                    qc::Json{{"n", 4}, {"p", "0.5,0.5,0.5,0.5,0.5"}, {"epsilon0", 0.05}});
  const auto out = qc::run_command("allocate", cfg);
  // k = (1/16, 1/64 x4): sum sqrt k = 0.75, t_1 = 0.25*0.75/0.0025 = 75, t_j = 37.5 -> 38.
  const auto t = out.report.at("t").get<std::vector<std::int64_t>>();
  EXPECT_EQ(t, (std::vector<std::int64_t>{75, 38, 38, 38, 38}));
  EXPECT_FALSE(out.summary.empty());
}

TEST(Commands, BadInputsMapToExitCodes) {
  const auto bad_p = qc::merge_config("allocate", qc::Json::object(), qc::Json{{"n", 2}, {"p", "0.5,1.7,0.2"}});
  try {
    qc::run_command("allocate", bad_p);
    FAIL() << "expected an error";
  } catch (const std::exception& e) {
    EXPECT_EQ(qc::exit_code_for(e), 2);
  }
  EXPECT_EQ(qc::exit_code_for(qc::DomainError("x")), 3);
  EXPECT_EQ(qc::exit_code_for(qc::ConfigError("x")), 2);
  EXPECT_EQ(qc::exit_code_for(std::runtime_error("x")), 1);
}

TEST(Commands, SimulateIsDeterministicPerSeed) {
  const auto cfg = qc::merge_config("simulate", qc::Json::object(),
                                    qc::Json{{"n", 3}, {"fidelity", 0.8}, {"trials", 20}, {"seed", 5}});
  const auto a = qc::run_command("simulate", cfg);
  const auto b = qc::run_command("simulate", cfg);
  EXPECT_EQ(a.report.dump(), b.report.dump());
  ASSERT_FALSE(a.files.empty());
  EXPECT_EQ(a.files, b.files);
}

TEST(Commands, TenPhotonArithmetic) {
  const auto c = qc::tenphoton_cost(2.8e-5, 110);
  const double pair = std::pow(2.8e-5 * 3600, 0.25);
  EXPECT_NEAR(c.ten_photon_per_hour, std::pow(pair, 5), 1e-15);
  EXPECT_NEAR(c.hours, 110 / c.ten_photon_per_hour, 1e-9);
  EXPECT_NEAR(c.days, c.hours / 24, 1e-12);
}

TEST(Parsing, SchedulesAndLists) {
  const auto s = qc::parse_schedule("0.01:0.1:0.0001");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s[0], 0.01);
  EXPECT_EQ(qc::parse_schedule("0.1,0.01").size(), 2u);
  EXPECT_THROW(qc::parse_schedule("0.01,0.1"), qc::ConfigError);
  EXPECT_THROW(qc::parse_number_list("1,x,3"), qc::ConfigError);
  EXPECT_EQ(qc::parse_number_list("1, 2.5 ,3"), (std::vector<double>{1, 2.5, 3}));
}
