#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pv/harness.hpp"
#include "pv/report.hpp"

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "pv_harness_test";
  fs::create_directories(dir);
  return dir / name;
}

pv::SweepConfig small(unsigned workers) {
  pv::SweepConfig cfg;
  cfg.q_min = 3;
  cfg.q_max = 60;
  cfg.workers = workers;
  return cfg;
}

TEST(Harness, SweepCoversEveryPrimitiveCharacter) {
  const auto rep = pv::run_sweep(small(1));
  EXPECT_TRUE(rep.ok());
  std::size_t expected = 0;
  for (std::uint32_t q = 3; q <= 60; ++q) expected += pv::primitive_characters(q).size();
  EXPECT_EQ(rep.rows.size(), expected);
  EXPECT_EQ(rep.summary.characters_checked, expected);
  EXPECT_EQ(rep.summary.moduli, 58u);
  EXPECT_EQ(rep.summary.violations, 0u);
  EXPECT_EQ(rep.summary.per_bound.size(), pv::bound_catalog().size());
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    const auto& a = rep.rows[i - 1];
    const auto& b = rep.rows[i];
    EXPECT_TRUE(a.q < b.q || (a.q == b.q && a.label < b.label));
  }
  for (const auto& row : rep.rows) {
    EXPECT_EQ(row.conductor, row.q);
    ASSERT_EQ(row.bounds.size(), pv::bound_catalog().size());
    EXPECT_GT(row.bounds[0].margin, 0.0);
  }
  EXPECT_EQ(rep.summary.max_ratio_q, 5u);
}

TEST(Harness, WorkerCountDoesNotChangeOutput) {
  auto one = small(1);
  auto eight = small(8);
  one.output_path = scratch("w1.csv").string();
  eight.output_path = scratch("w8.csv").string();
  pv::run_sweep(one);
  pv::run_sweep(eight);
  const auto a = slurp(one.output_path), b = slurp(eight.output_path);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  EXPECT_FALSE(fs::exists(one.output_path + ".partial"));

  one.format = eight.format = pv::OutputFormat::json;
  one.output_path = scratch("w1.json").string();
  eight.output_path = scratch("w8.json").string();
  pv::run_sweep(one);
  pv::run_sweep(eight);
  auto ja = nlohmann::json::parse(slurp(one.output_path));
  auto jb = nlohmann::json::parse(slurp(eight.output_path));
  EXPECT_EQ(ja["rows"], jb["rows"]);
  EXPECT_EQ(ja["schema"], 1);
  EXPECT_EQ(ja["summary"]["violations"], 0);
}

TEST(Harness, CsvShape) {
  auto cfg = small(2);
  cfg.q_max = 5;
  cfg.bounds = {pv::BoundName::pomerance, pv::BoundName::theorem1};
  cfg.output_path = scratch("shape.csv").string();
  pv::run_sweep(cfg);
  std::istringstream in(slurp(cfg.output_path));
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  // Requested bounds come out in catalog order.
  EXPECT_EQ(header,
            "q,char_label,parity,conductor,s_chi,t_chi,M,N,t_N,ratio,theorem1,theorem1_margin,"
            "pomerance,pomerance_margin,violation");
  EXPECT_EQ(first.substr(0, 18), "3,1,odd,3,1,1,0,1,");
}

TEST(Harness, ParityFilter) {
  auto cfg = small(1);
  cfg.parities = {pv::Parity::odd};
  for (const auto& row : pv::run_sweep(cfg).rows) EXPECT_EQ(row.parity, pv::Parity::odd);
}

TEST(Harness, ConfigValidation) {
  auto cfg = small(1);
  cfg.q_min = 2;
  EXPECT_THROW(pv::run_sweep(cfg), pv::ConfigError);
  cfg = small(1);
  cfg.q_min = 50;
  cfg.q_max = 10;
  EXPECT_THROW(pv::run_sweep(cfg), pv::ConfigError);
  cfg = small(0);
  EXPECT_THROW(pv::run_sweep(cfg), pv::ConfigError);
  cfg = small(1);
  cfg.parities.clear();
  EXPECT_THROW(pv::run_sweep(cfg), pv::ConfigError);
  EXPECT_THROW(pv::parse_output_format("xml"), pv::ConfigError);
}

TEST(Harness, WorkersFromEnvironment) {
  ::setenv("PV_WORKERS", "6", 1);
  EXPECT_EQ(pv::workers_from_env(), 6u);
  ::setenv("PV_WORKERS", "zero", 1);
  EXPECT_FALSE(pv::workers_from_env().has_value());
  ::unsetenv("PV_WORKERS");
  EXPECT_FALSE(pv::workers_from_env().has_value());
}

TEST(Harness, PerturbedConstantReachesEveryRow) {
  // No choice of C0 drives theorem1 below the true sums: the psi term grows like 1/C0
  // while the second term only falls like log C0. Detection of a bad C0 is the job of
  // the constants suite; here we check the value is actually threaded through.
  auto cfg = small(4);
  cfg.bounds = {pv::BoundName::theorem1};
  cfg.c0_value = pv::c0() - 5;
  const auto rep = pv::run_sweep(cfg);
  ASSERT_FALSE(rep.rows.empty());
  for (const auto& row : rep.rows) {
    ASSERT_EQ(row.bounds.size(), 1u);
    EXPECT_EQ(row.bounds[0].value, pv::theorem1_bound(row.q, row.parity, cfg.c0_value).value);
    EXPECT_NE(row.bounds[0].value, pv::theorem1_bound(row.q, row.parity).value);
  }
}

TEST(Harness, AtomicWriterLeavesNothingOnAbort) {
  const auto path = scratch("aborted.txt");
  fs::remove(path);
  {
    pv::report::AtomicFileWriter w(path);
    w.write("partial");
  }
  EXPECT_FALSE(fs::exists(path));
  EXPECT_FALSE(fs::exists(path.string() + ".partial"));
  {
    pv::report::AtomicFileWriter w(path);
    w.write("done");
    w.commit();
  }
  EXPECT_EQ(slurp(path), "done");
}

TEST(Report, ShortestRoundTrip) {
  EXPECT_EQ(pv::report::format_double(0.1), "0.1");
  EXPECT_EQ(pv::report::format_double(2.0), "2");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(std::stod(pv::report::format_double(x)), x);
}

TEST(Report, CharacterJson) {
  const pv::DirichletCharacter chi(pv::UnitGroup(8), {1, 1});
  const auto j = nlohmann::json::parse(pv::report::character_json(chi));
  EXPECT_EQ(j["q"], 8);
  EXPECT_EQ(j["label"], nlohmann::json::array({1, 1}));
  EXPECT_EQ(j["conductor"], 8);
  EXPECT_EQ(j["parity"], "odd");
  EXPECT_EQ(j["order"], 2);
  EXPECT_FALSE(j.contains("values"));
}

TEST(VerifyAll, EmptySelectionWarns) {
  pv::VerifyConfig cfg;
  cfg.suites = std::vector<std::string>{};
  const auto out = pv::verify_all(cfg);
  EXPECT_EQ(out.status(), 0);
  EXPECT_EQ(out.warnings.size(), 1u);
  EXPECT_TRUE(out.suites.empty());
}

TEST(VerifyAll, UnknownSuiteFails) {
  pv::VerifyConfig cfg;
  cfg.suites = std::vector<std::string>{"lemma4", "bogus"};
  const auto out = pv::verify_all(cfg);
  ASSERT_EQ(out.suites.size(), 2u);
  EXPECT_TRUE(out.suites[0].passed);
  EXPECT_FALSE(out.suites[1].passed);
  EXPECT_EQ(out.status(), 1);
}

TEST(VerifyAll, SmallRunPassesAndPerturbedConstantFails) {
  pv::VerifyConfig cfg;
  cfg.sweep.q_max = 40;
  cfg.lemma_n_max = 60;
  const auto ok = pv::verify_all(cfg);
  EXPECT_EQ(ok.suites.size(), pv::VerifyConfig::suite_names().size());
  for (const auto& s : ok.suites) EXPECT_TRUE(s.passed) << s.name << ": " << s.detail;
  EXPECT_EQ(ok.status(), 0);

  cfg.c0_value = pv::c0() - 5;
  cfg.suites = std::vector<std::string>{"constants", "sweep"};
  const auto bad = pv::verify_all(cfg);
  EXPECT_NE(bad.status(), 0);
  EXPECT_FALSE(bad.suites[0].passed);
}

}  // namespace
