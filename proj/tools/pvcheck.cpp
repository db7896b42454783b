// pvcheck: exhaustive character-sum sweeps and numeric checks of explicit
// Polya-Vinogradov bounds.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "pv/bounds.hpp"
#include "pv/characters.hpp"
#include "pv/charsums.hpp"
#include "pv/harness.hpp"
#include "pv/kernel.hpp"
#include "pv/lemmas.hpp"
#include "pv/report.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<pv::Parity> parse_parities(const std::string& text) {
  if (text == "both") return {pv::Parity::even, pv::Parity::odd};
  return {pv::parse_parity(text)};
}

// Table output goes to `path` atomically, or to stdout when no path is given.
template <typename Fn>
void emit_table(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write([](std::string_view s) { std::cout << s; });
    std::cout.flush();
    return;
  }
  pv::report::AtomicFileWriter out(path);
  write([&](std::string_view s) { out.write(s); });
  out.commit();
}

unsigned resolve_workers(unsigned requested) {
  if (auto env = pv::workers_from_env()) return *env;
  return requested;
}

int cmd_sweep(unsigned q_min, unsigned q_max, const std::string& parity, const std::string& bounds,
              unsigned workers, const std::string& format, const std::string& out) {
  pv::SweepConfig cfg;
  cfg.q_min = q_min;
  cfg.q_max = q_max;
  cfg.parities = parse_parities(parity);
  if (bounds != "all") {
    cfg.bounds.clear();
    for (const auto& name : split_list(bounds)) cfg.bounds.push_back(pv::parse_bound_name(name));
  }
  cfg.workers = resolve_workers(workers);
  cfg.format = pv::parse_output_format(format);
  cfg.output_path = out;
  cfg.retain_rows = out.empty();
  const auto report = pv::run_sweep(cfg);

  if (out.empty()) {
    if (cfg.format == pv::OutputFormat::csv) {
      std::vector<pv::BoundName> names;
      for (const auto& b : pv::bound_catalog())
        if (std::find(cfg.bounds.begin(), cfg.bounds.end(), b.name) != cfg.bounds.end())
          names.push_back(b.name);
      std::cout << pv::report::sweep_csv_header(names);
      for (const auto& row : report.rows) std::cout << pv::report::sweep_csv_row(row);
    } else {
      std::cout << fmt::format("{{\"schema\":{},\"kind\":\"sweep\",\"config\":{},\"rows\":[",
                               pv::report::kSchemaVersion, pv::report::sweep_config_json(cfg));
      for (std::size_t i = 0; i < report.rows.size(); ++i)
        std::cout << (i ? ",\n" : "\n") << pv::report::sweep_row_json(report.rows[i]);
      std::cout << fmt::format("\n],\"summary\":{}}}\n",
                               pv::report::sweep_summary_json(report.summary));
    }
  }
  std::cerr << pv::report::sweep_summary_json(report.summary) << "\n";
  if (!report.ok()) {
    std::cerr << fmt::format("sweep FAILED: {} violation(s), {} S!=2T failure(s)\n",
                             report.summary.violations, report.summary.parity_failures);
    return 1;
  }
  return 0;
}

int cmd_bounds(std::uint64_t q, const std::string& parity, const std::string& format) {
  std::vector<pv::BoundValue> values;
  for (const auto p : parse_parities(parity))
    for (const auto& b : pv::bound_catalog()) values.push_back(pv::evaluate_bound(b.name, q, p));
  if (format == "json") {
    std::cout << pv::report::bounds_json(values) << "\n";
  } else {
    std::cout << pv::report::bounds_csv_header();
    for (const auto& v : values) std::cout << pv::report::bounds_csv_row(v);
  }
  return 0;
}

int cmd_crossover(const std::string& parity, std::uint64_t limit) {
  for (const auto p : parse_parities(parity))
    std::cout << pv::report::crossover_json(pv::crossover(p, limit)) << "\n";
  return 0;
}

int cmd_kernel_check(const std::string& grid_name, const std::string& out) {
  pv::kernel::GridSpec grid;
  if (grid_name == "default") {
    grid = pv::kernel::GridSpec::default_grid();
  } else if (grid_name == "fine") {
    grid = pv::kernel::GridSpec::fine_grid();
  } else {
    throw pv::ConfigError("grid must be 'default' or 'fine'");
  }
  const auto samples = pv::kernel::kernel_samples(grid);
  emit_table(out, [&](auto&& write) {
    write(pv::report::kernel_csv_header());
    for (const auto& s : samples) write(pv::report::kernel_csv_row(s));
  });
  const auto result = pv::kernel::lemma3_check(grid);
  (out.empty() ? std::cerr : std::cout) << pv::report::lemma3_summary_json(result, grid_name) << "\n";
  return result.passed() ? 0 : 1;
}

int cmd_lemmas(unsigned n_max, std::uint64_t seed, const std::string& out) {
  const auto cfg = pv::lemmas::LemmaSweepConfig::standard(n_max, seed);
  const auto l1 = pv::lemmas::lemma1_check(cfg);
  const auto l2 = pv::lemmas::lemma2_check(cfg);
  emit_table(out, [&](auto&& write) {
    write(pv::report::lemmas_csv_header());
    for (const auto& w : l1.per_n) write(pv::report::lemmas_csv_row(1, w));
    for (const auto& w : l2.per_n) write(pv::report::lemmas_csv_row(2, w));
  });
  (out.empty() ? std::cerr : std::cout) << pv::report::lemmas_summary_json(l1, l2, seed) << "\n";
  return l1.passed() && l2.passed() ? 0 : 1;
}

int cmd_char_info(unsigned q, const std::string& label) {
  const pv::UnitGroup group(q);
  const pv::DirichletCharacter chi(group, pv::parse_label(label));
  auto j = nlohmann::json::parse(pv::report::character_json(chi));
  j["primitive"] = chi.is_primitive();
  j["generators"] = group.structure().generators;
  j["orders"] = group.structure().orders;
  const auto sums = pv::char_sums(chi);
  j["s_chi"] = sums.s_chi;
  j["t_chi"] = sums.t_chi;
  j["M"] = sums.s_witness.first;
  j["N"] = sums.s_witness.last;
  j["t_N"] = sums.t_witness;
  j["gauss_abs"] = pv::gauss_sum(chi).modulus;
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_verify_all(unsigned q_max, unsigned workers, const std::optional<std::string>& suites,
                   double c0_offset, unsigned n_max, std::uint64_t seed) {
  pv::VerifyConfig cfg;
  cfg.sweep.q_max = q_max;
  cfg.sweep.workers = resolve_workers(workers);
  cfg.lemma_n_max = n_max;
  cfg.lemma_seed = seed;
  cfg.c0_value = pv::c0() + c0_offset;
  if (suites) cfg.suites = split_list(*suites);
  const auto outcome = pv::verify_all(cfg);
  for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& s : outcome.suites)
    std::cerr << fmt::format("[{}] {}: {}\n", s.passed ? "PASS" : "FAIL", s.name, s.detail);
  std::cout << pv::report::verify_json(outcome) << "\n";
  return outcome.status();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exhaustive Dirichlet character-sum sweeps and explicit Polya-Vinogradov bounds"};
  app.require_subcommand(1);

  unsigned q_min = 3, q_max = 100, workers = 1;
  std::string parity = "both", bounds = "all", format = "csv", out;
  auto* sweep = app.add_subcommand("sweep", "exact S/T for every primitive character, with bound margins");
  sweep->add_option("--q-min", q_min, "smallest modulus (>= 3)");
  sweep->add_option("--q-max", q_max, "largest modulus");
  sweep->add_option("--parity", parity, "even|odd|both");
  sweep->add_option("--bounds", bounds, "comma separated bound names, or 'all'");
  sweep->add_option("--workers", workers, "worker threads (PV_WORKERS overrides)");
  sweep->add_option("--format", format, "csv|json");
  sweep->add_option("--out", out, "output path (default: stdout)");

  std::uint64_t bq = 0;
  std::string bparity = "both", bformat = "csv";
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate every explicit bound at q");
  bounds_cmd->add_option("--q", bq, "modulus (>= 3)")->required();
  bounds_cmd->add_option("--parity", bparity, "even|odd|both");
  bounds_cmd->add_option("--format", bformat, "csv|json");

  std::string cparity = "both";
  std::uint64_t climit = pv::kCrossoverLimit;
  auto* cross = app.add_subcommand("crossover", "smallest q beyond which theorem1 beats pomerance");
  cross->add_option("--parity", cparity, "even|odd|both");
  cross->add_option("--limit", climit, "largest q examined");

  std::string grid = "default", kout;
  auto* kcheck = app.add_subcommand("kernel-check", "|S(u;P)| / G_P(u) against C0/(2 pi^2)");
  kcheck->add_option("--grid", grid, "default|fine");
  kcheck->add_option("--out", kout, "CSV output path (default: stdout)");

  unsigned n_max = 500;
  std::uint64_t seed = 20130101;
  std::string lout;
  auto* lem = app.add_subcommand("lemmas", "sine and cosine sum inequalities over dense grids");
  lem->add_option("--n-max", n_max, "largest n");
  lem->add_option("--seed", seed, "seed for random (alpha, beta) pairs");
  lem->add_option("--out", lout, "CSV output path (default: stdout)");

  unsigned iq = 0;
  std::string ilabel;
  auto* info = app.add_subcommand("char-info", "describe one character");
  info->add_option("--q", iq, "modulus")->required();
  info->add_option("--label", ilabel, "exponent vector, e.g. 1:0")->required();

  unsigned vq_max = 2000, vworkers = 1, vn_max = 500;
  std::uint64_t vseed = 20130101;
  std::optional<std::string> vsuites;
  double c0_offset = 0.0;
  auto* verify = app.add_subcommand("verify-all", "run every verification suite");
  verify->add_option("--q-max", vq_max, "largest modulus in the sweep");
  verify->add_option("--workers", vworkers, "worker threads (PV_WORKERS overrides)");
  verify->add_option("--suites", vsuites, "comma separated subset of suites");
  verify->add_option("--c0-offset", c0_offset, "perturb C0 (fault injection)");
  verify->add_option("--n-max", vn_max, "largest n for the lemma suites");
  verify->add_option("--seed", vseed, "seed for the lemma suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) return cmd_sweep(q_min, q_max, parity, bounds, workers, format, out);
    if (*bounds_cmd) return cmd_bounds(bq, bparity, bformat);
    if (*cross) return cmd_crossover(cparity, climit);
    if (*kcheck) return cmd_kernel_check(grid, kout);
    if (*lem) return cmd_lemmas(n_max, seed, lout);
    if (*info) return cmd_char_info(iq, ilabel);
    if (*verify) return cmd_verify_all(vq_max, vworkers, vsuites, c0_offset, vn_max, vseed);
  } catch (const pv::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
