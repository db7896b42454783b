#include "pv/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <exception>
#include <limits>
#include <fmt/format.h>
#include <mutex>
#include <thread>

#include "pv/kernel.hpp"
#include "pv/lemmas.hpp"
#include "pv/report.hpp"

namespace pv {

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigError("format must be 'csv' or 'json', got '" + std::string(text) + "'");
}

std::vector<BoundName> SweepConfig::all_bound_names() {
  std::vector<BoundName> names;
  for (const auto& b : bound_catalog()) names.push_back(b.name);
  return names;
}

void SweepConfig::validate() const {
  if (q_min < 3) throw ConfigError("q_min must be at least 3");
  if (q_min > q_max)
    throw ConfigError(fmt::format("q_min ({}) exceeds q_max ({})", q_min, q_max));
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (parities.empty()) throw ConfigError("no parity selected");
}

bool SweepConfig::wants(Parity parity) const {
  return std::find(parities.begin(), parities.end(), parity) != parities.end();
}

std::optional<unsigned> workers_from_env() {
  const char* env = std::getenv("PV_WORKERS");
  if (env == nullptr || *env == '\0') return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096) return std::nullopt;
  return static_cast<unsigned>(v);
}

std::vector<SweepRow> sweep_modulus(std::uint32_t q, const SweepConfig& cfg) {
  // Canonical column order regardless of how the bounds were requested.
  std::vector<BoundName> bounds;
  for (const auto& b : bound_catalog())
    if (std::find(cfg.bounds.begin(), cfg.bounds.end(), b.name) != cfg.bounds.end())
      bounds.push_back(b.name);

  const double scale = std::sqrt(static_cast<double>(q)) * std::log(static_cast<double>(q));
  std::vector<SweepRow> rows;
  const UnitGroup group(q);
  const auto roots = roots_of_unity(group.exponent());
  for (auto& chi : enumerate_characters(group)) {
    if (!chi.is_primitive() || !cfg.wants(chi.parity())) continue;
    SweepRow row;
    row.q = q;
    row.label = chi.label();
    row.parity = chi.parity();
    row.conductor = chi.conductor();
    row.sums = char_sums(chi, chi.values(roots));
    row.ratio = row.sums.s_chi / scale;
    for (const BoundName name : bounds) {
      const auto bv = evaluate_bound(name, q, row.parity, cfg.c0_value);
      const double exact = bv.quantity == BoundedQuantity::S ? row.sums.s_chi : row.sums.t_chi;
      const double margin = bv.value - exact;
      row.bounds.push_back({name, bv.value, margin});
      if (bound_info(name).gating && !(margin > 0.0)) row.violation = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

class SummaryBuilder {
 public:
  explicit SummaryBuilder(const SweepConfig& cfg) {
    for (const auto& b : bound_catalog())
      if (std::find(cfg.bounds.begin(), cfg.bounds.end(), b.name) != cfg.bounds.end())
        summary_.per_bound.push_back({b.name, std::numeric_limits<double>::infinity(), 0, {}, 0});
  }

  void add(const SweepRow& row) {
    ++summary_.characters_checked;
    if (row.violation) ++summary_.violations;
    if (row.sums.parity_consistent.has_value() && !*row.sums.parity_consistent)
      ++summary_.parity_failures;
    if (row.ratio > summary_.max_ratio) {
      summary_.max_ratio = row.ratio;
      summary_.max_ratio_q = row.q;
      summary_.max_ratio_label = row.label;
    }
    for (const auto& bm : row.bounds) {
      for (auto& bs : summary_.per_bound) {
        if (bs.name != bm.name) continue;
        if (bm.margin < bs.worst_margin) {
          bs.worst_margin = bm.margin;
          bs.worst_q = row.q;
          bs.worst_label = row.label;
        }
        if (!(bm.margin > 0.0)) ++bs.negative;
      }
    }
  }

  SweepSummary finish(std::size_t moduli, unsigned workers, double seconds) {
    summary_.moduli = moduli;
    summary_.workers = workers;
    summary_.wall_seconds = seconds;
    for (auto& bs : summary_.per_bound)
      if (std::isinf(bs.worst_margin)) bs.worst_margin = 0.0;
    return summary_;
  }

 private:
  SweepSummary summary_;
};

class ReportSink {
 public:
  explicit ReportSink(const SweepConfig& cfg) : format_(cfg.format) {
    if (cfg.output_path.empty()) return;
    writer_.emplace(cfg.output_path);
    if (format_ == OutputFormat::csv) {
      std::vector<BoundName> bounds;
      for (const auto& b : bound_catalog())
        if (std::find(cfg.bounds.begin(), cfg.bounds.end(), b.name) != cfg.bounds.end())
          bounds.push_back(b.name);
      writer_->write(report::sweep_csv_header(bounds));
    } else {
      writer_->write(fmt::format("{{\"schema\":{},\"kind\":\"sweep\",\"config\":{},\"rows\":[",
                                 report::kSchemaVersion, report::sweep_config_json(cfg)));
    }
  }

  void add(const SweepRow& row) {
    if (!writer_) return;
    if (format_ == OutputFormat::csv) {
      writer_->write(report::sweep_csv_row(row));
    } else {
      writer_->write(first_ ? "\n" : ",\n");
      writer_->write(report::sweep_row_json(row));
      first_ = false;
    }
  }

  void finish(const SweepSummary& summary) {
    if (!writer_) return;
    if (format_ == OutputFormat::json)
      writer_->write(fmt::format("\n],\"summary\":{}}}\n", report::sweep_summary_json(summary)));
    writer_->commit();
  }

 private:
  OutputFormat format_;
  std::optional<report::AtomicFileWriter> writer_;
  bool first_ = true;
};

}  // namespace

SweepReport run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t units = cfg.q_max - cfg.q_min + 1;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(cfg.workers, units));

  std::mutex mutex;
  std::condition_variable ready;
  std::vector<std::optional<std::vector<SweepRow>>> slots(units);
  std::exception_ptr failure;
  bool stop = false;

  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t unit = w; unit < units; unit += workers) {
        {
          std::lock_guard lock(mutex);
          if (stop) return;
        }
        std::vector<SweepRow> rows;
        try {
          rows = sweep_modulus(cfg.q_min + static_cast<std::uint32_t>(unit), cfg);
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!failure) failure = std::current_exception();
          stop = true;
          ready.notify_all();
          return;
        }
        std::lock_guard lock(mutex);
        slots[unit] = std::move(rows);
        ready.notify_all();
      }
    });
  }

  SweepReport report;
  SummaryBuilder summary(cfg);
  ReportSink sink(cfg);
  for (std::size_t next = 0; next < units; ++next) {
    std::vector<SweepRow> batch;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return slots[next].has_value() || failure; });
      if (failure) {
        stop = true;
        lock.unlock();
        pool.clear();
        std::rethrow_exception(failure);
      }
      batch = std::move(*slots[next]);
      slots[next].reset();
    }
    for (auto& row : batch) {
      summary.add(row);
      sink.add(row);
      if (cfg.retain_rows) report.rows.push_back(std::move(row));
    }
  }
  pool.clear();

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.summary = summary.finish(units, workers, seconds);
  sink.finish(report.summary);
  return report;
}

const std::vector<std::string>& VerifyConfig::suite_names() {
  static const std::vector<std::string> names{"sweep",  "lemma1",    "lemma2",   "lemma3",
                                              "lemma4", "constants", "crossover"};
  return names;
}

int VerifyOutcome::status() const {
  for (const auto& s : suites)
    if (!s.passed) return 1;
  return 0;
}

namespace {

SuiteOutcome run_suite(const std::string& name, const VerifyConfig& cfg) {
  using report::format_double;
  SuiteOutcome out{name, false, {}};
  if (name == "sweep") {
    SweepConfig sweep = cfg.sweep;
    sweep.c0_value = cfg.c0_value;
    sweep.retain_rows = false;
    const auto rep = run_sweep(sweep);
    out.passed = rep.ok();
    out.detail = fmt::format("q in [{}, {}]: {} characters, {} violations, {} S!=2T",
                             sweep.q_min, sweep.q_max, rep.summary.characters_checked,
                             rep.summary.violations, rep.summary.parity_failures);
  } else if (name == "lemma1" || name == "lemma2") {
    const auto lcfg = lemmas::LemmaSweepConfig::standard(cfg.lemma_n_max, cfg.lemma_seed);
    const auto res = name == "lemma1" ? lemmas::lemma1_check(lcfg) : lemmas::lemma2_check(lcfg);
    out.passed = res.passed();
    out.detail = fmt::format("worst slack {} at n={} (seed {})", format_double(res.worst_slack),
                             res.worst.n, cfg.lemma_seed);
  } else if (name == "lemma3") {
    const auto res = kernel::lemma3_check(kernel::GridSpec::default_grid(), cfg.c0_value);
    out.passed = res.passed();
    out.detail = fmt::format("worst ratio {} (u={}, P={}) vs bound {}",
                             format_double(res.worst_ratio), format_double(res.worst_u),
                             format_double(res.worst_P), format_double(res.bound));
  } else if (name == "lemma4") {
    double worst = 0.0;
    for (std::uint64_t q = 1; q <= 100; ++q)
      for (const double P : {1.5, 2.0, 7.3, 50.0}) worst = std::max(worst, kernel::lemma4_check(q, P));
    out.passed = worst < 1e-9;
    out.detail = fmt::format("max discrepancy {}", format_double(worst));
  } else if (name == "constants") {
    const auto d = kernel::constant_derivation(cfg.c0_value);
    out.passed = d.passed();
    out.detail = fmt::format("A={} |A-closed|={} |f1(A)-C0/(2pi^2)|={} residual={}",
                             format_double(d.A), format_double(d.a_error),
                             format_double(d.f1_error), format_double(d.residual));
  } else if (name == "crossover") {
    const auto even = crossover(Parity::even);
    const auto odd = crossover(Parity::odd);
    out.passed = even.q_star <= 18000 && odd.q_star <= 28000;
    out.detail = fmt::format("even q*={} odd q*={}", even.q_star, odd.q_star);
  } else {
    throw ConfigError("unknown suite '" + name + "'");
  }
  return out;
}

}  // namespace

VerifyOutcome verify_all(const VerifyConfig& cfg) {
  VerifyOutcome outcome;
  const auto& selected = cfg.suites ? *cfg.suites : VerifyConfig::suite_names();
  if (selected.empty()) outcome.warnings.push_back("no suites selected; nothing verified");
  for (const auto& name : selected) {
    const auto& known = VerifyConfig::suite_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      outcome.suites.push_back({name, false, "unknown suite"});
      continue;
    }
    try {
      outcome.suites.push_back(run_suite(name, cfg));
    } catch (const std::exception& e) {
      outcome.suites.push_back({name, false, std::string("error: ") + e.what()});
    }
  }
  return outcome;
}

}  // namespace pv
