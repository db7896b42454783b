#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pv/bounds.hpp"
#include "pv/characters.hpp"
#include "pv/charsums.hpp"

namespace pv {

enum class OutputFormat : std::uint8_t { csv, json };

std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view text);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SweepConfig {
  std::uint32_t q_min = 3;
  std::uint32_t q_max = 2000;
  std::vector<Parity> parities{Parity::even, Parity::odd};
  std::vector<BoundName> bounds = all_bound_names();
  unsigned workers = 1;
  OutputFormat format = OutputFormat::csv;
  /// Written through a temporary file and renamed on completion. Empty: no file.
  std::string output_path;
  /// Keep every row in the returned report (otherwise only the summary).
  bool retain_rows = true;
  /// Constant used for the theorem1 bound; only changed by fault injection.
  double c0_value = c0();

  static std::vector<BoundName> all_bound_names();
  /// Throws ConfigError.
  void validate() const;
  bool wants(Parity parity) const;
};

/// Worker count from the PV_WORKERS environment variable, if set and valid.
std::optional<unsigned> workers_from_env();

struct BoundMargin {
  BoundName name = BoundName::theorem1;
  double value = 0.0;
  double margin = 0.0;
};

struct SweepRow {
  std::uint32_t q = 0;
  CharacterLabel label;
  Parity parity = Parity::even;
  std::uint32_t conductor = 0;
  CharSumResult sums;
  double ratio = 0.0;  // S / (sqrt(q) log q)
  std::vector<BoundMargin> bounds;
  /// A theorem1 or pomerance margin is not strictly positive.
  bool violation = false;
};

struct BoundSummary {
  BoundName name = BoundName::theorem1;
  double worst_margin = 0.0;
  std::uint32_t worst_q = 0;
  CharacterLabel worst_label;
  std::size_t negative = 0;
};

struct SweepSummary {
  std::size_t moduli = 0;
  std::size_t characters_checked = 0;
  std::size_t violations = 0;
  /// Even characters with |S - 2T| >= 1e-9.
  std::size_t parity_failures = 0;
  double max_ratio = 0.0;
  std::uint32_t max_ratio_q = 0;
  CharacterLabel max_ratio_label;
  std::vector<BoundSummary> per_bound;
  double wall_seconds = 0.0;
  unsigned workers = 1;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  SweepSummary summary;

  bool ok() const { return summary.violations == 0 && summary.parity_failures == 0; }
};

/// One work unit: every requested primitive character mod q, sorted by label.
std::vector<SweepRow> sweep_modulus(std::uint32_t q, const SweepConfig& cfg);

/// Fans moduli out to cfg.workers threads (q_min + k, q_min + k + workers, ...) and
/// merges the batches in q order; the output does not depend on the worker count.
SweepReport run_sweep(const SweepConfig& cfg);

struct VerifyConfig {
  SweepConfig sweep;
  std::uint32_t lemma_n_max = 500;
  std::uint64_t lemma_seed = 20130101;
  /// Subset of suite_names(); nullopt runs everything.
  std::optional<std::vector<std::string>> suites;
  double c0_value = c0();

  static const std::vector<std::string>& suite_names();
};

struct SuiteOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOutcome {
  std::vector<SuiteOutcome> suites;
  std::vector<std::string> warnings;

  int status() const;
};

/// Sweep, the four lemma suites, the constant derivation and both crossovers.
/// A failing suite is recorded and the rest still run.
VerifyOutcome verify_all(const VerifyConfig& cfg);

}  // namespace pv
