#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "pv/bounds.hpp"
#include "pv/characters.hpp"
#include "pv/harness.hpp"
#include "pv/kernel.hpp"
#include "pv/lemmas.hpp"

namespace pv::report {

inline constexpr int kSchemaVersion = 1;

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Writes to "<path>.partial" and renames onto `path` in commit(). The partial file
/// is removed if the writer is destroyed without committing.
class AtomicFileWriter {
 public:
  explicit AtomicFileWriter(std::filesystem::path path);
  AtomicFileWriter(const AtomicFileWriter&) = delete;
  AtomicFileWriter& operator=(const AtomicFileWriter&) = delete;
  ~AtomicFileWriter();

  std::ostream& stream() { return out_; }
  void write(std::string_view text);
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path partial_;
  std::ofstream out_;
  bool committed_ = false;
};

// Sweep: q,char_label,parity,conductor,s_chi,t_chi,M,N,t_N,ratio, then
// <bound>,<bound>_margin per requested bound in catalog order, then violation.
std::string sweep_csv_header(std::span<const BoundName> bounds);
std::string sweep_csv_row(const SweepRow& row);
std::string sweep_row_json(const SweepRow& row);
std::string sweep_config_json(const SweepConfig& cfg);
std::string sweep_summary_json(const SweepSummary& summary);

// Character sums: q,char_label,parity,conductor,s_chi,t_chi,M,N
std::string charsum_csv_header();
std::string charsum_csv_row(const CharacterRecord& record);

/// {schema, q, label, conductor, parity, order}; value tables are never written.
std::string character_json(const DirichletCharacter& chi);

// Bounds: q,parity,bound_name,quantity,value,main_term,second_term,psi_term,as_printed
std::string bounds_csv_header();
std::string bounds_csv_row(const BoundValue& bound);
std::string bounds_json(std::span<const BoundValue> bounds);

std::string crossover_json(const CrossoverResult& result);

// Kernel: u,P,s_u_p,g_p,ratio
std::string kernel_csv_header();
std::string kernel_csv_row(const kernel::KernelSample& sample);
std::string lemma3_summary_json(const kernel::Lemma3Result& result, std::string_view grid_name);

// Lemmas: lemma,n,param1,param2,sum,bound,slack (worst parameter at each n)
std::string lemmas_csv_header();
std::string lemmas_csv_row(int lemma, const lemmas::WorstAtN& worst);
std::string lemmas_summary_json(const lemmas::LemmaSweepResult& lemma1,
                                const lemmas::LemmaSweepResult& lemma2, std::uint64_t seed);

std::string verify_json(const VerifyOutcome& outcome);

}  // namespace pv::report
