#include "pv/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace pv::report {

using nlohmann::json;

namespace {

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

json label_json(const CharacterLabel& label) { return json(label); }

std::string bool01(bool v) { return v ? "1" : "0"; }

}  // namespace

std::string format_double(double v) { return fmt::format("{}", v); }

AtomicFileWriter::AtomicFileWriter(std::filesystem::path path)
    : path_(std::move(path)), partial_(path_.string() + ".partial") {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  out_.open(partial_, std::ios::binary | std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot open " + partial_.string() + " for writing");
}

AtomicFileWriter::~AtomicFileWriter() {
  if (committed_) return;
  out_.close();
  std::error_code ec;
  std::filesystem::remove(partial_, ec);
}

void AtomicFileWriter::write(std::string_view text) {
  out_.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out_) throw std::runtime_error("write failed on " + partial_.string());
}

void AtomicFileWriter::commit() {
  out_.flush();
  out_.close();
  if (!out_) throw std::runtime_error("close failed on " + partial_.string());
  std::filesystem::rename(partial_, path_);
  committed_ = true;
}

std::string sweep_csv_header(std::span<const BoundName> bounds) {
  std::string h = "q,char_label,parity,conductor,s_chi,t_chi,M,N,t_N,ratio";
  for (const BoundName b : bounds) h += fmt::format(",{0},{0}_margin", to_string(b));
  return h + ",violation\n";
}

std::string sweep_csv_row(const SweepRow& row) {
  std::string line = fmt::format("{},{},{},{},{},{},{},{},{},{}", row.q, format_label(row.label),
                                 to_string(row.parity), row.conductor,
                                 format_double(row.sums.s_chi), format_double(row.sums.t_chi),
                                 row.sums.s_witness.first, row.sums.s_witness.last,
                                 row.sums.t_witness, format_double(row.ratio));
  for (const auto& b : row.bounds)
    line += fmt::format(",{},{}", format_double(b.value), format_double(b.margin));
  return line + "," + bool01(row.violation) + "\n";
}

std::string sweep_row_json(const SweepRow& row) {
  json j;
  j["q"] = row.q;
  j["label"] = label_json(row.label);
  j["parity"] = to_string(row.parity);
  j["conductor"] = row.conductor;
  j["s_chi"] = number(row.sums.s_chi);
  j["t_chi"] = number(row.sums.t_chi);
  j["M"] = row.sums.s_witness.first;
  j["N"] = row.sums.s_witness.last;
  j["t_N"] = row.sums.t_witness;
  j["ratio"] = number(row.ratio);
  if (row.sums.parity_consistent) j["s_equals_2t"] = *row.sums.parity_consistent;
  json bounds = json::object();
  for (const auto& b : row.bounds)
    bounds[std::string(to_string(b.name))] = {{"value", number(b.value)}, {"margin", number(b.margin)}};
  j["bounds"] = bounds;
  j["violation"] = row.violation;
  return j.dump();
}

std::string sweep_config_json(const SweepConfig& cfg) {
  json j;
  j["q_min"] = cfg.q_min;
  j["q_max"] = cfg.q_max;
  json parities = json::array();
  for (const auto p : cfg.parities) parities.push_back(to_string(p));
  j["parities"] = parities;
  json bounds = json::array();
  for (const auto b : cfg.bounds) bounds.push_back(to_string(b));
  j["bounds"] = bounds;
  j["workers"] = cfg.workers;
  j["c0"] = number(cfg.c0_value);
  return j.dump();
}

std::string sweep_summary_json(const SweepSummary& s) {
  json j;
  j["moduli"] = s.moduli;
  j["characters_checked"] = s.characters_checked;
  j["violations"] = s.violations;
  j["parity_failures"] = s.parity_failures;
  j["max_ratio"] = {{"value", number(s.max_ratio)},
                    {"q", s.max_ratio_q},
                    {"label", label_json(s.max_ratio_label)}};
  json per_bound = json::object();
  for (const auto& b : s.per_bound) {
    per_bound[std::string(to_string(b.name))] = {{"worst_margin", number(b.worst_margin)},
                                                 {"q", b.worst_q},
                                                 {"label", label_json(b.worst_label)},
                                                 {"nonpositive", b.negative},
                                                 {"gating", bound_info(b.name).gating}};
  }
  j["per_bound"] = per_bound;
  j["wall_seconds"] = number(s.wall_seconds);
  j["workers"] = s.workers;
  return j.dump();
}

std::string charsum_csv_header() { return "q,char_label,parity,conductor,s_chi,t_chi,M,N\n"; }

std::string charsum_csv_row(const CharacterRecord& r) {
  return fmt::format("{},{},{},{},{},{},{},{}\n", r.q, format_label(r.label), to_string(r.parity),
                     r.conductor, format_double(r.sums.s_chi), format_double(r.sums.t_chi),
                     r.sums.s_witness.first, r.sums.s_witness.last);
}

std::string character_json(const DirichletCharacter& chi) {
  json j;
  j["schema"] = kSchemaVersion;
  j["q"] = chi.modulus();
  j["label"] = label_json(chi.label());
  j["conductor"] = chi.conductor();
  j["parity"] = to_string(chi.parity());
  j["order"] = chi.order();
  return j.dump();
}

std::string bounds_csv_header() {
  return "q,parity,bound_name,quantity,value,main_term,second_term,psi_term,as_printed\n";
}

std::string bounds_csv_row(const BoundValue& b) {
  return fmt::format("{},{},{},{},{},{},{},{},{}\n", b.q, to_string(b.parity), to_string(b.name),
                     to_string(b.quantity), format_double(b.value), format_double(b.main_term),
                     format_double(b.second_term), format_double(b.psi_term), bool01(b.as_printed));
}

std::string bounds_json(std::span<const BoundValue> bounds) {
  json rows = json::array();
  for (const auto& b : bounds) {
    rows.push_back({{"q", b.q},
                    {"parity", to_string(b.parity)},
                    {"bound_name", to_string(b.name)},
                    {"quantity", to_string(b.quantity)},
                    {"value", number(b.value)},
                    {"main_term", number(b.main_term)},
                    {"second_term", number(b.second_term)},
                    {"psi_term", number(b.psi_term)},
                    {"as_printed", b.as_printed}});
  }
  return json{{"schema", kSchemaVersion}, {"kind", "bounds"}, {"rows", rows}}.dump();
}

std::string crossover_json(const CrossoverResult& r) {
  return json{{"schema", kSchemaVersion},
              {"kind", "crossover"},
              {"parity", to_string(r.parity)},
              {"q_star", r.q_star},
              {"scan_limit", r.scan_limit},
              {"confirmed_through", r.confirmed_through},
              {"log_grid_points", r.log_grid_points}}
      .dump();
}

std::string kernel_csv_header() { return "u,P,s_u_p,g_p,ratio\n"; }

std::string kernel_csv_row(const kernel::KernelSample& s) {
  return fmt::format("{},{},{},{},{}\n", format_double(s.u), format_double(s.P),
                     format_double(s.s_u_p), format_double(s.g_p), format_double(s.ratio));
}

std::string lemma3_summary_json(const kernel::Lemma3Result& r, std::string_view grid_name) {
  return json{{"schema", kSchemaVersion},
              {"kind", "kernel-check"},
              {"grid", grid_name},
              {"samples", r.evaluated},
              {"worst_ratio", number(r.worst_ratio)},
              {"worst_u", number(r.worst_u)},
              {"worst_P", number(r.worst_P)},
              {"bound", number(r.bound)},
              {"margin", number(r.margin())},
              {"violations", r.violations.size()}}
      .dump();
}

std::string lemmas_csv_header() { return "lemma,n,param1,param2,sum,bound,slack\n"; }

std::string lemmas_csv_row(int lemma, const lemmas::WorstAtN& w) {
  return fmt::format("{},{},{},{},{},{},{}\n", lemma, w.n, format_double(w.param1),
                     lemma == 1 ? std::string() : format_double(w.param2), format_double(w.sum),
                     format_double(w.bound), format_double(w.slack));
}

std::string lemmas_summary_json(const lemmas::LemmaSweepResult& l1,
                                const lemmas::LemmaSweepResult& l2, std::uint64_t seed) {
  auto one = [](const lemmas::LemmaSweepResult& r) {
    return json{{"worst_slack", number(r.worst_slack)},
                {"n", r.worst.n},
                {"param1", number(r.worst.param1)},
                {"param2", number(r.worst.param2)},
                {"evaluated", r.evaluated},
                {"violations", r.violations.size()}};
  };
  return json{{"schema", kSchemaVersion},
              {"kind", "lemmas"},
              {"seed", seed},
              {"lemma1", one(l1)},
              {"lemma2", one(l2)}}
      .dump();
}

std::string verify_json(const VerifyOutcome& outcome) {
  json suites = json::array();
  for (const auto& s : outcome.suites)
    suites.push_back({{"name", s.name}, {"passed", s.passed}, {"detail", s.detail}});
  return json{{"schema", kSchemaVersion},
              {"kind", "verify-all"},
              {"status", outcome.status()},
              {"suites", suites},
              {"warnings", outcome.warnings}}
      .dump();
}

}  // namespace pv::report
