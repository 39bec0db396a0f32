#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mc/checker.hpp"
#include "mc/ctl.hpp"
#include "mc/kripke.hpp"

namespace mc {

struct BenchConfig {
  std::size_t trials = 3;       // per-row repetitions, averaged
  std::size_t warmup_runs = 1;  // discarded runs before timing
  std::size_t repeats = 1;      // labelings per trial; a trial records the fastest
  std::vector<std::size_t> formula_sizes;
  unsigned seed = 0;

  void validate_config() const;  // throws std::invalid_argument
};

struct BenchRow {
  std::string label;
  std::size_t size_metric = 0;  // subformula count or states+transitions
  std::vector<std::uint64_t> trial_ticks;
  std::uint64_t avg_ticks = 0;  // mean of trials, rounded to nearest
  bool verdict = false;
  std::string error;  // non-empty when the entry failed; other fields unset
};

struct BenchReport {
  static constexpr const char* kTickUnit = "1 tick = 100 ns";
  std::size_t trials = 0;
  std::vector<BenchRow> rows;
};

/// Deterministic formula generator for the formula-scaling experiment.
/// Builds growing disjunction chains under AF (AG-wrapped for odd sizes)
/// and guarantees count_subformulas(result) == k; atom choice is driven by
/// the seed, drawing fresh atoms once the supplied ones run out.
FormulaRef gen_formula_of_size(std::size_t k, const std::vector<std::string>& atoms,
                               unsigned seed);

/// Verification time vs. subformula count on a fixed structure. Ticks
/// cover normalization + labeling only; the structure must be total.
BenchReport bench_formula_scaling(const KripkeStructure& ks, const BenchConfig& cfg);

struct CorpusEntry {
  std::string label;
  std::string kripke_path;
  std::string ctl_path;
};

/// Verification time vs. structure size across a corpus of model/property
/// pairs. The size metric is states+transitions of the document as
/// written; checking runs on the sink-completed structure. Per-entry
/// failures are recorded in the row and the run continues.
BenchReport bench_structure_scaling(const std::vector<CorpusEntry>& corpus,
                                    const BenchConfig& cfg);

/// CSV with header label,size,trial1,...,avg,verdict (RFC 4180 quoting).
std::string emit_csv(const BenchReport& report);

/// Scatter-plus-line SVG of average ticks against the size metric.
std::string emit_svg(const BenchReport& report, const std::string& title);

}  // namespace mc
