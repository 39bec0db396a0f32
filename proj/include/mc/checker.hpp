#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mc/ctl.hpp"
#include "mc/kripke.hpp"

namespace mc {

/// Per-subformula satisfying-state sets, in bottom-up (children first)
/// order over the distinct subformulas of the checked formula.
class LabelMap {
 public:
  struct Entry {
    FormulaRef formula;
    std::vector<bool> sat;  // indexed by state
  };

  void add(FormulaRef formula, std::vector<bool> sat);
  const std::vector<bool>* find(const FormulaRef& formula) const;
  const std::vector<Entry>& entries() const { return entries_; }

  /// Satisfying state names for one subformula, sorted.
  std::vector<std::string> sat_states(const KripkeStructure& ks,
                                      const FormulaRef& formula) const;

 private:
  std::vector<Entry> entries_;
  std::vector<std::string> keys_;
};

struct Verdict {
  bool holds = false;
  std::string queried_state;
  std::size_t sat_count = 0;     // states satisfying the top formula
  std::uint64_t elapsed_ticks = 0;  // 1 tick = 100 ns; normalization + labeling only
  std::optional<LabelMap> labels;
};

/// Backward-propagation labeling over the normalized base. Requires a
/// total transition relation and a formula restricted to
/// {true, atom, !, &, EX, EU, EG}; throws std::invalid_argument otherwise.
/// Work is proportional to |f| * (|s| + |r|).
LabelMap label(const KripkeStructure& ks, const FormulaRef& normalized);

/// Normalizes f, labels, and reports whether the queried state satisfies
/// it. elapsed_ticks covers normalization and labeling only. With
/// keep_labels the full LabelMap is attached to the verdict.
Verdict check(const KripkeStructure& ks, const FormulaRef& f,
              const std::string& at, bool keep_labels = false);

/// Naive CTL evaluation by repeated full-relation fixpoint sweeps over the
/// un-normalized operators; shares no traversal code with label(). Guarded
/// to small structures, it exists for differential testing.
bool check_oracle(const KripkeStructure& ks, const FormulaRef& f,
                  const std::string& at, std::size_t max_states = 12);

}  // namespace mc
