#include "mc/checker.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <stdexcept>

namespace mc {

void LabelMap::add(FormulaRef formula, std::vector<bool> sat) {
  keys_.push_back(structural_key(formula));
  entries_.push_back({std::move(formula), std::move(sat)});
}

const std::vector<bool>* LabelMap::find(const FormulaRef& formula) const {
  std::string key = structural_key(formula);
  for (std::size_t i = 0; i < keys_.size(); ++i)
    if (keys_[i] == key) return &entries_[i].sat;
  return nullptr;
}

std::vector<std::string> LabelMap::sat_states(const KripkeStructure& ks,
                                              const FormulaRef& formula) const {
  const std::vector<bool>* sat = find(formula);
  if (!sat) throw std::invalid_argument("formula not in label map");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < sat->size(); ++i)
    if ((*sat)[i]) names.push_back(ks.name_of(i));
  std::sort(names.begin(), names.end());
  return names;
}

namespace {

// Backward image: states with at least one successor inside `target`.
std::vector<bool> preimage(const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                           std::size_t n, const std::vector<bool>& target) {
  std::vector<bool> out(n, false);
  for (const auto& [from, to] : edges)
    if (target[to]) out[from] = true;
  return out;
}

// Least fixpoint for E[f U g]: breadth-first backward propagation from the
// g-states through f-states.
std::vector<bool> eval_eu(const KripkeStructure& ks,
                          const std::vector<std::vector<std::size_t>>& pred,
                          const std::vector<bool>& f_sat,
                          const std::vector<bool>& g_sat) {
  std::size_t n = ks.state_count();
  std::vector<bool> sat(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s)
    if (g_sat[s]) {
      sat[s] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t p : pred[s])
      if (!sat[p] && f_sat[p]) {
        sat[p] = true;
        queue.push_back(p);
      }
  }
  return sat;
}

// EG f: restrict the graph to f-states, seed with states of nontrivial
// strongly connected components (size >= 2, or a self-loop) of the
// restriction, then propagate backwards within the restriction. Tarjan's
// algorithm, iterative to survive deep chains.
std::vector<bool> eval_eg(const KripkeStructure& ks,
                          const std::vector<std::vector<std::size_t>>& succ,
                          const std::vector<std::vector<std::size_t>>& pred,
                          const std::vector<bool>& f_sat) {
  std::size_t n = ks.state_count();
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, none), lowlink(n, 0);
  std::vector<bool> on_stack(n, false), seed(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;

  struct Frame {
    std::size_t state;
    std::size_t child;  // position in succ[state]
  };

  for (std::size_t root = 0; root < n; ++root) {
    if (!f_sat[root] || index[root] != none) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& top = frames.back();
      std::size_t s = top.state;
      if (top.child < succ[s].size()) {
        std::size_t t = succ[s][top.child++];
        if (!f_sat[t]) continue;
        if (index[t] == none) {
          index[t] = lowlink[t] = next_index++;
          stack.push_back(t);
          on_stack[t] = true;
          frames.push_back({t, 0});
        } else if (on_stack[t]) {
          lowlink[s] = std::min(lowlink[s], index[t]);
        }
      } else {
        if (lowlink[s] == index[s]) {
          std::vector<std::size_t> component;
          for (;;) {
            std::size_t t = stack.back();
            stack.pop_back();
            on_stack[t] = false;
            component.push_back(t);
            if (t == s) break;
          }
          bool nontrivial = component.size() > 1;
          if (!nontrivial)
            for (std::size_t t : succ[s])
              if (t == s) nontrivial = true;
          if (nontrivial)
            for (std::size_t t : component) seed[t] = true;
        }
        frames.pop_back();
        if (!frames.empty()) {
          std::size_t parent = frames.back().state;
          lowlink[parent] = std::min(lowlink[parent], lowlink[s]);
        }
      }
    }
  }

  // Backward reachability to the seeds, staying inside f-states.
  std::vector<bool> sat = seed;
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s)
    if (sat[s]) queue.push_back(s);
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t p : pred[s])
      if (!sat[p] && f_sat[p]) {
        sat[p] = true;
        queue.push_back(p);
      }
  }
  return sat;
}

}  // namespace

LabelMap label(const KripkeStructure& ks, const FormulaRef& normalized) {
  if (!is_normalized(normalized))
    throw std::invalid_argument("formula is not in the normalized operator base");
  ValidationReport report = validate(ks);
  if (!report.total())
    throw std::invalid_argument(
        "structure is not total (state '" + report.totality_violations.front() +
        "' has no successor); CTL semantics undefined");

  std::size_t n = ks.state_count();
  auto succ = ks.successor_lists();
  auto pred = ks.predecessor_lists();

  LabelMap labels;
  std::map<std::string, std::size_t> by_key;  // key -> entry index
  auto sat_of = [&](const FormulaRef& g) -> const std::vector<bool>& {
    return labels.entries()[by_key.at(structural_key(g))].sat;
  };

  for (const FormulaRef& g : subformulas(normalized)) {
    std::vector<bool> sat(n, false);
    switch (g->kind()) {
      case FormulaKind::True:
        sat.assign(n, true);
        break;
      case FormulaKind::Atom:
        for (std::size_t s = 0; s < n; ++s) sat[s] = ks.has_prop(s, g->atom_name());
        break;
      case FormulaKind::Not: {
        const auto& child = sat_of(g->left());
        for (std::size_t s = 0; s < n; ++s) sat[s] = !child[s];
        break;
      }
      case FormulaKind::And: {
        const auto& lhs = sat_of(g->left());
        const auto& rhs = sat_of(g->right());
        for (std::size_t s = 0; s < n; ++s) sat[s] = lhs[s] && rhs[s];
        break;
      }
      case FormulaKind::EX:
        sat = preimage(ks.transitions(), n, sat_of(g->left()));
        break;
      case FormulaKind::EU:
        sat = eval_eu(ks, pred, sat_of(g->left()), sat_of(g->right()));
        break;
      case FormulaKind::EG:
        sat = eval_eg(ks, succ, pred, sat_of(g->left()));
        break;
      default:
        throw std::invalid_argument("formula is not in the normalized operator base");
    }
    labels.add(g, std::move(sat));
    by_key[structural_key(g)] = labels.entries().size() - 1;
  }
  return labels;
}

Verdict check(const KripkeStructure& ks, const FormulaRef& f,
              const std::string& at, bool keep_labels) {
  auto state = ks.index_of(at);
  if (!state) throw std::invalid_argument("unknown state name: " + at);

  auto begin = std::chrono::steady_clock::now();
  FormulaRef norm = normalize(f);
  LabelMap labels = label(ks, norm);
  auto end = std::chrono::steady_clock::now();

  const std::vector<bool>& top = labels.entries().back().sat;
  Verdict verdict;
  verdict.holds = top[*state];
  verdict.queried_state = at;
  verdict.sat_count = static_cast<std::size_t>(
      std::count(top.begin(), top.end(), true));
  verdict.elapsed_ticks = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(end - begin).count() / 100);
  if (keep_labels) verdict.labels = std::move(labels);
  return verdict;
}

// ---------------------------------------------------------------------------
// Naive oracle. Evaluates the un-normalized operators directly; every
// fixpoint is computed by full passes over all states until stable.

namespace {

using StateSet = std::vector<bool>;

bool some_successor_in(const KripkeStructure& ks, std::size_t s, const StateSet& set) {
  for (const auto& [from, to] : ks.transitions())
    if (from == s && set[to]) return true;
  return false;
}

bool all_successors_in(const KripkeStructure& ks, std::size_t s, const StateSet& set) {
  for (const auto& [from, to] : ks.transitions())
    if (from == s && !set[to]) return false;
  return true;
}

StateSet oracle_eval(const KripkeStructure& ks, const FormulaRef& f) {
  std::size_t n = ks.state_count();
  StateSet sat(n, false);
  using K = FormulaKind;
  switch (f->kind()) {
    case K::True:
      sat.assign(n, true);
      break;
    case K::False:
      break;
    case K::Atom:
      for (std::size_t s = 0; s < n; ++s) sat[s] = ks.has_prop(s, f->atom_name());
      break;
    case K::Not: {
      StateSet child = oracle_eval(ks, f->left());
      for (std::size_t s = 0; s < n; ++s) sat[s] = !child[s];
      break;
    }
    case K::And: {
      StateSet a = oracle_eval(ks, f->left());
      StateSet b = oracle_eval(ks, f->right());
      for (std::size_t s = 0; s < n; ++s) sat[s] = a[s] && b[s];
      break;
    }
    case K::Or: {
      StateSet a = oracle_eval(ks, f->left());
      StateSet b = oracle_eval(ks, f->right());
      for (std::size_t s = 0; s < n; ++s) sat[s] = a[s] || b[s];
      break;
    }
    case K::Implies: {
      StateSet a = oracle_eval(ks, f->left());
      StateSet b = oracle_eval(ks, f->right());
      for (std::size_t s = 0; s < n; ++s) sat[s] = !a[s] || b[s];
      break;
    }
    case K::EX: {
      StateSet child = oracle_eval(ks, f->left());
      for (std::size_t s = 0; s < n; ++s) sat[s] = some_successor_in(ks, s, child);
      break;
    }
    case K::AX: {
      StateSet child = oracle_eval(ks, f->left());
      for (std::size_t s = 0; s < n; ++s) sat[s] = all_successors_in(ks, s, child);
      break;
    }
    case K::EF: {
      // Least fixpoint of Z = f OR EX Z.
      sat = oracle_eval(ks, f->left());
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s)
          if (!sat[s] && some_successor_in(ks, s, sat)) sat[s] = changed = true;
      }
      break;
    }
    case K::AF: {
      // Least fixpoint of Z = f OR AX Z.
      sat = oracle_eval(ks, f->left());
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s)
          if (!sat[s] && all_successors_in(ks, s, sat)) sat[s] = changed = true;
      }
      break;
    }
    case K::EG: {
      // Greatest fixpoint of Z = f AND EX Z.
      sat = oracle_eval(ks, f->left());
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s)
          if (sat[s] && !some_successor_in(ks, s, sat)) {
            sat[s] = false;
            changed = true;
          }
      }
      break;
    }
    case K::AG: {
      // Greatest fixpoint of Z = f AND AX Z.
      sat = oracle_eval(ks, f->left());
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s)
          if (sat[s] && !all_successors_in(ks, s, sat)) {
            sat[s] = false;
            changed = true;
          }
      }
      break;
    }
    case K::EU: {
      StateSet a = oracle_eval(ks, f->left());
      sat = oracle_eval(ks, f->right());
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s)
          if (!sat[s] && a[s] && some_successor_in(ks, s, sat)) sat[s] = changed = true;
      }
      break;
    }
    case K::AU: {
      StateSet a = oracle_eval(ks, f->left());
      sat = oracle_eval(ks, f->right());
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s)
          if (!sat[s] && a[s] && all_successors_in(ks, s, sat)) sat[s] = changed = true;
      }
      break;
    }
  }
  return sat;
}

}  // namespace

bool check_oracle(const KripkeStructure& ks, const FormulaRef& f,
                  const std::string& at, std::size_t max_states) {
  if (ks.state_count() > max_states)
    throw std::invalid_argument("structure too large for the naive oracle (" +
                                std::to_string(ks.state_count()) + " states, bound " +
                                std::to_string(max_states) + ")");
  ValidationReport report = validate(ks);
  if (!report.total())
    throw std::invalid_argument("structure is not total; CTL semantics undefined");
  auto state = ks.index_of(at);
  if (!state) throw std::invalid_argument("unknown state name: " + at);
  return oracle_eval(ks, f)[*state];
}

}  // namespace mc
