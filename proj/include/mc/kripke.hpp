#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mc {

/// Error raised by the textual parsers; carries a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// True iff `s` matches [A-Za-z_][A-Za-z0-9_]* (state and proposition names).
bool is_valid_token(const std::string& s);

/// Finite state-transition graph with per-state proposition labels and a
/// single start state. Immutable once built; the parser and the workflow
/// expander are the only producers.
class KripkeStructure {
 public:
  KripkeStructure() = default;

  // Construction. add_state throws on duplicate or malformed names,
  // add_transition on undeclared endpoints or duplicate edges.
  std::size_t add_state(const std::string& name, std::set<std::string> props = {});
  void add_transition(const std::string& from, const std::string& to);
  void set_start(const std::string& name);

  std::size_t state_count() const { return names_.size(); }
  std::size_t transition_count() const { return transitions_.size(); }

  const std::vector<std::string>& state_names() const { return names_; }
  const std::string& name_of(std::size_t index) const { return names_.at(index); }
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool has_state(const std::string& name) const { return index_.count(name) != 0; }

  const std::set<std::string>& props_of(std::size_t index) const { return props_.at(index); }
  bool has_prop(std::size_t index, const std::string& prop) const;

  /// Transitions as (from, to) index pairs, in declaration order.
  const std::vector<std::pair<std::size_t, std::size_t>>& transitions() const {
    return transitions_;
  }
  bool has_transition(std::size_t from, std::size_t to) const;

  std::size_t start_index() const;
  const std::string& start_name() const;
  bool has_start() const { return start_ >= 0; }

  /// Successor adjacency, indexed by state. Built on first use.
  std::vector<std::vector<std::size_t>> successor_lists() const;
  std::vector<std::vector<std::size_t>> predecessor_lists() const;

  /// All proposition tokens appearing in the labeling, sorted.
  std::vector<std::string> proposition_inventory() const;

  /// Structural equality: same states (names and labels), same transition
  /// set, same start state. Declaration order is ignored.
  bool operator==(const KripkeStructure& other) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::set<std::string>> props_;
  std::vector<std::pair<std::size_t, std::size_t>> transitions_;
  std::set<std::pair<std::size_t, std::size_t>> transition_set_;
  long start_ = -1;
};

struct ValidationIssue {
  std::string code;
  std::string message;
  std::string element;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;
  std::vector<std::string> totality_violations;

  bool ok() const { return errors.empty(); }
  bool total() const { return totality_violations.empty(); }
};

/// Parses the line-based .kripke format:
///   state <name> [<prop> ...]
///   trans <from> <to>
///   init <name>
/// '#' starts a comment; blank lines are ignored; states must be declared
/// before they are referenced; exactly one init line is required.
KripkeStructure parse_kripke(const std::string& text);

/// Emits a document that parse_kripke maps back to an equal structure.
std::string serialize_kripke(const KripkeStructure& ks);

/// Reports totality violations plus warnings for states unreachable from
/// the start state. Never mutates its input; all findings go in the report.
ValidationReport validate(const KripkeStructure& ks);

/// Returns a copy in which every state without a successor gains a
/// self-loop. Idempotent; the result passes totality validation.
KripkeStructure complete_sinks(const KripkeStructure& ks);

/// (state count, transition count); their sum is the size metric used by
/// the structure-scaling benchmark.
std::pair<std::size_t, std::size_t> size_metrics(const KripkeStructure& ks);

}  // namespace mc
