#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "mc/kripke.hpp"

namespace mc {

enum class FormulaKind {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  AX,
  EX,
  AF,
  EF,
  AG,
  EG,
  AU,
  EU,
};

class Formula;
using FormulaRef = std::shared_ptr<const Formula>;

/// Immutable CTL syntax tree node. Shared subtrees are allowed; all
/// comparisons are structural.
class Formula {
 public:
  FormulaKind kind() const { return kind_; }
  const std::string& atom_name() const { return atom_; }
  const FormulaRef& left() const { return left_; }
  const FormulaRef& right() const { return right_; }

  static FormulaRef constant(bool value);
  static FormulaRef atom(std::string name);
  static FormulaRef negation(FormulaRef f);
  static FormulaRef conjunction(FormulaRef a, FormulaRef b);
  static FormulaRef disjunction(FormulaRef a, FormulaRef b);
  static FormulaRef implication(FormulaRef a, FormulaRef b);
  static FormulaRef unary(FormulaKind kind, FormulaRef f);     // AX..EG
  static FormulaRef until(FormulaKind kind, FormulaRef a, FormulaRef b);  // AU, EU

 private:
  Formula(FormulaKind kind, std::string atom, FormulaRef left, FormulaRef right)
      : kind_(kind), atom_(std::move(atom)), left_(std::move(left)), right_(std::move(right)) {}

  FormulaKind kind_;
  std::string atom_;
  FormulaRef left_;
  FormulaRef right_;
};

bool equal(const FormulaRef& a, const FormulaRef& b);

/// Canonical key usable as a map index; injective on formula structure.
std::string structural_key(const FormulaRef& f);

/// Parses the ASCII CTL grammar. Precedence, loosest first: ->, |, &,
/// unary; -> is right-associative; and/or/not are accepted aliases for
/// &, |, !. Until is written A[f U g] / E[f U g].
FormulaRef parse_ctl(const std::string& text);

/// Minimal-parenthesization printer; parse_ctl(format(f)) equals f.
std::string format(const FormulaRef& f);

/// Number of distinct subformulas (structurally identical subtrees counted
/// once); the |f| parameter of the checking complexity bound.
std::size_t count_subformulas(const FormulaRef& f);

/// Distinct subformulas, children strictly before parents; the last entry
/// is the formula itself.
std::vector<FormulaRef> subformulas(const FormulaRef& f);

/// Rewrites to the {true, atom, !, &, EX, EU, EG} base:
///   false      -> !true
///   a | b      -> !(!a & !b)
///   a -> b     -> !(a & !b)
///   AX f       -> !EX !f
///   EF f       -> E[true U f]
///   AF f       -> !EG !f
///   AG f       -> !E[true U !f]
///   A[f U g]   -> !E[!g U !f & !g] & !EG !g
/// Double negations introduced by composition are collapsed.
FormulaRef normalize(const FormulaRef& f);

/// True iff f only uses the normalized operator base.
bool is_normalized(const FormulaRef& f);

/// Atom names occurring in f, sorted, deduplicated.
std::vector<std::string> atoms_of(const FormulaRef& f);

}  // namespace mc
