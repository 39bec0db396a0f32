#include "mc/ctl.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mc {

FormulaRef Formula::constant(bool value) {
  static FormulaRef t(new Formula(FormulaKind::True, "", nullptr, nullptr));
  static FormulaRef f(new Formula(FormulaKind::False, "", nullptr, nullptr));
  return value ? t : f;
}

FormulaRef Formula::atom(std::string name) {
  if (!is_valid_token(name))
    throw std::invalid_argument("bad atom name: '" + name + "'");
  return FormulaRef(new Formula(FormulaKind::Atom, std::move(name), nullptr, nullptr));
}

FormulaRef Formula::negation(FormulaRef f) {
  return FormulaRef(new Formula(FormulaKind::Not, "", std::move(f), nullptr));
}

FormulaRef Formula::conjunction(FormulaRef a, FormulaRef b) {
  return FormulaRef(new Formula(FormulaKind::And, "", std::move(a), std::move(b)));
}

FormulaRef Formula::disjunction(FormulaRef a, FormulaRef b) {
  return FormulaRef(new Formula(FormulaKind::Or, "", std::move(a), std::move(b)));
}

FormulaRef Formula::implication(FormulaRef a, FormulaRef b) {
  return FormulaRef(new Formula(FormulaKind::Implies, "", std::move(a), std::move(b)));
}

FormulaRef Formula::unary(FormulaKind kind, FormulaRef f) {
  switch (kind) {
    case FormulaKind::Not:
    case FormulaKind::AX:
    case FormulaKind::EX:
    case FormulaKind::AF:
    case FormulaKind::EF:
    case FormulaKind::AG:
    case FormulaKind::EG:
      return FormulaRef(new Formula(kind, "", std::move(f), nullptr));
    default:
      throw std::invalid_argument("not a unary operator");
  }
}

FormulaRef Formula::until(FormulaKind kind, FormulaRef a, FormulaRef b) {
  if (kind != FormulaKind::AU && kind != FormulaKind::EU)
    throw std::invalid_argument("not an until operator");
  return FormulaRef(new Formula(kind, "", std::move(a), std::move(b)));
}

bool equal(const FormulaRef& a, const FormulaRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  if (a->kind() == FormulaKind::Atom) return a->atom_name() == b->atom_name();
  return equal(a->left(), b->left()) && equal(a->right(), b->right());
}

namespace {

const char* kind_tag(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::True: return "true";
    case FormulaKind::False: return "false";
    case FormulaKind::Atom: return "atom";
    case FormulaKind::Not: return "!";
    case FormulaKind::And: return "&";
    case FormulaKind::Or: return "|";
    case FormulaKind::Implies: return "->";
    case FormulaKind::AX: return "AX";
    case FormulaKind::EX: return "EX";
    case FormulaKind::AF: return "AF";
    case FormulaKind::EF: return "EF";
    case FormulaKind::AG: return "AG";
    case FormulaKind::EG: return "EG";
    case FormulaKind::AU: return "AU";
    case FormulaKind::EU: return "EU";
  }
  return "?";
}

void key_into(const FormulaRef& f, std::string& out) {
  if (f->kind() == FormulaKind::Atom) {
    out += "a:";
    out += f->atom_name();
    return;
  }
  out += kind_tag(f->kind());
  if (f->left()) {
    out += '(';
    key_into(f->left(), out);
    if (f->right()) {
      out += ',';
      key_into(f->right(), out);
    }
    out += ')';
  }
}

}  // namespace

std::string structural_key(const FormulaRef& f) {
  std::string out;
  key_into(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok {
  Ident,
  True,
  False,
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
  A,
  E,
  U,
  LParen,
  RParen,
  LBracket,
  RBracket,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int column;  // 1-based
};

std::vector<Token> lex(const std::string& text) {
  static const std::map<std::string, Tok> keywords = {
      {"true", Tok::True}, {"false", Tok::False}, {"not", Tok::Not},
      {"and", Tok::And},   {"or", Tok::Or},       {"AX", Tok::AX},
      {"EX", Tok::EX},     {"AF", Tok::AF},       {"EF", Tok::EF},
      {"AG", Tok::AG},     {"EG", Tok::EG},       {"A", Tok::A},
      {"E", Tok::E},       {"U", Tok::U},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string word = text.substr(i, j - i);
      auto kw = keywords.find(word);
      out.push_back({kw == keywords.end() ? Tok::Ident : kw->second, word, col});
      i = j;
      continue;
    }
    switch (c) {
      case '!': out.push_back({Tok::Not, "!", col}); ++i; break;
      case '&': out.push_back({Tok::And, "&", col}); ++i; break;
      case '|': out.push_back({Tok::Or, "|", col}); ++i; break;
      case '(': out.push_back({Tok::LParen, "(", col}); ++i; break;
      case ')': out.push_back({Tok::RParen, ")", col}); ++i; break;
      case '[': out.push_back({Tok::LBracket, "[", col}); ++i; break;
      case ']': out.push_back({Tok::RBracket, "]", col}); ++i; break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Implies, "->", col});
          i += 2;
          break;
        }
        throw ParseError(1, col, "unexpected character '-'");
      default:
        throw ParseError(1, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", static_cast<int>(text.size()) + 1});
  return out;
}

class CtlParser {
 public:
  explicit CtlParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  FormulaRef parse() {
    FormulaRef f = implies();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  void expect(Tok kind, const std::string& what) {
    if (!accept(kind))
      throw ParseError(1, peek().column,
                       "expected " + what + ", found '" +
                           (peek().kind == Tok::End ? "<end>" : peek().text) + "'");
  }

  FormulaRef implies() {
    FormulaRef lhs = disj();
    if (accept(Tok::Implies)) return Formula::implication(lhs, implies());
    return lhs;
  }

  FormulaRef disj() {
    FormulaRef f = conj();
    while (accept(Tok::Or)) f = Formula::disjunction(f, conj());
    return f;
  }

  FormulaRef conj() {
    FormulaRef f = unary();
    while (accept(Tok::And)) f = Formula::conjunction(f, unary());
    return f;
  }

  FormulaRef unary() {
    switch (peek().kind) {
      case Tok::Not: take(); return Formula::negation(unary());
      case Tok::AX: take(); return Formula::unary(FormulaKind::AX, unary());
      case Tok::EX: take(); return Formula::unary(FormulaKind::EX, unary());
      case Tok::AF: take(); return Formula::unary(FormulaKind::AF, unary());
      case Tok::EF: take(); return Formula::unary(FormulaKind::EF, unary());
      case Tok::AG: take(); return Formula::unary(FormulaKind::AG, unary());
      case Tok::EG: take(); return Formula::unary(FormulaKind::EG, unary());
      default: return primary();
    }
  }

  FormulaRef primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::True: take(); return Formula::constant(true);
      case Tok::False: take(); return Formula::constant(false);
      case Tok::Ident: return Formula::atom(take().text);
      case Tok::LParen: {
        take();
        FormulaRef f = implies();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::A:
      case Tok::E: {
        FormulaKind kind = t.kind == Tok::A ? FormulaKind::AU : FormulaKind::EU;
        take();
        expect(Tok::LBracket, "'[' after path quantifier");
        FormulaRef lhs = implies();
        expect(Tok::U, "'U'");
        FormulaRef rhs = implies();
        expect(Tok::RBracket, "']' closing until");
        return Formula::until(kind, lhs, rhs);
      }
      default:
        throw ParseError(1, t.column,
                         "expected formula, found '" +
                             (t.kind == Tok::End ? "<end>" : t.text) + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaRef parse_ctl(const std::string& text) {
  return CtlParser(lex(text)).parse();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Precedence levels: 0 implies, 1 or, 2 and, 3 unary, 4 primary.
int level_of(const FormulaRef& f) {
  switch (f->kind()) {
    case FormulaKind::Implies: return 0;
    case FormulaKind::Or: return 1;
    case FormulaKind::And: return 2;
    case FormulaKind::Not:
    case FormulaKind::AX:
    case FormulaKind::EX:
    case FormulaKind::AF:
    case FormulaKind::EF:
    case FormulaKind::AG:
    case FormulaKind::EG:
      return 3;
    default: return 4;
  }
}

void print_into(const FormulaRef& f, int min_level, std::string& out) {
  bool parens = level_of(f) < min_level;
  if (parens) out += '(';
  switch (f->kind()) {
    case FormulaKind::True: out += "true"; break;
    case FormulaKind::False: out += "false"; break;
    case FormulaKind::Atom: out += f->atom_name(); break;
    case FormulaKind::Not:
      out += '!';
      print_into(f->left(), 3, out);
      break;
    case FormulaKind::And:
      print_into(f->left(), 2, out);
      out += " & ";
      print_into(f->right(), 3, out);
      break;
    case FormulaKind::Or:
      print_into(f->left(), 1, out);
      out += " | ";
      print_into(f->right(), 2, out);
      break;
    case FormulaKind::Implies:
      print_into(f->left(), 1, out);
      out += " -> ";
      print_into(f->right(), 0, out);
      break;
    case FormulaKind::AX:
    case FormulaKind::EX:
    case FormulaKind::AF:
    case FormulaKind::EF:
    case FormulaKind::AG:
    case FormulaKind::EG:
      out += kind_tag(f->kind());
      out += ' ';
      print_into(f->left(), 3, out);
      break;
    case FormulaKind::AU:
    case FormulaKind::EU:
      out += f->kind() == FormulaKind::AU ? "A[" : "E[";
      print_into(f->left(), 0, out);
      out += " U ";
      print_into(f->right(), 0, out);
      out += ']';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string format(const FormulaRef& f) {
  std::string out;
  print_into(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Subformula enumeration and normalization

namespace {

void collect(const FormulaRef& f, std::set<std::string>& seen,
             std::vector<FormulaRef>& out) {
  if (f->left()) collect(f->left(), seen, out);
  if (f->right()) collect(f->right(), seen, out);
  if (seen.insert(structural_key(f)).second) out.push_back(f);
}

}  // namespace

std::vector<FormulaRef> subformulas(const FormulaRef& f) {
  std::set<std::string> seen;
  std::vector<FormulaRef> out;
  collect(f, seen, out);
  return out;
}

std::size_t count_subformulas(const FormulaRef& f) {
  return subformulas(f).size();
}

namespace {

// Negation with double-negation collapse.
FormulaRef neg(const FormulaRef& f) {
  if (f->kind() == FormulaKind::Not) return f->left();
  return Formula::negation(f);
}

}  // namespace

FormulaRef normalize(const FormulaRef& f) {
  using K = FormulaKind;
  switch (f->kind()) {
    case K::True:
    case K::Atom:
      return f;
    case K::False:
      return Formula::negation(Formula::constant(true));
    case K::Not:
      return neg(normalize(f->left()));
    case K::And:
      return Formula::conjunction(normalize(f->left()), normalize(f->right()));
    case K::Or:
      return neg(Formula::conjunction(neg(normalize(f->left())),
                                      neg(normalize(f->right()))));
    case K::Implies:
      return neg(Formula::conjunction(normalize(f->left()),
                                      neg(normalize(f->right()))));
    case K::AX:
      return neg(Formula::unary(K::EX, neg(normalize(f->left()))));
    case K::EX:
      return Formula::unary(K::EX, normalize(f->left()));
    case K::AF:
      return neg(Formula::unary(K::EG, neg(normalize(f->left()))));
    case K::EF:
      return Formula::until(K::EU, Formula::constant(true), normalize(f->left()));
    case K::AG:
      return neg(Formula::until(K::EU, Formula::constant(true),
                                neg(normalize(f->left()))));
    case K::EG:
      return Formula::unary(K::EG, normalize(f->left()));
    case K::EU:
      return Formula::until(K::EU, normalize(f->left()), normalize(f->right()));
    case K::AU: {
      // A[f U g] = !(E[!g U !f & !g] | EG !g)
      FormulaRef nf = neg(normalize(f->left()));
      FormulaRef ng = neg(normalize(f->right()));
      FormulaRef eu = Formula::until(K::EU, ng, Formula::conjunction(nf, ng));
      FormulaRef eg = Formula::unary(K::EG, ng);
      return Formula::conjunction(neg(eu), neg(eg));
    }
  }
  throw std::logic_error("unhandled formula kind");
}

bool is_normalized(const FormulaRef& f) {
  switch (f->kind()) {
    case FormulaKind::True:
    case FormulaKind::Atom:
      return true;
    case FormulaKind::Not:
    case FormulaKind::EX:
    case FormulaKind::EG:
      return is_normalized(f->left());
    case FormulaKind::And:
    case FormulaKind::EU:
      return is_normalized(f->left()) && is_normalized(f->right());
    default:
      return false;
  }
}

std::vector<std::string> atoms_of(const FormulaRef& f) {
  std::set<std::string> names;
  for (const auto& g : subformulas(f))
    if (g->kind() == FormulaKind::Atom) names.insert(g->atom_name());
  return {names.begin(), names.end()};
}

}  // namespace mc
