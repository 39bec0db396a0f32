#include "mc/kripke.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>

namespace mc {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", col " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

bool is_valid_token(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::size_t KripkeStructure::add_state(const std::string& name,
                                       std::set<std::string> props) {
  if (!is_valid_token(name))
    throw std::invalid_argument("bad state name: '" + name + "'");
  if (index_.count(name))
    throw std::invalid_argument("duplicate state declaration: " + name);
  for (const auto& p : props)
    if (!is_valid_token(p))
      throw std::invalid_argument("bad proposition token: '" + p + "'");
  std::size_t idx = names_.size();
  names_.push_back(name);
  index_[name] = idx;
  props_.push_back(std::move(props));
  return idx;
}

void KripkeStructure::add_transition(const std::string& from, const std::string& to) {
  auto fi = index_.find(from);
  auto ti = index_.find(to);
  if (fi == index_.end())
    throw std::invalid_argument("transition references undeclared state: " + from);
  if (ti == index_.end())
    throw std::invalid_argument("transition references undeclared state: " + to);
  auto edge = std::make_pair(fi->second, ti->second);
  if (transition_set_.count(edge))
    throw std::invalid_argument("duplicate transition: " + from + " -> " + to);
  transitions_.push_back(edge);
  transition_set_.insert(edge);
}

void KripkeStructure::set_start(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end())
    throw std::invalid_argument("init references undeclared state: " + name);
  start_ = static_cast<long>(it->second);
}

std::optional<std::size_t> KripkeStructure::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool KripkeStructure::has_prop(std::size_t index, const std::string& prop) const {
  return props_.at(index).count(prop) != 0;
}

bool KripkeStructure::has_transition(std::size_t from, std::size_t to) const {
  return transition_set_.count({from, to}) != 0;
}

std::size_t KripkeStructure::start_index() const {
  if (start_ < 0) throw std::logic_error("start state not set");
  return static_cast<std::size_t>(start_);
}

const std::string& KripkeStructure::start_name() const {
  return names_.at(start_index());
}

std::vector<std::vector<std::size_t>> KripkeStructure::successor_lists() const {
  std::vector<std::vector<std::size_t>> succ(names_.size());
  for (const auto& [from, to] : transitions_) succ[from].push_back(to);
  return succ;
}

std::vector<std::vector<std::size_t>> KripkeStructure::predecessor_lists() const {
  std::vector<std::vector<std::size_t>> pred(names_.size());
  for (const auto& [from, to] : transitions_) pred[to].push_back(from);
  return pred;
}

std::vector<std::string> KripkeStructure::proposition_inventory() const {
  std::set<std::string> all;
  for (const auto& ps : props_) all.insert(ps.begin(), ps.end());
  return {all.begin(), all.end()};
}

bool KripkeStructure::operator==(const KripkeStructure& other) const {
  if (names_.size() != other.names_.size()) return false;
  if (transition_set_.size() != other.transition_set_.size()) return false;
  if (has_start() != other.has_start()) return false;
  if (has_start() && start_name() != other.start_name()) return false;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    auto oi = other.index_of(names_[i]);
    if (!oi || other.props_of(*oi) != props_[i]) return false;
  }
  for (const auto& [from, to] : transitions_) {
    auto of = other.index_of(names_[from]);
    auto ot = other.index_of(names_[to]);
    if (!of || !ot || !other.has_transition(*of, *ot)) return false;
  }
  return true;
}

namespace {

struct Line {
  int number;
  std::vector<std::string> words;
  std::vector<int> columns;  // 1-based column of each word
};

std::vector<Line> tokenize_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    Line line{number, {}, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.words.push_back(raw.substr(i, j - i));
      line.columns.push_back(static_cast<int>(i) + 1);
      i = j;
    }
    if (!line.words.empty()) out.push_back(std::move(line));
  }
  return out;
}

}  // namespace

KripkeStructure parse_kripke(const std::string& text) {
  KripkeStructure ks;
  int init_count = 0;
  for (const Line& line : tokenize_lines(text)) {
    const auto& w = line.words;
    auto fail = [&](std::size_t word, const std::string& msg) -> ParseError {
      int col = word < line.columns.size() ? line.columns[word] : 1;
      return ParseError(line.number, col, msg);
    };
    try {
      if (w[0] == "state") {
        if (w.size() < 2) throw fail(0, "state directive needs a name");
        std::set<std::string> props(w.begin() + 2, w.end());
        if (props.size() != w.size() - 2)
          throw fail(2, "duplicate proposition on state " + w[1]);
        ks.add_state(w[1], std::move(props));
      } else if (w[0] == "trans") {
        if (w.size() != 3) throw fail(0, "trans directive needs two state names");
        ks.add_transition(w[1], w[2]);
      } else if (w[0] == "init") {
        if (w.size() != 2) throw fail(0, "init directive needs one state name");
        if (++init_count > 1) throw fail(0, "multiple init lines");
        ks.set_start(w[1]);
      } else {
        throw fail(0, "unknown directive '" + w[0] + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(line.number, line.columns[0], e.what());
    }
  }
  if (init_count == 0) throw ParseError(0, 0, "missing init line");
  return ks;
}

std::string serialize_kripke(const KripkeStructure& ks) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ks.state_count(); ++i) {
    out << "state " << ks.name_of(i);
    for (const auto& p : ks.props_of(i)) out << ' ' << p;
    out << '\n';
  }
  for (const auto& [from, to] : ks.transitions())
    out << "trans " << ks.name_of(from) << ' ' << ks.name_of(to) << '\n';
  out << "init " << ks.start_name() << '\n';
  return out.str();
}

ValidationReport validate(const KripkeStructure& ks) {
  ValidationReport report;
  if (!ks.has_start()) {
    report.errors.push_back({"no-init", "structure has no start state", ""});
    return report;
  }

  auto succ = ks.successor_lists();
  for (std::size_t i = 0; i < ks.state_count(); ++i)
    if (succ[i].empty()) report.totality_violations.push_back(ks.name_of(i));

  // Reachability from the start state.
  std::vector<bool> seen(ks.state_count(), false);
  std::deque<std::size_t> queue{ks.start_index()};
  seen[ks.start_index()] = true;
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t t : succ[s])
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
  }
  for (std::size_t i = 0; i < ks.state_count(); ++i)
    if (!seen[i])
      report.warnings.push_back(
          {"unreachable", "unreachable: " + ks.name_of(i), ks.name_of(i)});

  return report;
}

KripkeStructure complete_sinks(const KripkeStructure& ks) {
  KripkeStructure out;
  for (std::size_t i = 0; i < ks.state_count(); ++i)
    out.add_state(ks.name_of(i), ks.props_of(i));
  std::vector<bool> has_succ(ks.state_count(), false);
  for (const auto& [from, to] : ks.transitions()) {
    has_succ[from] = true;
    out.add_transition(ks.name_of(from), ks.name_of(to));
  }
  for (std::size_t i = 0; i < ks.state_count(); ++i)
    if (!has_succ[i]) out.add_transition(ks.name_of(i), ks.name_of(i));
  if (ks.has_start()) out.set_start(ks.start_name());
  return out;
}

std::pair<std::size_t, std::size_t> size_metrics(const KripkeStructure& ks) {
  return {ks.state_count(), ks.transition_count()};
}

}  // namespace mc
