#include "mc/workflow.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace mc {

bool WorkflowSpec::is_node(const std::string& name) const {
  return std::any_of(nodes.begin(), nodes.end(),
                     [&](const auto& n) { return n.first == name; });
}

bool WorkflowSpec::is_block(const std::string& name) const {
  return std::any_of(blocks.begin(), blocks.end(),
                     [&](const auto& b) { return b.name == name; });
}

namespace {

std::string lowercased(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

WorkflowSpec parse_workflow(const std::string& text) {
  WorkflowSpec spec;
  std::set<std::string> declared;
  int init_count = 0;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::vector<std::string> w;
    for (std::string word; line >> word;) w.push_back(word);
    if (w.empty()) continue;
    auto fail = [&](const std::string& msg) { return ParseError(number, 1, msg); };

    if (w[0] == "node") {
      if (w.size() < 2) throw fail("node directive needs a name");
      if (!is_valid_token(w[1])) throw fail("bad node name: '" + w[1] + "'");
      if (!declared.insert(w[1]).second) throw fail("duplicate name: " + w[1]);
      std::set<std::string> props(w.begin() + 2, w.end());
      for (const auto& p : props)
        if (!is_valid_token(p)) throw fail("bad proposition token: '" + p + "'");
      spec.nodes.emplace_back(w[1], std::move(props));
    } else if (w[0] == "block") {
      if (w.size() < 3) throw fail("block directive needs a name and at least one step");
      if (!is_valid_token(w[1])) throw fail("bad block name: '" + w[1] + "'");
      if (!declared.insert(w[1]).second) throw fail("duplicate name: " + w[1]);
      ConcurrentBlock block{w[1], {w.begin() + 2, w.end()}};
      std::set<std::string> steps;
      for (const auto& s : block.steps) {
        if (!is_valid_token(s)) throw fail("bad step name: '" + s + "'");
        if (!steps.insert(s).second)
          throw fail("duplicate step '" + s + "' in block " + block.name);
      }
      spec.blocks.push_back(std::move(block));
    } else if (w[0] == "edge") {
      if (w.size() != 3) throw fail("edge directive needs two names");
      for (int i : {1, 2})
        if (!declared.count(w[i])) throw fail("edge references undeclared name: " + w[i]);
      spec.edges.emplace_back(w[1], w[2]);
    } else if (w[0] == "init") {
      if (w.size() != 2) throw fail("init directive needs one node name");
      if (++init_count > 1) throw fail("multiple init lines");
      spec.start = w[1];
      if (!spec.is_node(w[1])) throw fail("init must name a node: " + w[1]);
    } else {
      throw fail("unknown directive '" + w[0] + "'");
    }
  }
  if (init_count == 0) throw ParseError(0, 0, "missing init line");
  return spec;
}

std::string serialize_workflow(const WorkflowSpec& spec) {
  std::ostringstream out;
  for (const auto& [name, props] : spec.nodes) {
    out << "node " << name;
    for (const auto& p : props) out << ' ' << p;
    out << '\n';
  }
  for (const auto& block : spec.blocks) {
    out << "block " << block.name;
    for (const auto& s : block.steps) out << ' ' << s;
    out << '\n';
  }
  for (const auto& [from, to] : spec.edges) out << "edge " << from << ' ' << to << '\n';
  out << "init " << spec.start << '\n';
  return out.str();
}

std::vector<std::vector<std::string>> interleavings(
    const std::vector<std::string>& steps, std::size_t guard, bool force) {
  if (steps.empty()) throw std::invalid_argument("empty step list");
  if (steps.size() > guard && !force) {
    std::size_t count = 1;
    for (std::size_t i = 2; i <= steps.size(); ++i) count *= i;
    throw ExplosionGuardError(
        "block of " + std::to_string(steps.size()) + " steps expands to " +
        std::to_string(count) + " interleavings (guard bound " +
        std::to_string(guard) + "); pass force to expand anyway");
  }
  std::vector<std::size_t> order(steps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::vector<std::string>> out;
  do {
    std::vector<std::string> perm;
    perm.reserve(order.size());
    for (std::size_t i : order) perm.push_back(steps[i]);
    out.push_back(std::move(perm));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

ExpandResult expand(const WorkflowSpec& spec, std::size_t guard, bool force) {
  ExpandResult result;
  KripkeStructure& ks = result.structure;

  for (const auto& [name, props] : spec.nodes) ks.add_state(name, props);

  // Chain heads and tails per block, in interleaving order.
  std::map<std::string, std::vector<std::string>> heads, tails;
  for (const auto& block : spec.blocks) {
    auto perms = interleavings(block.steps, guard, force);
    BlockExpansion stats{block.name, perms.size(), 0, 0};
    for (std::size_t k = 0; k < perms.size(); ++k) {
      std::string suffix = std::to_string(k + 1);
      std::string previous;
      for (const std::string& step : perms[k]) {
        std::string state = step + suffix;
        std::string base = lowercased(step);
        ks.add_state(state, {base, base + suffix});
        ++stats.fresh_states;
        if (!previous.empty()) {
          ks.add_transition(previous, state);
          ++stats.transitions;
        }
        previous = state;
      }
      heads[block.name].push_back(perms[k].front() + suffix);
      tails[block.name].push_back(previous);
    }
    result.blocks.push_back(stats);
  }

  auto stats_of = [&result](const std::string& name) -> BlockExpansion& {
    for (auto& b : result.blocks)
      if (b.block == name) return b;
    throw std::logic_error("unknown block " + name);
  };

  for (const auto& [from, to] : spec.edges) {
    std::vector<std::string> sources =
        spec.is_block(from) ? tails.at(from) : std::vector<std::string>{from};
    std::vector<std::string> targets =
        spec.is_block(to) ? heads.at(to) : std::vector<std::string>{to};
    for (const auto& s : sources)
      for (const auto& t : targets) ks.add_transition(s, t);
    if (spec.is_block(from)) stats_of(from).transitions += sources.size() * targets.size();
  }

  ks.set_start(spec.start);
  return result;
}

}  // namespace mc
