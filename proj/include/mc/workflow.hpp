#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mc/kripke.hpp"

namespace mc {

/// Raised when a concurrent block exceeds the interleaving guard bound.
class ExplosionGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A named group of steps executed concurrently; expansion enumerates all
/// permutations of the steps.
struct ConcurrentBlock {
  std::string name;
  std::vector<std::string> steps;
};

/// Directed process graph: plain nodes with propositions, edges over node
/// and block names (choice and loop-back edges included), and concurrent
/// blocks to be interleaving-expanded.
struct WorkflowSpec {
  std::vector<std::pair<std::string, std::set<std::string>>> nodes;
  std::vector<ConcurrentBlock> blocks;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string start;

  bool is_node(const std::string& name) const;
  bool is_block(const std::string& name) const;
};

/// Parses the line-based .workflow format:
///   node <name> [<prop> ...]
///   block <name> <step1> <step2> ...
///   edge <from> <to>
///   init <name>
/// '#' starts a comment; names must be declared before use in edges.
WorkflowSpec parse_workflow(const std::string& text);

std::string serialize_workflow(const WorkflowSpec& spec);

/// Default refusal bound for block size: 8! = 40320 interleavings.
inline constexpr std::size_t kInterleavingGuard = 8;

/// All n! permutations of the steps, in lexicographic order of index
/// sequences. Refuses blocks larger than `guard` unless `force`.
std::vector<std::vector<std::string>> interleavings(
    const std::vector<std::string>& steps, std::size_t guard = kInterleavingGuard,
    bool force = false);

/// Per-block expansion statistics, reported by the CLI.
struct BlockExpansion {
  std::string block;
  std::size_t interleaving_count = 0;
  std::size_t fresh_states = 0;
  std::size_t transitions = 0;  // chain-internal plus exit edges
};

struct ExpandResult {
  KripkeStructure structure;
  std::vector<BlockExpansion> blocks;
};

/// Compiles the workflow to a Kripke structure. Plain nodes become states
/// verbatim. A block with steps (t1..tn) becomes n! linear chains; in
/// chain k (1-based) the occurrence of step T is a fresh state named Tk
/// labeled with both the suffixed proposition tk and the base proposition
/// t (lowercased step name). Edges into the block fan out to every chain
/// head; chain tails fan in to every edge target out of the block.
ExpandResult expand(const WorkflowSpec& spec, std::size_t guard = kInterleavingGuard,
                    bool force = false);

}  // namespace mc
