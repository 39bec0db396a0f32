#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mc/bench.hpp"
#include "mc/checker.hpp"
#include "mc/ctl.hpp"
#include "mc/io.hpp"
#include "mc/kripke.hpp"
#include "mc/workflow.hpp"

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;

// Applies the default sink policy: complete sinks with a warning, or
// refuse when --strict-total is set.
mc::KripkeStructure prepare_model(const mc::KripkeStructure& parsed, bool strict_total) {
  mc::ValidationReport report = mc::validate(parsed);
  if (!report.ok()) {
    for (const auto& issue : report.errors)
      std::cerr << "error: " << issue.message << '\n';
    throw std::runtime_error("model failed validation");
  }
  if (report.total()) return parsed;
  if (strict_total) {
    std::ostringstream msg;
    msg << "model is not total (";
    for (std::size_t i = 0; i < report.totality_violations.size(); ++i)
      msg << (i ? ", " : "") << report.totality_violations[i];
    msg << " lack successors) and --strict-total is set";
    throw std::runtime_error(msg.str());
  }
  std::cerr << "warning: added self-loops to " << report.totality_violations.size()
            << " sink state(s):";
  for (const auto& name : report.totality_violations) std::cerr << ' ' << name;
  std::cerr << '\n';
  return mc::complete_sinks(parsed);
}

void write_or_print(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    mc::write_text_file(out_path, content);
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
  std::vector<std::size_t> sizes;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) sizes.push_back(std::stoul(item));
  return sizes;
}

int run_check(const std::string& model_path, const std::string& property_path,
              const std::string& at, bool show_labels, bool strict_total) {
  mc::KripkeStructure parsed = mc::parse_kripke(mc::read_text_file(model_path));
  mc::FormulaRef property = mc::parse_ctl(mc::read_text_file(property_path));
  mc::KripkeStructure model = prepare_model(parsed, strict_total);
  std::string state = at.empty() ? model.start_name() : at;

  mc::Verdict verdict = mc::check(model, property, state, show_labels);
  std::cout << "verdict=" << (verdict.holds ? "TRUE" : "FALSE") << '\n'
            << "state=" << verdict.queried_state << '\n'
            << "sat_count=" << verdict.sat_count << '\n'
            << "ticks=" << verdict.elapsed_ticks << '\n';
  if (show_labels) {
    for (const auto& entry : verdict.labels->entries()) {
      std::cout << "label " << mc::format(entry.formula) << " =";
      for (const auto& name : verdict.labels->sat_states(model, entry.formula))
        std::cout << ' ' << name;
      std::cout << '\n';
    }
  }
  return verdict.holds ? kExitHolds : kExitFails;
}

int run_expand(const std::string& workflow_path, const std::string& out_path,
               std::size_t guard, bool force) {
  mc::WorkflowSpec spec = mc::parse_workflow(mc::read_text_file(workflow_path));
  mc::ExpandResult result = mc::expand(spec, guard, force);
  for (const auto& block : result.blocks)
    std::cout << "block " << block.block << ": interleavings=" << block.interleaving_count
              << " states=" << block.fresh_states
              << " transitions=" << block.transitions << '\n';
  auto [states, transitions] = mc::size_metrics(result.structure);
  std::cout << "states=" << states << " transitions=" << transitions
            << " size=" << states + transitions << '\n';
  write_or_print(out_path, mc::serialize_kripke(result.structure));
  return kExitHolds;
}

int run_validate(const std::string& model_path) {
  mc::KripkeStructure model = mc::parse_kripke(mc::read_text_file(model_path));
  mc::ValidationReport report = mc::validate(model);
  for (const auto& issue : report.errors) std::cout << "error: " << issue.message << '\n';
  for (const auto& issue : report.warnings)
    std::cout << "warning: " << issue.message << '\n';
  for (const auto& name : report.totality_violations)
    std::cout << "warning: no successor: " << name << '\n';
  if (report.ok() && report.warnings.empty() && report.total())
    std::cout << "no issues\n";
  return report.ok() ? kExitHolds : kExitError;
}

int run_info(const std::string& model_path) {
  mc::KripkeStructure model = mc::parse_kripke(mc::read_text_file(model_path));
  auto [states, transitions] = mc::size_metrics(model);
  std::cout << "states=" << states << '\n'
            << "transitions=" << transitions << '\n'
            << "size=" << states + transitions << '\n'
            << "init=" << model.start_name() << '\n'
            << "propositions=";
  bool first = true;
  for (const auto& p : model.proposition_inventory()) {
    if (!first) std::cout << ' ';
    std::cout << p;
    first = false;
  }
  std::cout << '\n';
  return kExitHolds;
}

void emit_report(const mc::BenchReport& report, const std::string& out_path,
                 const std::string& plot_path, const std::string& title) {
  write_or_print(out_path, mc::emit_csv(report));
  if (!plot_path.empty()) mc::write_text_file(plot_path, mc::emit_svg(report, title));
}

int run_bench_formula(const std::string& model_path, const std::string& sizes_csv,
                      const mc::BenchConfig& base, bool strict_total,
                      const std::string& out_path, const std::string& plot_path) {
  mc::BenchConfig cfg = base;
  cfg.formula_sizes = parse_sizes(sizes_csv);
  mc::KripkeStructure model =
      prepare_model(mc::parse_kripke(mc::read_text_file(model_path)), strict_total);
  emit_report(mc::bench_formula_scaling(model, cfg), out_path, plot_path,
              "Verification time vs. formula length");
  return kExitHolds;
}

int run_bench_structure(const std::string& manifest_path, const mc::BenchConfig& cfg,
                        const std::string& out_path, const std::string& plot_path) {
  namespace fs = std::filesystem;
  nlohmann::json manifest = nlohmann::json::parse(mc::read_text_file(manifest_path));
  fs::path base = fs::path(manifest_path).parent_path();
  std::vector<mc::CorpusEntry> corpus;
  for (const auto& item : manifest.at("entries")) {
    corpus.push_back({item.at("label").get<std::string>(),
                      (base / item.at("kripke").get<std::string>()).string(),
                      (base / item.at("ctl").get<std::string>()).string()});
  }
  emit_report(mc::bench_structure_scaling(corpus, cfg), out_path, plot_path,
              "Verification time vs. structure size");
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit-state CTL model checker with workflow interleaving expansion"};
  app.require_subcommand(1);

  std::string model_path, property_path, workflow_path, manifest_path;
  std::string at_state, out_path, plot_path, sizes_csv = "1,5,10,15,20";
  bool show_labels = false, strict_total = false, force = false;
  std::size_t guard = mc::kInterleavingGuard;
  mc::BenchConfig bench_cfg;

  auto* check_cmd = app.add_subcommand("check", "Check a CTL property on a model");
  check_cmd->add_option("model", model_path, "Kripke model (.kripke)")->required();
  check_cmd->add_option("property", property_path, "CTL property (.ctl)")->required();
  check_cmd->add_option("--at", at_state, "State to query (default: init state)");
  check_cmd->add_flag("--labels", show_labels, "Print per-subformula sat-sets");
  check_cmd->add_flag("--strict-total", strict_total,
                      "Refuse non-total models instead of completing sinks");

  auto* expand_cmd = app.add_subcommand("expand", "Expand a workflow to a Kripke model");
  expand_cmd->add_option("workflow", workflow_path, "Workflow (.workflow)")->required();
  expand_cmd->add_option("--out", out_path, "Output .kripke path (default: stdout)");
  expand_cmd->add_option("--guard", guard, "Interleaving guard bound on block size");
  expand_cmd->add_flag("--force", force, "Expand past the guard bound");

  auto* validate_cmd = app.add_subcommand("validate", "Validate a Kripke model");
  validate_cmd->add_option("model", model_path, "Kripke model (.kripke)")->required();

  auto* info_cmd = app.add_subcommand("info", "Print model size and propositions");
  info_cmd->add_option("model", model_path, "Kripke model (.kripke)")->required();

  auto* bench_cmd = app.add_subcommand("bench", "Scaling experiments");
  bench_cmd->require_subcommand(1);
  auto add_bench_flags = [&](CLI::App* cmd) {
    cmd->add_option("--trials", bench_cfg.trials, "Trials per row");
    cmd->add_option("--warmup", bench_cfg.warmup_runs, "Warmup runs per row");
    cmd->add_option("--repeats", bench_cfg.repeats, "Labelings per trial (fastest is recorded)");
    cmd->add_option("--seed", bench_cfg.seed, "Formula generator seed");
    cmd->add_option("--out", out_path, "CSV output path (default: stdout)");
    cmd->add_option("--plot", plot_path, "SVG plot output path");
  };
  auto* bench_formula = bench_cmd->add_subcommand("formula", "Time vs. formula length");
  bench_formula->add_option("model", model_path, "Kripke model (.kripke)")->required();
  bench_formula->add_option("--sizes", sizes_csv, "Subformula counts, comma separated");
  bench_formula->add_flag("--strict-total", strict_total,
                          "Refuse non-total models instead of completing sinks");
  add_bench_flags(bench_formula);
  auto* bench_structure = bench_cmd->add_subcommand("structure", "Time vs. model size");
  bench_structure->add_option("--manifest", manifest_path, "Corpus manifest (JSON)")
      ->required();
  add_bench_flags(bench_structure);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (app.got_subcommand(check_cmd))
      return run_check(model_path, property_path, at_state, show_labels, strict_total);
    if (app.got_subcommand(expand_cmd))
      return run_expand(workflow_path, out_path, guard, force);
    if (app.got_subcommand(validate_cmd)) return run_validate(model_path);
    if (app.got_subcommand(info_cmd)) return run_info(model_path);
    if (bench_cmd->got_subcommand(bench_formula))
      return run_bench_formula(model_path, sizes_csv, bench_cfg, strict_total,
                               out_path, plot_path);
    if (bench_cmd->got_subcommand(bench_structure))
      return run_bench_structure(manifest_path, bench_cfg, out_path, plot_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
