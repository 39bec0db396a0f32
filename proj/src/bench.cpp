#include "mc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mc/io.hpp"

namespace mc {

void BenchConfig::validate_config() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  for (std::size_t i = 1; i < formula_sizes.size(); ++i)
    if (formula_sizes[i] <= formula_sizes[i - 1])
      throw std::invalid_argument("formula sizes must be strictly increasing");
}

FormulaRef gen_formula_of_size(std::size_t k, const std::vector<std::string>& atoms,
                               unsigned seed) {
  if (k < 1) throw std::invalid_argument("formula size must be >= 1");
  if (atoms.empty()) throw std::invalid_argument("atom list must be non-empty");

  // m distinct atoms give: atoms (m) + or-chain (m-1) + AF (1) = 2m
  // subformulas, plus one for the AG wrapper when k is odd.
  std::size_t m = k == 1 ? 1 : k / 2;
  std::vector<std::string> pool = atoms;
  std::mt19937 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  for (std::size_t fresh = 1; pool.size() < m; ++fresh) {
    std::string name = "x" + std::to_string(fresh);
    if (std::find(pool.begin(), pool.end(), name) == pool.end()) pool.push_back(name);
  }

  FormulaRef f;
  if (k == 1) {
    f = Formula::atom(pool[0]);
  } else {
    FormulaRef chain = Formula::atom(pool[0]);
    for (std::size_t i = 1; i < m; ++i)
      chain = Formula::disjunction(chain, Formula::atom(pool[i]));
    f = Formula::unary(FormulaKind::AF, chain);
    if (k % 2 == 1) f = Formula::unary(FormulaKind::AG, f);
  }

  if (count_subformulas(f) != k)
    throw std::logic_error("generator produced a formula of size " +
                           std::to_string(count_subformulas(f)) + ", wanted " +
                           std::to_string(k));
  return f;
}

namespace {

// One measurement: `repeats` normalize+label runs, each timed on its own;
// records the fastest, which filters scheduler interference out of a trial.
std::uint64_t measure_ticks(const KripkeStructure& ks, const FormulaRef& f,
                            std::size_t repeats) {
  std::uint64_t best = UINT64_MAX;
  for (std::size_t i = 0; i < repeats; ++i) {
    auto begin = std::chrono::steady_clock::now();
    FormulaRef norm = normalize(f);
    LabelMap labels = label(ks, norm);
    (void)labels;
    auto end = std::chrono::steady_clock::now();
    auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(end - begin).count();
    best = std::min(best, static_cast<std::uint64_t>(ns));
  }
  return best / 100;
}

std::uint64_t rounded_mean(const std::vector<std::uint64_t>& values) {
  std::uint64_t sum = 0;
  for (std::uint64_t v : values) sum += v;
  return (sum + values.size() / 2) / values.size();
}

BenchRow timed_row(const KripkeStructure& ks, const FormulaRef& f,
                   const BenchConfig& cfg, std::string label_text,
                   std::size_t size_metric) {
  BenchRow row;
  row.label = std::move(label_text);
  row.size_metric = size_metric;
  for (std::size_t i = 0; i < cfg.warmup_runs; ++i) measure_ticks(ks, f, 1);
  for (std::size_t t = 0; t < cfg.trials; ++t)
    row.trial_ticks.push_back(measure_ticks(ks, f, cfg.repeats));
  row.avg_ticks = rounded_mean(row.trial_ticks);
  row.verdict = check(ks, f, ks.start_name()).holds;
  return row;
}

}  // namespace

BenchReport bench_formula_scaling(const KripkeStructure& ks, const BenchConfig& cfg) {
  cfg.validate_config();
  BenchReport report;
  report.trials = cfg.trials;
  std::vector<std::string> atoms = ks.proposition_inventory();
  if (atoms.empty()) atoms.push_back("x0");
  for (std::size_t k : cfg.formula_sizes) {
    FormulaRef f = gen_formula_of_size(k, atoms, cfg.seed + static_cast<unsigned>(k));
    report.rows.push_back(timed_row(ks, f, cfg, "k=" + std::to_string(k), k));
  }
  return report;
}

BenchReport bench_structure_scaling(const std::vector<CorpusEntry>& corpus,
                                    const BenchConfig& cfg) {
  cfg.validate_config();
  BenchReport report;
  report.trials = cfg.trials;
  for (const CorpusEntry& entry : corpus) {
    try {
      KripkeStructure parsed = parse_kripke(read_text_file(entry.kripke_path));
      FormulaRef f = parse_ctl(read_text_file(entry.ctl_path));
      auto [states, transitions] = size_metrics(parsed);
      KripkeStructure total = complete_sinks(parsed);
      report.rows.push_back(
          timed_row(total, f, cfg, entry.label, states + transitions));
    } catch (const std::exception& e) {
      BenchRow row;
      row.label = entry.label;
      row.error = e.what();
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string emit_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "label,size";
  for (std::size_t t = 1; t <= report.trials; ++t) out << ",trial" << t;
  out << ",avg,verdict\n";
  for (const BenchRow& row : report.rows) {
    out << csv_field(row.label);
    if (!row.error.empty()) {
      out << ',';
      for (std::size_t t = 0; t < report.trials; ++t) out << ',';
      out << ',' << csv_field("ERROR: " + row.error) << '\n';
      continue;
    }
    out << ',' << row.size_metric;
    for (std::uint64_t ticks : row.trial_ticks) out << ',' << ticks;
    out << ',' << row.avg_ticks << ',' << (row.verdict ? "TRUE" : "FALSE") << '\n';
  }
  return out.str();
}

std::string emit_svg(const BenchReport& report, const std::string& title) {
  const int width = 640, height = 420;
  const int left = 70, right = 20, top = 40, bottom = 50;
  std::vector<std::pair<double, double>> points;
  double max_x = 1, max_y = 1;
  for (const BenchRow& row : report.rows) {
    if (!row.error.empty()) continue;
    points.emplace_back(static_cast<double>(row.size_metric),
                        static_cast<double>(row.avg_ticks));
    max_x = std::max(max_x, points.back().first);
    max_y = std::max(max_y, points.back().second);
  }
  std::sort(points.begin(), points.end());
  auto px = [&](double x) { return left + x / max_x * (width - left - right); };
  auto py = [&](double y) { return height - bottom - y / max_y * (height - top - bottom); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n"
      << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\""
      << width - right << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << "size</text>\n"
      << "<text x=\"16\" y=\"" << height / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 16 " << height / 2 << ")\">avg ticks ("
      << BenchReport::kTickUnit << ")</text>\n";
  if (!points.empty()) {
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : points) out << px(x) << ',' << py(y) << ' ';
    out << "\"/>\n";
    for (const auto& [x, y] : points)
      out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
          << "\" r=\"3.5\" fill=\"firebrick\"/>\n";
  }
  out << "<text x=\"" << left << "\" y=\"" << height - bottom + 16
      << "\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n"
      << "<text x=\"" << width - right << "\" y=\"" << height - bottom + 16
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << static_cast<long long>(max_x) << "</text>\n"
      << "<text x=\"" << left - 6 << "\" y=\"" << top + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << static_cast<long long>(max_y) << "</text>\n"
      << "</svg>\n";
  return out.str();
}

}  // namespace mc
