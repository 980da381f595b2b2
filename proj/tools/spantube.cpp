// spantube: minimal spanning tubes over melody contours.
//
// Exit codes: 0 success / feasible, 1 well-posed negative answer,
// 2 input or usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spantube/analysis.h"
#include "spantube/decision.h"
#include "spantube/io.h"
#include "spantube/melody.h"
#include "spantube/optimizer.h"
#include "spantube/plot.h"
#include "spantube/special.h"

namespace {

using nlohmann::json;
using namespace spantube;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw io::InputError("cannot write " + out_path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

melody::CurveOptions curve_options(const std::string& mode) {
  melody::CurveOptions c;
  if (mode == "step") {
    c.mode = melody::CurveMode::Step;
  } else if (mode == "linear") {
    c.mode = melody::CurveMode::Linear;
  } else {
    throw UsageError("--mode must be step or linear");
  }
  return c;
}

// Reference selection: an explicit --ref entry ("id" or "style=id") wins;
// otherwise a seeded random pick when --seed is given.
std::string pick_reference(const std::string& style, const std::vector<melody::Transcription>& ts,
                           const std::vector<std::string>& refs, std::optional<unsigned long> seed) {
  for (const std::string& r : refs) {
    const auto eq = r.find('=');
    const std::string want_style = eq == std::string::npos ? std::string() : r.substr(0, eq);
    const std::string id = eq == std::string::npos ? r : r.substr(eq + 1);
    if (!want_style.empty() && want_style != style) continue;
    for (const auto& t : ts) {
      if (t.id == id) return id;
    }
    if (!want_style.empty()) throw UsageError("reference '" + id + "' not found in style " + style);
  }
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::uniform_int_distribution<std::size_t> pick(0, ts.size() - 1);
    return ts[pick(rng)].id;
  }
  throw UsageError("style " + style + ": no reference given (use --ref ID, --ref STYLE=ID or --seed)");
}

struct Options {
  std::string input;
  std::vector<std::string> inputs;
  double epsilon = 0.0;
  std::vector<double> epsilons;
  int p = 0;
  std::vector<std::string> refs;
  std::string mode = "step";
  bool per_phrase = false;
  bool fast_3_2 = false;
  int decimals = 3;
  std::string out;
  std::optional<unsigned long> seed;
  std::string title;
};

int cmd_decide(const Options& o) {
  const FunctionSet fs = io::load_function_set(o.input).functions;
  const DecisionOutcome d = decide(fs, o.epsilon, o.p);
  json out = {{"feasible", d.feasible}};
  if (d.witness) out["witness"] = io::points_to_json(*d.witness);
  emit(out.dump(), o.out);
  return d.feasible ? kOk : kNegative;
}

int cmd_optimize(const Options& o) {
  const FunctionSet fs = io::load_function_set(o.input).functions;
  if (o.p < 1 || static_cast<std::size_t>(o.p) > fs.size()) {
    throw UsageError("--p must lie in [1, " + std::to_string(fs.size()) + "]");
  }
  if (o.fast_3_2 && (fs.size() != 3 || o.p != 2)) {
    throw UsageError("--fast-3-2 requires exactly 3 functions and --p 2");
  }
  const TubeSolution s = o.fast_3_2 ? optimize_3_2(fs) : optimize(fs, o.p);
  json out = {{"epsilonStar", s.epsilon_star}, {"p", s.p}, {"witness", io::points_to_json(s.witness)}};
  if (s.diagnostic) {
    out["diagnostic"] = *s.diagnostic;
    std::cerr << "warning: " << *s.diagnostic << '\n';
  }
  emit(out.dump(), o.out);
  return kOk;
}

int cmd_coverage(const Options& o) {
  const FunctionSet fs = io::load_function_set(o.input).functions;
  const CoverageResult c = max_coverage(fs, o.epsilon);
  json out = {{"pStar", c.p_star},
              {"fraction", round_to(static_cast<double>(c.p_star) / fs.size(), 3)},
              {"witness", io::points_to_json(c.witness)}};
  emit(out.dump(), o.out);
  return kOk;
}

melody::PreparedCorpus prepare_style(const std::string& style,
                                     const std::vector<melody::Transcription>& ts, const Options& o) {
  const std::string ref = pick_reference(style, ts, o.refs, o.seed);
  melody::CorpusOptions copt;
  copt.curve = curve_options(o.mode);
  melody::PreparedCorpus pc = melody::prepare_corpus(ts, ref, copt);
  for (const std::string& d : pc.diagnostics) std::cerr << "note: " << d << '\n';
  return pc;
}

int cmd_prepare(const Options& o) {
  const io::Corpus corpus = io::load_corpus(o.input);
  const melody::PreparedCorpus pc = prepare_style(corpus.style, corpus.transcriptions, o);
  emit(io::function_set_to_json(pc.functions, pc.style, pc.phrases).dump(), o.out);
  return kOk;
}

int cmd_analyze(const Options& o) {
  std::map<std::string, std::vector<melody::Transcription>> by_style;
  std::vector<analysis::StyleInput> styles;
  for (const std::string& path : o.inputs) {
    if (!std::filesystem::is_directory(path)) {
      const json doc = io::read_json(path);
      if (doc.is_object() && doc.contains("functions")) {
        io::FunctionSetDocument fsd = io::parse_function_set(doc);
        const std::string style = fsd.style.value_or(std::filesystem::path(path).stem().string());
        styles.push_back({style, std::move(fsd.functions), std::move(fsd.phrases)});
        continue;
      }
      for (auto& t : io::parse_corpus(doc).transcriptions) by_style[t.style].push_back(std::move(t));
      continue;
    }
    for (auto& t : io::load_corpus(path).transcriptions) by_style[t.style].push_back(std::move(t));
  }
  for (const auto& [style, ts] : by_style) {
    if (o.per_phrase) {
      for (const auto& t : ts) {
        if (t.phrases.empty()) {
          throw UsageError("--per-phrase: transcription " + t.id + " has no phrase annotations");
        }
      }
    }
    melody::PreparedCorpus pc = prepare_style(style, ts, o);
    styles.push_back({style, std::move(pc.functions), std::move(pc.phrases)});
  }
  if (o.per_phrase) {
    for (const auto& s : styles) {
      if (s.phrases.empty()) throw UsageError("--per-phrase: style " + s.style + " has no phrases");
    }
  }
  analysis::AnalysisOptions aopt;
  aopt.per_phrase = o.per_phrase;
  const analysis::AnalysisReport report = analysis::analyze(std::move(styles), o.epsilons, aopt);
  emit(analysis::to_csv(report, o.decimals), o.out);
  return kOk;
}

int cmd_plot(const Options& o) {
  const FunctionSet fs = io::load_function_set(o.input).functions;
  std::optional<PolyFunc> witness;
  int p = o.p;
  if (p > 0) {
    DecisionOutcome d = decide(fs, o.epsilon, p);
    if (!d.feasible) {
      std::cerr << "no tube of half-width " << o.epsilon << " covers " << p << " functions\n";
      return kNegative;
    }
    witness = std::move(d.witness);
  } else {
    CoverageResult c = max_coverage(fs, o.epsilon);
    p = c.p_star;
    witness = std::move(c.witness);
  }
  plot::PlotLabels labels;
  labels.title = o.title.empty() ? "n=" + std::to_string(fs.size()) + ", p=" + std::to_string(p) +
                                       ", eps=" + analysis::epsilon_label(o.epsilon).substr(4)
                                 : o.title;
  emit(plot::render_svg(fs, *witness, o.epsilon, labels), o.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spantube: minimal-width spanning tubes over melody contours"};
  app.require_subcommand(1);
  Options o;
  unsigned long seed_value = 0;

  auto* decide_cmd = app.add_subcommand("decide", "Decide whether an epsilon-tube covers p functions");
  decide_cmd->add_option("-i,--input", o.input, "Function set JSON")->required()->check(CLI::ExistingFile);
  decide_cmd->add_option("-e,--epsilon", o.epsilon, "Tube half-width")->required();
  decide_cmd->add_option("--p", o.p, "Functions to cover")->required();
  decide_cmd->add_option("-o,--out", o.out, "Output file (default stdout)");

  auto* optimize_cmd = app.add_subcommand("optimize", "Minimal half-width covering p functions");
  optimize_cmd->add_option("-i,--input", o.input, "Function set JSON")->required()->check(CLI::ExistingFile);
  optimize_cmd->add_option("--p", o.p, "Functions to cover")->required();
  optimize_cmd->add_flag("--fast-3-2", o.fast_3_2, "Linear-time solver (n = 3, p = 2 only)");
  optimize_cmd->add_option("-o,--out", o.out, "Output file (default stdout)");

  auto* coverage_cmd = app.add_subcommand("coverage", "Largest number of functions one tube can cover");
  coverage_cmd->add_option("-i,--input", o.input, "Function set JSON")->required()->check(CLI::ExistingFile);
  coverage_cmd->add_option("-e,--epsilon", o.epsilon, "Tube half-width")->required();
  coverage_cmd->add_option("-o,--out", o.out, "Output file (default stdout)");

  auto* prepare_cmd = app.add_subcommand("prepare", "Turn a note corpus into a function set");
  prepare_cmd->add_option("-i,--input", o.input, "Corpus JSON or directory")->required()->check(CLI::ExistingPath);
  prepare_cmd->add_option("--ref", o.refs, "Reference transcription id");
  prepare_cmd->add_option("--mode", o.mode, "Contour mode: step or linear");
  prepare_cmd->add_option("--seed", seed_value, "Seed for a random reference when --ref is absent");
  prepare_cmd->add_option("-o,--out", o.out, "Output file (default stdout)");

  auto* analyze_cmd = app.add_subcommand("analyze", "Enclosed fractions per style (and phrase)");
  analyze_cmd->add_option("-i,--input", o.inputs, "Corpus JSON/directory or prepared function set")
      ->required()
      ->check(CLI::ExistingPath);
  analyze_cmd->add_option("-e,--epsilon", o.epsilons, "Tube half-width (repeatable)")->required();
  analyze_cmd->add_option("--ref", o.refs, "Reference id, or STYLE=ID (repeatable)");
  analyze_cmd->add_option("--mode", o.mode, "Contour mode: step or linear");
  analyze_cmd->add_option("--seed", seed_value, "Seed for random references");
  analyze_cmd->add_flag("--per-phrase", o.per_phrase, "One row per annotated phrase");
  analyze_cmd->add_option("--decimals", o.decimals, "Digits after the decimal point in fractions")->check(CLI::Range(0, 12));
  analyze_cmd->add_option("-o,--out", o.out, "Output CSV (default stdout)");

  auto* plot_cmd = app.add_subcommand("plot", "Render the tube over the input functions as SVG");
  plot_cmd->add_option("-i,--input", o.input, "Function set JSON")->required()->check(CLI::ExistingFile);
  plot_cmd->add_option("-e,--epsilon", o.epsilon, "Tube half-width")->required();
  plot_cmd->add_option("--p", o.p, "Functions to cover (default: the largest coverable count)");
  plot_cmd->add_option("--title", o.title, "Figure title");
  plot_cmd->add_option("-o,--out", o.out, "Output SVG (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  for (auto* cmd : {prepare_cmd, analyze_cmd}) {
    if (cmd->count("--seed") > 0) o.seed = seed_value;
  }

  try {
    if (*decide_cmd) return cmd_decide(o);
    if (*optimize_cmd) return cmd_optimize(o);
    if (*coverage_cmd) return cmd_coverage(o);
    if (*prepare_cmd) return cmd_prepare(o);
    if (*analyze_cmd) return cmd_analyze(o);
    if (*plot_cmd) return cmd_plot(o);
  } catch (const io::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
  }
  return kInputError;
}
