#pragma once

// Corpus variation analysis: for fixed tube half-widths, the largest fraction
// of performances one tube can enclose, per style and optionally per phrase.

#include <optional>
#include <string>
#include <vector>

#include "spantube/melody.h"
#include "spantube/polyline.h"

namespace spantube::analysis {

struct StyleInput {
  std::string style;
  FunctionSet functions;
  /// Phrase boundaries on the common [0, 1] axis; needed for per-phrase rows.
  std::vector<melody::Phrase> phrases;
};

struct AnalysisRow {
  std::string style;
  std::optional<std::string> phrase;
  int functions = 0;
  std::vector<int> p_star;        // one per epsilon
  std::vector<double> fractions;  // p_star / functions
  /// Optimal half-width for p = 1..n, when requested.
  std::vector<double> epsilon_star;
};

struct AnalysisReport {
  std::vector<double> epsilons;
  bool per_phrase = false;
  std::vector<AnalysisRow> rows;
};

struct AnalysisOptions {
  bool per_phrase = false;
  bool with_epsilon_star = false;
};

/// Rows are sorted by style, then phrase order. Throws std::invalid_argument
/// when per-phrase rows are requested for a style without phrases, and
/// std::logic_error if a row's fractions decrease with epsilon.
AnalysisReport analyze(std::vector<StyleInput> styles, std::vector<double> epsilons,
                       const AnalysisOptions& options = {});

/// Column label for one half-width, e.g. 1 -> "eps_1", 2.5 -> "eps_2.5".
std::string epsilon_label(double epsilon);

/// Header `style[,phrase],eps_<v1>,...`; fractions with `decimals` digits.
std::string to_csv(const AnalysisReport& report, int decimals = 3);

}  // namespace spantube::analysis
