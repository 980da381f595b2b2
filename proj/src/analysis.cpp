#include "spantube/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "spantube/optimizer.h"

namespace spantube::analysis {

namespace {

AnalysisRow solve_row(const FunctionSet& fs, const std::vector<double>& epsilons, std::string style,
                      std::optional<std::string> phrase, bool with_epsilon_star) {
  AnalysisRow row;
  row.style = std::move(style);
  row.phrase = std::move(phrase);
  row.functions = static_cast<int>(fs.size());
  for (double eps : epsilons) {
    const int p = max_coverage(fs, eps).p_star;
    row.p_star.push_back(p);
    row.fractions.push_back(static_cast<double>(p) / row.functions);
  }
  for (std::size_t k = 1; k < row.fractions.size(); ++k) {
    if (epsilons[k] >= epsilons[k - 1] && row.fractions[k] < row.fractions[k - 1]) {
      throw std::logic_error("enclosed fraction decreased with epsilon for style " + row.style);
    }
  }
  if (with_epsilon_star) {
    for (int p = 1; p <= row.functions; ++p) row.epsilon_star.push_back(optimize(fs, p).epsilon_star);
  }
  return row;
}

}  // namespace

AnalysisReport analyze(std::vector<StyleInput> styles, std::vector<double> epsilons,
                       const AnalysisOptions& options) {
  if (epsilons.empty()) throw std::invalid_argument("at least one epsilon is required");
  for (double e : epsilons) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw std::invalid_argument("epsilon values must be >= 0");
  }
  std::stable_sort(styles.begin(), styles.end(),
                   [](const StyleInput& l, const StyleInput& r) { return l.style < r.style; });
  AnalysisReport report;
  report.epsilons = epsilons;
  report.per_phrase = options.per_phrase;
  for (const StyleInput& s : styles) {
    if (!options.per_phrase) {
      report.rows.push_back(solve_row(s.functions, epsilons, s.style, std::nullopt, options.with_epsilon_star));
      continue;
    }
    if (s.phrases.empty()) {
      throw std::invalid_argument("style " + s.style + " has no phrase annotations");
    }
    for (const melody::Phrase& ph : s.phrases) {
      const Domain d = s.functions.domain();
      const double lo = std::max(ph.start, d.a);
      const double hi = std::min(ph.end, d.b);
      report.rows.push_back(solve_row(clip(s.functions, lo, hi), epsilons, s.style, ph.label,
                                      options.with_epsilon_star));
    }
  }
  return report;
}

std::string epsilon_label(double epsilon) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "eps_%g", epsilon);
  return buf;
}

std::string to_csv(const AnalysisReport& report, int decimals) {
  std::ostringstream out;
  out << "style";
  if (report.per_phrase) out << ",phrase";
  for (double e : report.epsilons) out << ',' << epsilon_label(e);
  out << '\n';
  char buf[64];
  for (const AnalysisRow& row : report.rows) {
    out << row.style;
    if (report.per_phrase) out << ',' << row.phrase.value_or("");
    for (double f : row.fractions) {
      std::snprintf(buf, sizeof buf, "%.*f", decimals, f);
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace spantube::analysis
