// spantube-synth: seeded synthetic melody corpora for experiments and tests.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spantube/io.h"
#include "spantube/synthetic.h"

int main(int argc, char** argv) {
  spantube::synthetic::StyleSpec spec;
  std::string noise = "gaussian";
  bool per_performance = false;
  bool continuous = false;
  std::uint64_t seed = 1;
  std::string out;

  CLI::App app{"Write a synthetic corpus: one template melody and noisy performances of it"};
  app.add_option("--style", spec.style, "Style name")->required();
  app.add_option("--sigma", spec.sigma, "Pitch noise amplitude in semitones")->check(CLI::NonNegativeNumber);
  app.add_option("--noise", noise, "uniform or gaussian")->check(CLI::IsMember({"uniform", "gaussian"}));
  app.add_option("--variants", spec.variants, "Performances")->check(CLI::PositiveNumber);
  app.add_option("--notes", spec.notes, "Notes per melody")->check(CLI::Range(2, 100000));
  app.add_option("--phrases", spec.phrases, "Equal-length phrases")->check(CLI::Range(0, 1000));
  app.add_option("--outliers", spec.octave_outliers, "Performances with an octave-shifted middle third");
  app.add_flag("--per-performance", per_performance, "One pitch offset per performance instead of per note");
  app.add_flag("--continuous", continuous, "Keep fractional pitch offsets");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("-o,--out", out, "Output file (default stdout)");
  CLI11_PARSE(app, argc, argv);

  spec.noise = noise == "uniform" ? spantube::synthetic::Noise::Uniform : spantube::synthetic::Noise::Gaussian;
  spec.per_note = !per_performance;
  spec.round_pitch = !continuous;
  try {
    const std::string text = spantube::io::corpus_to_json(spantube::synthetic::make_corpus(spec, seed)).dump(1) + "\n";
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream(out) << text;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
