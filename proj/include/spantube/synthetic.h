#pragma once

// Seeded synthetic melody corpora: one template melody per style and noisy
// performances of it.

#include <cstdint>
#include <string>
#include <vector>

#include "spantube/io.h"
#include "spantube/melody.h"

namespace spantube::synthetic {

enum class Noise { Uniform, Gaussian };

struct StyleSpec {
  std::string style = "style";
  /// Uniform: pitch offsets in [-sigma, sigma]. Gaussian: standard deviation.
  double sigma = 1.0;
  Noise noise = Noise::Gaussian;
  /// false: one offset per performance instead of one per note.
  bool per_note = true;
  int variants = 10;
  int notes = 24;
  /// Onset jitter as a fraction of the template inter-onset gap.
  double timing_jitter = 0.2;
  /// Tempo of each performance varies by up to this factor around 1.
  double tempo_spread = 0.15;
  bool round_pitch = true;
  int phrases = 3;
  /// Number of performances whose middle third is sung an octave higher.
  int octave_outliers = 0;
};

/// Template melody: a stepwise walk on a major scale around MIDI 64.
std::vector<melody::Note> make_template(int notes, std::uint64_t seed);

io::Corpus make_corpus(const StyleSpec& spec, std::uint64_t seed);

}  // namespace spantube::synthetic
