#include "spantube/synthetic.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace spantube::synthetic {

namespace {

constexpr int kScale[] = {0, 2, 4, 5, 7, 9, 11};

int scale_pitch(int degree) {
  const int octave = degree >= 0 ? degree / 7 : -((-degree + 6) / 7);
  const int step = degree - octave * 7;
  return 60 + 12 * octave + kScale[step];
}

}  // namespace

std::vector<melody::Note> make_template(int notes, std::uint64_t seed) {
  if (notes < 2) throw std::invalid_argument("a template needs at least 2 notes");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> step(-2, 2);
  std::uniform_real_distribution<double> gap(0.25, 0.75);
  std::vector<melody::Note> out;
  int degree = 2;  // E4
  double t = 0.0;
  for (int k = 0; k < notes; ++k) {
    const double g = gap(rng);
    out.push_back({t, 0.9 * g, static_cast<double>(scale_pitch(degree))});
    t += g;
    degree = std::clamp(degree + step(rng), -3, 9);
  }
  return out;
}

io::Corpus make_corpus(const StyleSpec& spec, std::uint64_t seed) {
  if (spec.variants < 1) throw std::invalid_argument("need at least one variant");
  const std::vector<melody::Note> tmpl = make_template(spec.notes, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<melody::Phrase> phrases;
  for (int k = 0; k < spec.phrases; ++k) {
    phrases.push_back({static_cast<double>(k) / spec.phrases, static_cast<double>(k + 1) / spec.phrases,
                       "phrase" + std::to_string(k + 1)});
  }

  io::Corpus corpus;
  corpus.style = spec.style;
  const int n = static_cast<int>(tmpl.size());
  for (int v = 0; v < spec.variants; ++v) {
    melody::Transcription t;
    t.id = spec.style + "_" + std::to_string(v + 1);
    t.style = spec.style;
    t.phrases = phrases;
    const double tempo = 1.0 + spec.tempo_spread * uniform(rng);
    const bool outlier = v >= spec.variants - spec.octave_outliers;
    auto draw = [&] { return spec.noise == Noise::Uniform ? spec.sigma * uniform(rng) : spec.sigma * normal(rng); };
    const double shared = draw();
    double prev_onset = -1.0;
    for (int k = 0; k < n; ++k) {
      const double gap_here = k + 1 < n ? tmpl[k + 1].onset - tmpl[k].onset : tmpl[k].duration;
      double onset = tmpl[k].onset * tempo;
      if (k > 0 && k + 1 < n) onset += spec.timing_jitter * gap_here * tempo * 0.5 * uniform(rng);
      onset = std::max(onset, prev_onset + 1e-3);
      prev_onset = onset;
      double offset = spec.per_note ? draw() : shared;
      if (spec.round_pitch) offset = std::round(offset);
      double pitch = tmpl[k].pitch + offset;
      if (outlier && k >= n / 3 && k < 2 * n / 3) pitch += 12.0;
      t.notes.push_back({onset, tmpl[k].duration * tempo, std::clamp(pitch, 0.0, 127.0)});
    }
    corpus.transcriptions.push_back(std::move(t));
  }
  return corpus;
}

}  // namespace spantube::synthetic
