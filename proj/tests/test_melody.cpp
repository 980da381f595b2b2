#include <doctest.h>

#include <random>
#include <stdexcept>

#include "spantube/melody.h"
#include "spantube/optimizer.h"
#include "spantube/synthetic.h"

using namespace spantube;
using namespace spantube::melody;

namespace {

Transcription make(std::vector<double> onsets, std::vector<double> pitches, std::string id = "t") {
  Transcription t;
  t.id = std::move(id);
  t.style = "s";
  for (std::size_t k = 0; k < onsets.size(); ++k) t.notes.push_back({onsets[k], 0.1, pitches[k]});
  return t;
}

std::vector<double> onsets_of(const Transcription& t) {
  std::vector<double> out;
  for (const Note& n : t.notes) out.push_back(n.onset);
  return out;
}

Transcription random_melody(std::mt19937_64& rng, int notes, std::string id) {
  std::uniform_int_distribution<int> pitch(55, 75);
  std::uniform_real_distribution<double> gap(0.1, 0.6);
  Transcription t;
  t.id = std::move(id);
  double x = 0.0;
  for (int k = 0; k < notes; ++k) {
    t.notes.push_back({x, 0.1, static_cast<double>(pitch(rng))});
    x += gap(rng);
  }
  return t;
}

}  // namespace

TEST_CASE("normalize_time maps first onset to 0 and last to 1") {
  CHECK(onsets_of(normalize_time(make({0, 0.5, 1.0}, {60, 60, 60}))) == std::vector<double>{0, 0.5, 1.0});
  CHECK(onsets_of(normalize_time(make({2, 4, 6}, {60, 60, 60}))) == std::vector<double>{0, 0.5, 1.0});
  CHECK(onsets_of(normalize_time(make({1, 2, 5}, {60, 60, 60}))) == std::vector<double>{0, 0.25, 1.0});
  const Transcription scaled = normalize_time(make({2, 4, 6}, {60, 60, 60}));
  CHECK(scaled.notes[0].duration == doctest::Approx(0.025));
  CHECK_THROWS_AS(normalize_time(make({1}, {60})), std::invalid_argument);
}

TEST_CASE("normalize_time is idempotent") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Transcription once = normalize_time(random_melody(rng, 12, "m"));
    const Transcription twice = normalize_time(once);
    for (std::size_t k = 0; k < once.notes.size(); ++k) {
      CHECK(twice.notes[k].onset == doctest::Approx(once.notes[k].onset).epsilon(1e-12));
    }
  }
}

TEST_CASE("validate names the transcription and note") {
  Transcription t = make({0, 1}, {60, 200}, "bad_one");
  try {
    validate(t);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("bad_one") != std::string::npos);
  }
}

TEST_CASE("pitch histogram counts notes at rounded pitch") {
  const PitchHistogram h = pitch_histogram(make({0, 1, 2}, {60, 60, 62}));
  CHECK(h.at(60) == 2.0);
  CHECK(h.at(62) == 1.0);
  CHECK(h.size() == 2);
  const PitchHistogram r = pitch_histogram(make({0, 1}, {59.8, 59.8}));
  CHECK(r.at(60) == 2.0);
}

TEST_CASE("key shift of an identical melody is zero") {
  std::mt19937_64 rng(1);
  const Transcription t = random_melody(rng, 20, "a");
  CHECK(estimate_key_shift(t, t).shift == 0);
  CHECK(estimate_key_shift(transpose(t, 5), t).shift == -5);
  CHECK(estimate_key_shift(transpose(t, -12), t).shift == 12);
}

TEST_CASE("exact transposition recovery over the full range") {
  std::mt19937_64 rng(2);
  const Transcription ref = random_melody(rng, 30, "ref");
  for (int k = -24; k <= 24; ++k) {
    CHECK(estimate_key_shift(transpose(ref, k), ref).shift == -k);
  }
}

TEST_CASE("single-pitch histograms fall back to mode alignment") {
  const Transcription ref = make({0, 1, 2}, {60, 62, 64});
  const KeyShift k = estimate_key_shift(make({0, 1}, {65, 65}), ref);
  CHECK(k.mode_fallback);
  CHECK(k.shift == -5);
}

TEST_CASE("self-alignment is the identity") {
  std::mt19937_64 rng(3);
  const Transcription t = normalize_time(random_melody(rng, 15, "x"));
  const AlignmentResult a = align(t, t);
  CHECK(a.gaps.empty());
  REQUIRE(a.matched.size() == t.notes.size());
  for (std::size_t k = 0; k < a.matched.size(); ++k) {
    CHECK(a.matched[k].first == static_cast<int>(k));
    CHECK(a.matched[k].second == static_cast<int>(k));
    CHECK(a.remapped_onsets[k] == doctest::Approx(t.notes[k].onset));
  }
  CHECK(a.score == 0.0);
}

TEST_CASE("an inserted note is interpolated between its neighbours") {
  const Transcription ref = make({0, 0.5, 1}, {60, 62, 64});
  const Transcription t = make({0, 0.3, 0.6, 1}, {60, 61, 62, 64});
  const AlignmentResult a = align(t, ref);
  REQUIRE(a.gaps == std::vector<int>{1});
  CHECK(a.matched == std::vector<std::pair<int, int>>{{0, 0}, {2, 1}, {3, 2}});
  CHECK(a.remapped_onsets[1] > 0.0);
  CHECK(a.remapped_onsets[1] < 0.5);
  // Proportional position: 0.3 of the way from 0 to 0.6 maps to half of [0, 0.5].
  CHECK(a.remapped_onsets[1] == doctest::Approx(0.25));
  CHECK(a.remapped_onsets[2] == 0.5);
}

TEST_CASE("a deleted note leaves every surviving note matched") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Transcription ref = normalize_time(random_melody(rng, 12, "r"));
    Transcription t = ref;
    t.notes.erase(t.notes.begin() + 1 + trial % 10);
    const AlignmentResult a = align(normalize_time(t), ref);
    CHECK(a.gaps.empty());
    CHECK(a.matched.size() == t.notes.size());
    for (std::size_t k = 1; k < a.matched.size(); ++k) {
      CHECK(a.matched[k].first > a.matched[k - 1].first);
      CHECK(a.matched[k].second > a.matched[k - 1].second);
    }
  }
}

TEST_CASE("remapped onsets increase strictly and cover every note once") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Transcription ref = normalize_time(random_melody(rng, 10, "r"));
    const Transcription t = normalize_time(random_melody(rng, 14, "t"));
    const AlignmentResult a = align(t, ref);
    CHECK(a.matched.size() + a.gaps.size() == t.notes.size());
    for (std::size_t k = 1; k < a.remapped_onsets.size(); ++k) {
      CHECK(a.remapped_onsets[k] > a.remapped_onsets[k - 1]);
    }
    CHECK(a.remapped_onsets.front() >= 0.0);
    CHECK(a.remapped_onsets.back() <= 1.0);
  }
}

TEST_CASE("contour polylines") {
  const Transcription t = make({0, 0.5, 1.0}, {60, 62, 62});
  SUBCASE("linear") {
    const PolyFunc f = to_polyfunc(t, {CurveMode::Linear, 0.01});
    REQUIRE(f.points().size() == 3);
    CHECK(f.points()[1].x == 0.5);
    CHECK(f.points()[1].y == 62.0);
  }
  SUBCASE("step") {
    const PolyFunc f = to_polyfunc(t);
    const double w = 0.01 * 0.5;
    REQUIRE(f.points().size() == 4);
    CHECK(f.points()[0].x == 0.0);
    CHECK(f.points()[0].y == 60.0);
    CHECK(f.points()[1].x == doctest::Approx(0.5 - w));
    CHECK(f.points()[1].y == 60.0);
    CHECK(f.points()[2].x == 0.5);
    CHECK(f.points()[2].y == 62.0);
    CHECK(f.points()[3].x == 1.0);
    CHECK(f.points()[3].y == 62.0);
  }
  SUBCASE("single pitch is constant") {
    const PolyFunc f = to_polyfunc(make({0, 0.4, 1}, {64, 64, 64}));
    for (double x : {0.0, 0.2, 0.7, 1.0}) CHECK(f.evaluate(x) == 64.0);
  }
}

TEST_CASE("step contour holds each pitch between ramp and next onset") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Transcription t = normalize_time(random_melody(rng, 16, "m"));
    const PolyFunc f = to_polyfunc(t);
    std::vector<double> gaps;
    for (std::size_t k = 1; k < t.notes.size(); ++k) gaps.push_back(t.notes[k].onset - t.notes[k - 1].onset);
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    const double w = 0.01 * gaps[gaps.size() / 2];
    for (std::size_t k = 0; k + 1 < t.notes.size(); ++k) {
      const double lo = t.notes[k].onset, hi = t.notes[k + 1].onset - w;
      if (hi <= lo) continue;
      for (int s = 1; s < 10; ++s) {
        CHECK(f.evaluate(lo + (hi - lo) * s / 10.0) == doctest::Approx(t.notes[k].pitch));
      }
    }
  }
}

TEST_CASE("prepare_corpus of identical copies gives a zero-width tube") {
  std::mt19937_64 rng(9);
  Transcription base = random_melody(rng, 10, "a");
  base.style = "s";
  std::vector<Transcription> corpus;
  for (int k = 0; k < 4; ++k) {
    Transcription c = base;
    c.id = "copy" + std::to_string(k);
    corpus.push_back(c);
  }
  const PreparedCorpus pc = prepare_corpus(corpus, "copy0");
  CHECK(pc.functions.size() == 4);
  CHECK(pc.functions.domain().a == 0.0);
  CHECK(pc.functions.domain().b == 1.0);
  CHECK(optimize(pc.functions, 4).epsilon_star == doctest::Approx(0.0));
  CHECK_THROWS_AS(prepare_corpus(corpus, "missing"), std::invalid_argument);
}

TEST_CASE("prepare_corpus on synthetic corpora with per-performance offsets") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    synthetic::StyleSpec spec;
    spec.sigma = 1.0;
    spec.noise = synthetic::Noise::Uniform;
    spec.per_note = false;
    spec.round_pitch = false;
    const io::Corpus corpus = synthetic::make_corpus(spec, seed);
    const PreparedCorpus pc = prepare_corpus(corpus.transcriptions, corpus.transcriptions[0].id);
    CHECK(max_coverage(pc.functions, 1.0).p_star == spec.variants);

    spec.octave_outliers = 1;
    const io::Corpus with_outlier = synthetic::make_corpus(spec, seed);
    const PreparedCorpus po = prepare_corpus(with_outlier.transcriptions, with_outlier.transcriptions[0].id);
    CHECK(max_coverage(po.functions, 1.0).p_star == spec.variants - 1);
  }
}
