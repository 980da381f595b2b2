#pragma once

// Symbolic melody preprocessing: relative time, key normalization by
// pitch-histogram correlation, Needleman-Wunsch alignment to a reference and
// conversion to polylines on [0, 1].

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spantube/polyline.h"

namespace spantube::melody {

struct Note {
  double onset = 0.0;     // seconds, or relative time after normalization
  double duration = 0.0;  // > 0
  double pitch = 60.0;    // MIDI number in [0, 127]
};

struct Phrase {
  double start = 0.0;
  double end = 1.0;
  std::string label;
};

struct Transcription {
  std::string id;
  std::string style;
  std::vector<Note> notes;
  std::vector<Phrase> phrases;
};

/// Throws std::invalid_argument naming the transcription and note index.
void validate(const Transcription& t);

using PitchHistogram = std::map<int, double>;

/// Affine map of onsets: first onset -> 0, last onset -> 1. Durations scale
/// by the same factor. Needs at least two distinct onsets.
Transcription normalize_time(const Transcription& t);

/// One count per note at round(pitch); with `weight_by_duration` the count
/// is the note duration instead.
PitchHistogram pitch_histogram(const Transcription& t, bool weight_by_duration = false);

struct KeyShift {
  int shift = 0;
  double correlation = 0.0;
  /// True when a histogram had a single pitch and the modes were aligned
  /// instead of correlating.
  bool mode_fallback = false;
};

/// Integer shift s in [-max_shift, max_shift] maximizing the Pearson
/// correlation of t's histogram moved by s against ref's. Ties prefer the
/// smaller |s|, then the smaller s.
KeyShift estimate_key_shift(const Transcription& t, const Transcription& ref, int max_shift = 24,
                            bool weight_by_duration = false);

/// Adds `semitones` to every pitch.
Transcription transpose(const Transcription& t, int semitones);

struct Scoring {
  /// Substitution score is -mismatch_weight * |pitch_t - pitch_ref|.
  double mismatch_weight = 1.0;
  double gap = -2.0;
};

struct AlignmentResult {
  /// (target index, reference index), strictly increasing in both.
  std::vector<std::pair<int, int>> matched;
  /// Target indices left unmatched.
  std::vector<int> gaps;
  /// Relative onset of every target note after alignment.
  std::vector<double> remapped_onsets;
  double score = 0.0;
};

/// Global alignment of target against reference. Matched notes take the
/// reference onset; the rest are interpolated between matched neighbours.
AlignmentResult align(const Transcription& t, const Transcription& ref, const Scoring& scoring = {});

/// Target transcription with onsets replaced by the aligned ones.
Transcription apply_alignment(const Transcription& t, const AlignmentResult& a);

enum class CurveMode { Step, Linear };

struct CurveOptions {
  CurveMode mode = CurveMode::Step;
  /// Ramp width as a fraction of the median inter-onset gap (step mode).
  double ramp_fraction = 0.01;
};

/// Contour polyline on [0, 1] of a time-normalized transcription.
PolyFunc to_polyfunc(const Transcription& t, const CurveOptions& options = {});

struct CorpusOptions {
  CurveOptions curve;
  Scoring scoring;
  int max_shift = 24;
  bool weight_by_duration = false;
};

struct PreparedCorpus {
  FunctionSet functions;
  std::string style;
  std::string reference_id;
  std::vector<int> key_shifts;  // applied shift per transcription, input order
  /// Phrase boundaries of the reference, the common time axis after alignment.
  std::vector<Phrase> phrases;
  std::vector<std::string> diagnostics;
};

/// Normalizes, transposes and aligns every transcription against the one
/// named `reference_id` and returns the contours as one function set on [0, 1].
PreparedCorpus prepare_corpus(const std::vector<Transcription>& corpus,
                              const std::string& reference_id, const CorpusOptions& options = {});

}  // namespace spantube::melody
