#include "spantube/melody.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "spantube/tolerance.h"

namespace spantube::melody {

namespace {

constexpr double kMinOnsetGap = 1e-6;

std::string where(const Transcription& t) {
  return "transcription " + (t.id.empty() ? std::string("<unnamed>") : t.id);
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int mode_pitch(const PitchHistogram& h) {
  int best = h.begin()->first;
  double count = h.begin()->second;
  for (const auto& [pitch, c] : h) {
    if (c > count) {
      best = pitch;
      count = c;
    }
  }
  return best;
}

// Pearson correlation of two equally long vectors; nullopt for zero variance.
std::optional<double> pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ma += a[k];
    mb += b[k];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sab += (a[k] - ma) * (b[k] - mb);
    saa += (a[k] - ma) * (a[k] - ma);
    sbb += (b[k] - mb) * (b[k] - mb);
  }
  if (saa <= 0.0 || sbb <= 0.0) return std::nullopt;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

void validate(const Transcription& t) {
  const double tau = tolerance();
  if (t.notes.empty()) throw std::invalid_argument(where(t) + ": has no notes");
  for (std::size_t k = 0; k < t.notes.size(); ++k) {
    const Note& n = t.notes[k];
    std::ostringstream msg;
    msg << where(t) << ": note " << k;
    if (!std::isfinite(n.onset) || !std::isfinite(n.duration) || !std::isfinite(n.pitch)) {
      throw std::invalid_argument(msg.str() + " has a non-finite field");
    }
    if (n.onset < 0.0) throw std::invalid_argument(msg.str() + " has a negative onset");
    if (!(n.duration > 0.0)) throw std::invalid_argument(msg.str() + " has non-positive duration");
    if (n.pitch < 0.0 || n.pitch > 127.0) {
      throw std::invalid_argument(msg.str() + " has pitch outside [0, 127]");
    }
    if (k > 0 && !(n.onset - t.notes[k - 1].onset > tau)) {
      throw std::invalid_argument(msg.str() + " is not strictly after the previous onset");
    }
  }
  for (std::size_t k = 0; k < t.phrases.size(); ++k) {
    const Phrase& ph = t.phrases[k];
    std::ostringstream msg;
    msg << where(t) << ": phrase " << k << " (" << ph.label << ")";
    if (!(ph.start >= 0.0 && ph.end <= 1.0 && ph.start < ph.end)) {
      throw std::invalid_argument(msg.str() + " must satisfy 0 <= start < end <= 1");
    }
    if (k > 0 && ph.start < t.phrases[k - 1].end - tau) {
      throw std::invalid_argument(msg.str() + " overlaps or precedes the previous phrase");
    }
  }
}

Transcription normalize_time(const Transcription& t) {
  if (t.notes.size() < 2) {
    throw std::invalid_argument(where(t) + ": needs at least 2 notes to normalize time");
  }
  const double first = t.notes.front().onset;
  const double span = t.notes.back().onset - first;
  if (!(span > 0.0)) throw std::invalid_argument(where(t) + ": all onsets coincide");
  Transcription out = t;
  for (Note& n : out.notes) {
    n.onset = (n.onset - first) / span;
    n.duration /= span;
  }
  out.notes.front().onset = 0.0;
  out.notes.back().onset = 1.0;
  return out;
}

PitchHistogram pitch_histogram(const Transcription& t, bool weight_by_duration) {
  PitchHistogram h;
  for (const Note& n : t.notes) {
    h[static_cast<int>(std::lround(n.pitch))] += weight_by_duration ? n.duration : 1.0;
  }
  return h;
}

KeyShift estimate_key_shift(const Transcription& t, const Transcription& ref, int max_shift,
                            bool weight_by_duration) {
  if (max_shift < 0) throw std::invalid_argument("max_shift must be >= 0");
  const PitchHistogram ht = pitch_histogram(t, weight_by_duration);
  const PitchHistogram hr = pitch_histogram(ref, weight_by_duration);
  if (ht.empty() || hr.empty()) throw std::invalid_argument("empty pitch histogram");

  auto mode_alignment = [&]() {
    const int s = std::clamp(mode_pitch(hr) - mode_pitch(ht), -max_shift, max_shift);
    return KeyShift{s, 0.0, true};
  };
  if (ht.size() == 1 || hr.size() == 1) return mode_alignment();

  std::optional<KeyShift> best;
  std::vector<double> a, b;
  for (int s = -max_shift; s <= max_shift; ++s) {
    std::set<int> support;
    for (const auto& [pitch, c] : ht) support.insert(pitch + s);
    for (const auto& [pitch, c] : hr) support.insert(pitch);
    a.clear();
    b.clear();
    for (int pitch : support) {
      auto it = ht.find(pitch - s);
      a.push_back(it == ht.end() ? 0.0 : it->second);
      auto jt = hr.find(pitch);
      b.push_back(jt == hr.end() ? 0.0 : jt->second);
    }
    const std::optional<double> r = pearson(a, b);
    if (!r) continue;
    constexpr double kTie = 1e-12;
    bool better = !best || *r > best->correlation + kTie;
    if (!better && std::abs(*r - best->correlation) <= kTie) {
      better = std::abs(s) < std::abs(best->shift) ||
               (std::abs(s) == std::abs(best->shift) && s < best->shift);
    }
    if (better) best = KeyShift{s, *r, false};
  }
  if (!best) return mode_alignment();
  return *best;
}

Transcription transpose(const Transcription& t, int semitones) {
  Transcription out = t;
  for (Note& n : out.notes) n.pitch += semitones;
  return out;
}

AlignmentResult align(const Transcription& t, const Transcription& ref, const Scoring& scoring) {
  const std::size_t nt = t.notes.size();
  const std::size_t nr = ref.notes.size();
  const std::size_t cols = nr + 1;
  std::vector<double> score((nt + 1) * cols);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return score[i * cols + j]; };
  auto sub = [&](std::size_t i, std::size_t j) {
    return -scoring.mismatch_weight * std::abs(t.notes[i].pitch - ref.notes[j].pitch);
  };
  for (std::size_t i = 0; i <= nt; ++i) at(i, 0) = static_cast<double>(i) * scoring.gap;
  for (std::size_t j = 0; j <= nr; ++j) at(0, j) = static_cast<double>(j) * scoring.gap;
  for (std::size_t i = 1; i <= nt; ++i) {
    for (std::size_t j = 1; j <= nr; ++j) {
      at(i, j) = std::max({at(i - 1, j - 1) + sub(i - 1, j - 1), at(i - 1, j) + scoring.gap,
                           at(i, j - 1) + scoring.gap});
    }
  }

  AlignmentResult result;
  result.score = at(nt, nr);
  constexpr double kTie = 1e-12;
  std::size_t i = nt, j = nr;
  std::vector<int> match_of(nt, -1);
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && std::abs(at(i, j) - (at(i - 1, j - 1) + sub(i - 1, j - 1))) <= kTie) {
      match_of[i - 1] = static_cast<int>(j - 1);
      --i;
      --j;
    } else if (i > 0 && std::abs(at(i, j) - (at(i - 1, j) + scoring.gap)) <= kTie) {
      --i;
    } else {
      --j;
    }
  }

  std::vector<int> anchors;  // matched target indices, ascending
  for (std::size_t k = 0; k < nt; ++k) {
    if (match_of[k] >= 0) {
      result.matched.emplace_back(static_cast<int>(k), match_of[k]);
      anchors.push_back(static_cast<int>(k));
    } else {
      result.gaps.push_back(static_cast<int>(k));
    }
  }

  std::vector<double>& r = result.remapped_onsets;
  r.resize(nt);
  auto onset = [&](int k) { return t.notes[static_cast<std::size_t>(k)].onset; };
  auto target_onset = [&](int k) {
    return ref.notes[static_cast<std::size_t>(match_of[static_cast<std::size_t>(k)])].onset;
  };
  std::size_t next_anchor = 0;
  for (std::size_t k = 0; k < nt; ++k) {
    const int kk = static_cast<int>(k);
    if (match_of[k] >= 0) {
      r[k] = target_onset(kk);
      ++next_anchor;
    } else if (anchors.empty()) {
      r[k] = onset(kk);
    } else if (next_anchor == 0 || next_anchor == anchors.size()) {
      // Outside the matched span: shift by the nearest match, clamped.
      const int a = next_anchor == 0 ? anchors.front() : anchors.back();
      r[k] = std::clamp(target_onset(a) + onset(kk) - onset(a), 0.0, 1.0);
    } else {
      const int a = anchors[next_anchor - 1];
      const int b = anchors[next_anchor];
      r[k] = target_onset(a) +
             (target_onset(b) - target_onset(a)) * (onset(kk) - onset(a)) / (onset(b) - onset(a));
    }
  }
  for (std::size_t k = 1; k < nt; ++k) r[k] = std::max(r[k], r[k - 1] + kMinOnsetGap);
  if (nt > 0 && r.back() > 1.0) {
    r.back() = 1.0;
    for (std::size_t k = nt - 1; k > 0; --k) r[k - 1] = std::min(r[k - 1], r[k] - kMinOnsetGap);
  }
  return result;
}

Transcription apply_alignment(const Transcription& t, const AlignmentResult& a) {
  if (a.remapped_onsets.size() != t.notes.size()) {
    throw std::invalid_argument(where(t) + ": alignment does not match the note count");
  }
  Transcription out = t;
  for (std::size_t k = 0; k < out.notes.size(); ++k) out.notes[k].onset = a.remapped_onsets[k];
  return out;
}

PolyFunc to_polyfunc(const Transcription& t, const CurveOptions& options) {
  const std::vector<Note>& notes = t.notes;
  if (notes.empty()) throw std::invalid_argument(where(t) + ": has no notes");
  std::vector<Point> pts;
  pts.reserve(notes.size() * 2 + 2);
  if (notes.front().onset > 0.0) pts.push_back({0.0, notes.front().pitch});

  if (options.mode == CurveMode::Linear) {
    for (const Note& n : notes) pts.push_back({n.onset, n.pitch});
  } else {
    std::vector<double> gaps;
    for (std::size_t k = 1; k < notes.size(); ++k) gaps.push_back(notes[k].onset - notes[k - 1].onset);
    const double ramp = gaps.empty() ? 0.0 : options.ramp_fraction * median_of(gaps);
    pts.push_back({notes.front().onset, notes.front().pitch});
    for (std::size_t k = 1; k < notes.size(); ++k) {
      if (notes[k].pitch == notes[k - 1].pitch) continue;
      const double last_x = pts.back().x;
      double ramp_start = notes[k].onset - ramp;
      if (!(ramp_start > last_x)) ramp_start = last_x + 0.5 * (notes[k].onset - last_x);
      pts.push_back({ramp_start, notes[k - 1].pitch});
      pts.push_back({notes[k].onset, notes[k].pitch});
    }
  }
  if (pts.back().x < 1.0) pts.push_back({1.0, notes.back().pitch});
  return PolyFunc(std::move(pts), t.id);
}

PreparedCorpus prepare_corpus(const std::vector<Transcription>& corpus,
                              const std::string& reference_id, const CorpusOptions& options) {
  auto ref_it = std::find_if(corpus.begin(), corpus.end(),
                             [&](const Transcription& t) { return t.id == reference_id; });
  if (ref_it == corpus.end()) {
    throw std::invalid_argument("reference transcription '" + reference_id + "' not found");
  }
  for (const Transcription& t : corpus) {
    if (!t.style.empty() && !ref_it->style.empty() && t.style != ref_it->style) {
      throw std::invalid_argument(where(t) + ": style '" + t.style + "' differs from reference style '" +
                                  ref_it->style + "'");
    }
  }
  const Transcription ref = normalize_time(*ref_it);

  std::vector<PolyFunc> curves;
  std::vector<int> shifts;
  std::vector<std::string> diagnostics;
  for (const Transcription& raw : corpus) {
    if (&raw == &*ref_it) {
      shifts.push_back(0);
      curves.push_back(to_polyfunc(ref, options.curve));
      continue;
    }
    const Transcription t = normalize_time(raw);
    const KeyShift ks = estimate_key_shift(t, ref, options.max_shift, options.weight_by_duration);
    if (ks.mode_fallback) {
      diagnostics.push_back(where(raw) +
                            ": single-pitch histogram, key shift taken from the pitch modes");
    }
    shifts.push_back(ks.shift);
    const Transcription moved = transpose(t, ks.shift);
    const AlignmentResult a = align(moved, ref, options.scoring);
    curves.push_back(to_polyfunc(apply_alignment(moved, a), options.curve));
  }
  PreparedCorpus out{FunctionSet(std::move(curves), Domain{0.0, 1.0}),
                     ref.style,
                     ref.id,
                     std::move(shifts),
                     ref.phrases,
                     std::move(diagnostics)};
  return out;
}

}  // namespace spantube::melody
