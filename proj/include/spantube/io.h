#pragma once

// JSON file formats.
//
// Function set:
//   {"domain":[a,b],"functions":[{"id":"...","points":[[x,y],...]},...]}
// optionally carrying "style" and "phrases":[[start,end,"label"],...] when
// written by corpus preparation.
//
// Corpus:
//   {"style":"...","transcriptions":[{"id":"...","notes":[[onset_s,duration_s,pitch],...],
//                                     "phrases":[[start,end,"label"],...]},...]}
// or a directory of one-transcription-per-file JSON documents.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spantube/melody.h"
#include "spantube/polyline.h"

namespace spantube::io {

/// Malformed file or violated invariant; the message names the offending
/// function or transcription id and index.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FunctionSetDocument {
  FunctionSet functions;
  std::optional<std::string> style;
  std::vector<melody::Phrase> phrases;
};

FunctionSetDocument parse_function_set(const nlohmann::json& doc);
FunctionSetDocument load_function_set(const std::filesystem::path& path);

nlohmann::json points_to_json(const PolyFunc& f);
nlohmann::json function_set_to_json(const FunctionSet& fs, const std::optional<std::string>& style = {},
                                    const std::vector<melody::Phrase>& phrases = {});

struct Corpus {
  std::string style;
  std::vector<melody::Transcription> transcriptions;
};

Corpus parse_corpus(const nlohmann::json& doc);
/// A corpus file or a directory of single-transcription files (sorted by name).
Corpus load_corpus(const std::filesystem::path& path);
nlohmann::json corpus_to_json(const Corpus& corpus);

/// Parses JSON text from a file, mapping I/O and syntax failures to InputError.
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace spantube::io
