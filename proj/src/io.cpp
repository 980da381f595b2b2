#include "spantube/io.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace spantube::io {

using nlohmann::json;

namespace {

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + " must be a number");
  return j.get<double>();
}

std::vector<melody::Phrase> parse_phrases(const json& j, const std::string& owner) {
  std::vector<melody::Phrase> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw InputError(owner + ": \"phrases\" must be an array");
  for (std::size_t k = 0; k < j.size(); ++k) {
    const json& ph = j[k];
    const std::string what = owner + ": phrase " + std::to_string(k);
    if (!ph.is_array() || ph.size() < 2 || ph.size() > 3) {
      throw InputError(what + " must be [start, end, \"label\"]");
    }
    melody::Phrase p;
    p.start = number(ph[0], what + " start");
    p.end = number(ph[1], what + " end");
    if (ph.size() == 3) {
      if (!ph[2].is_string()) throw InputError(what + " label must be a string");
      p.label = ph[2].get<std::string>();
    } else {
      p.label = std::to_string(k + 1);
    }
    out.push_back(std::move(p));
  }
  return out;
}

json phrases_to_json(const std::vector<melody::Phrase>& phrases) {
  json arr = json::array();
  for (const melody::Phrase& p : phrases) arr.push_back(json::array({p.start, p.end, p.label}));
  return arr;
}

melody::Transcription parse_transcription(const json& j, std::size_t index,
                                          const std::string& default_style) {
  std::string owner = "transcription " + std::to_string(index);
  if (!j.is_object()) throw InputError(owner + " must be an object");
  melody::Transcription t;
  if (j.contains("id")) {
    if (!j["id"].is_string()) throw InputError(owner + ": \"id\" must be a string");
    t.id = j["id"].get<std::string>();
    owner = "transcription " + t.id;
  } else {
    t.id = "t" + std::to_string(index);
  }
  t.style = j.contains("style") && j["style"].is_string() ? j["style"].get<std::string>() : default_style;
  if (!j.contains("notes") || !j["notes"].is_array()) {
    throw InputError(owner + ": missing \"notes\" array");
  }
  const json& notes = j["notes"];
  for (std::size_t k = 0; k < notes.size(); ++k) {
    const std::string what = owner + ": note " + std::to_string(k);
    const json& n = notes[k];
    if (!n.is_array() || n.size() != 3) throw InputError(what + " must be [onset, duration, pitch]");
    t.notes.push_back({number(n[0], what + " onset"), number(n[1], what + " duration"),
                       number(n[2], what + " pitch")});
  }
  t.phrases = parse_phrases(j.value("phrases", json()), owner);
  try {
    melody::validate(t);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return t;
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

FunctionSetDocument parse_function_set(const json& doc) {
  if (!doc.is_object()) throw InputError("function set must be a JSON object");
  if (!doc.contains("domain") || !doc["domain"].is_array() || doc["domain"].size() != 2) {
    throw InputError("\"domain\" must be [a, b]");
  }
  const Domain domain{number(doc["domain"][0], "domain a"), number(doc["domain"][1], "domain b")};
  if (!(domain.a < domain.b)) throw InputError("domain must satisfy a < b");
  if (!doc.contains("functions") || !doc["functions"].is_array() || doc["functions"].empty()) {
    throw InputError("\"functions\" must be a non-empty array");
  }
  std::vector<PolyFunc> functions;
  const json& fns = doc["functions"];
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const json& f = fns[i];
    std::string id = "#" + std::to_string(i);
    if (f.is_object() && f.contains("id") && f["id"].is_string()) id = f["id"].get<std::string>();
    const std::string owner = "function " + id + " (index " + std::to_string(i) + ")";
    if (!f.is_object() || !f.contains("points") || !f["points"].is_array()) {
      throw InputError(owner + ": missing \"points\" array");
    }
    std::vector<Point> pts;
    const json& jp = f["points"];
    for (std::size_t k = 0; k < jp.size(); ++k) {
      const std::string what = owner + ": point " + std::to_string(k);
      if (!jp[k].is_array() || jp[k].size() != 2) throw InputError(what + " must be [x, y]");
      pts.push_back({number(jp[k][0], what + " x"), number(jp[k][1], what + " y")});
    }
    try {
      functions.emplace_back(std::move(pts), id);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string(e.what()) + " (index " + std::to_string(i) + ")");
    }
  }
  try {
    FunctionSetDocument out{FunctionSet(std::move(functions), domain), std::nullopt, {}};
    if (doc.contains("style") && doc["style"].is_string()) out.style = doc["style"].get<std::string>();
    out.phrases = parse_phrases(doc.value("phrases", json()), "function set");
    return out;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

FunctionSetDocument load_function_set(const std::filesystem::path& path) {
  return parse_function_set(read_json(path));
}

json points_to_json(const PolyFunc& f) {
  json arr = json::array();
  for (const Point& p : f.points()) arr.push_back(json::array({p.x, p.y}));
  return arr;
}

json function_set_to_json(const FunctionSet& fs, const std::optional<std::string>& style,
                          const std::vector<melody::Phrase>& phrases) {
  json doc;
  doc["domain"] = json::array({fs.domain().a, fs.domain().b});
  json fns = json::array();
  for (const PolyFunc& f : fs.functions()) {
    fns.push_back({{"id", f.id()}, {"points", points_to_json(f)}});
  }
  doc["functions"] = std::move(fns);
  if (style) doc["style"] = *style;
  if (!phrases.empty()) doc["phrases"] = phrases_to_json(phrases);
  return doc;
}

Corpus parse_corpus(const json& doc) {
  if (!doc.is_object()) throw InputError("corpus must be a JSON object");
  Corpus c;
  if (doc.contains("style")) {
    if (!doc["style"].is_string()) throw InputError("\"style\" must be a string");
    c.style = doc["style"].get<std::string>();
  }
  if (doc.contains("transcriptions")) {
    const json& ts = doc["transcriptions"];
    if (!ts.is_array() || ts.empty()) throw InputError("\"transcriptions\" must be a non-empty array");
    for (std::size_t k = 0; k < ts.size(); ++k) c.transcriptions.push_back(parse_transcription(ts[k], k, c.style));
  } else if (doc.contains("notes")) {
    c.transcriptions.push_back(parse_transcription(doc, 0, c.style));
  } else {
    throw InputError("corpus needs \"transcriptions\" (or \"notes\" for a single transcription)");
  }
  if (c.style.empty()) c.style = c.transcriptions.front().style;
  return c;
}

Corpus load_corpus(const std::filesystem::path& path) {
  if (!std::filesystem::is_directory(path)) return parse_corpus(read_json(path));
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError(path.string() + ": no .json files in directory");
  Corpus c;
  for (const auto& file : files) {
    Corpus one;
    try {
      one = parse_corpus(read_json(file));
    } catch (const InputError& e) {
      throw InputError(file.filename().string() + ": " + e.what());
    }
    for (auto& t : one.transcriptions) {
      if (t.style.empty()) t.style = one.style;
      c.transcriptions.push_back(std::move(t));
    }
  }
  c.style = c.transcriptions.front().style;
  return c;
}

json corpus_to_json(const Corpus& corpus) {
  json doc;
  doc["style"] = corpus.style;
  json ts = json::array();
  for (const melody::Transcription& t : corpus.transcriptions) {
    json notes = json::array();
    for (const melody::Note& n : t.notes) notes.push_back(json::array({n.onset, n.duration, n.pitch}));
    json jt = {{"id", t.id}, {"notes", std::move(notes)}};
    if (!t.style.empty() && t.style != corpus.style) jt["style"] = t.style;
    if (!t.phrases.empty()) jt["phrases"] = phrases_to_json(t.phrases);
    ts.push_back(std::move(jt));
  }
  doc["transcriptions"] = std::move(ts);
  return doc;
}

}  // namespace spantube::io
