#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "spantube/io.h"

using namespace spantube;
using nlohmann::json;

TEST_CASE("function set round trip") {
  const json doc = json::parse(R"({"domain":[0,1],"functions":[
      {"id":"a","points":[[0,0],[0.5,1],[1,0]]},{"id":"b","points":[[0,2],[1,2]]}]})");
  const io::FunctionSetDocument d = io::parse_function_set(doc);
  CHECK(d.functions.size() == 2);
  CHECK(d.functions[0].id() == "a");
  CHECK_FALSE(d.style.has_value());
  const json back = io::function_set_to_json(d.functions, std::string("s"), {{0, 0.5, "A"}, {0.5, 1, "B"}});
  const io::FunctionSetDocument again = io::parse_function_set(back);
  CHECK(again.functions[0].evaluate(0.5) == 1.0);
  CHECK(*again.style == "s");
  REQUIRE(again.phrases.size() == 2);
  CHECK(again.phrases[1].label == "B");
}

TEST_CASE("function set errors name the offending function") {
  auto message = [](const char* text) {
    try {
      io::parse_function_set(json::parse(text));
    } catch (const io::InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"domain":[0,1],"functions":[{"id":"zig","points":[[0,0],[0.6,1],[0.4,2],[1,0]]}]})")
            .find("zig") != std::string::npos);
  CHECK(message(R"({"domain":[0,1],"functions":[{"id":"a","points":[[0,0],[1,0]]},{"id":"short","points":[[0,0],[0.9,0]]}]})")
            .find("short") != std::string::npos);
  CHECK_FALSE(message(R"({"functions":[]})").empty());
  CHECK_FALSE(message(R"({"domain":[1,0],"functions":[{"points":[[0,0],[1,0]]}]})").empty());
  CHECK_FALSE(message(R"({"domain":[0,1],"functions":[{"id":"x","points":[[0,"a"],[1,0]]}]})").empty());
}

TEST_CASE("truncated files are input errors") {
  const auto path = std::filesystem::temp_directory_path() / "spantube_truncated.json";
  std::ofstream(path) << R"({"domain":[0,1],"functions":[{"id":"a","points":[[0,0)";
  CHECK_THROWS_AS(io::load_function_set(path), io::InputError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::load_function_set("/nonexistent/spantube.json"), io::InputError);
}

TEST_CASE("corpus parsing") {
  const json doc = json::parse(R"({"style":"s","transcriptions":[
      {"id":"t1","notes":[[0,0.5,60],[0.5,0.5,62]],"phrases":[[0,1,"all"]]},
      {"id":"t2","notes":[[0,0.4,61],[0.4,0.4,63]]}]})");
  const io::Corpus c = io::parse_corpus(doc);
  CHECK(c.style == "s");
  REQUIRE(c.transcriptions.size() == 2);
  CHECK(c.transcriptions[0].phrases.size() == 1);
  CHECK(c.transcriptions[1].style == "s");
  CHECK(c.transcriptions[1].notes[1].pitch == 63.0);

  const io::Corpus again = io::parse_corpus(io::corpus_to_json(c));
  CHECK(again.transcriptions[0].notes[1].onset == 0.5);

  CHECK_THROWS_AS(io::parse_corpus(json::parse(R"({"style":"s","transcriptions":[{"id":"x","notes":[[0,1]]}]})")),
                  io::InputError);
  CHECK_THROWS_AS(io::parse_corpus(json::parse(R"({"style":"s","transcriptions":[{"id":"x","notes":[[1,1,60],[0,1,60]]}]})")),
                  io::InputError);
}

TEST_CASE("corpus directory of single transcriptions") {
  const auto dir = std::filesystem::temp_directory_path() / "spantube_corpus_dir";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "b.json") << R"({"id":"b","style":"s","notes":[[0,1,60],[1,1,62]]})";
  std::ofstream(dir / "a.json") << R"({"id":"a","style":"s","notes":[[0,1,61],[1,1,63]]})";
  std::ofstream(dir / "notes.txt") << "ignored";
  const io::Corpus c = io::load_corpus(dir);
  REQUIRE(c.transcriptions.size() == 2);
  CHECK(c.transcriptions[0].id == "a");
  CHECK(c.style == "s");
  std::filesystem::remove_all(dir);
}
