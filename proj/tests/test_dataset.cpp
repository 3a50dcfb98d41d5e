#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "tseval/dataset.hpp"

using namespace tseval;

namespace {

struct TempFile {
  std::filesystem::path path;

  explicit TempFile(const std::string& name, const std::string& content) {
    path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

template <typename Fn>
std::string error_message(Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("CSV with probabilities parses into subject records") {
  const TempFile file("tseval_test_ok.csv",
                      "subject_id,t,y,p\n"
                      "s1,0,0,0.1\n"
                      "s1,1,1,0.9\n"
                      "s1,2,0,0.2\n"
                      "s1,3,0,0.3\n"
                      "s2,0,1,0.8\n"
                      "s2,1,0,0.1\n"
                      "s2,2,0,0.2\n"
                      "s2,3,1,0.7\n");
  const auto records = load_dataset(file.path, InputFormat::csv, 4.0);
  REQUIRE(records.size() == 2);
  CHECK(records[0].subject_id() == "s1");
  CHECK(records[0].truth().size() == 4);
  CHECK(records[0].truth().rate() == 4.0);
  REQUIRE(records[0].probabilities().has_value());
  CHECK((*records[0].probabilities())[1] == 0.9);
  CHECK_FALSE(records[0].predictions().has_value());
  CHECK(records[1].truth().values() == std::vector<std::uint8_t>{1, 0, 0, 1});
}

TEST_CASE("CSV with a yhat column supplies hard predictions") {
  const TempFile file("tseval_test_yhat.csv",
                      "subject_id,t,y,p,yhat\n"
                      "s1,0,0,,0\n"
                      "s1,1,1,,1\n");
  const auto records = load_dataset(file.path, InputFormat::csv, 4.0);
  REQUIRE(records.size() == 1);
  CHECK_FALSE(records[0].probabilities().has_value());
  REQUIRE(records[0].predictions().has_value());
  CHECK(records[0].predictions()->values() == std::vector<std::uint8_t>{0, 1});
}

TEST_CASE("CSV errors carry the offending line number") {
  SUBCASE("probability out of range") {
    const TempFile file("tseval_test_range.csv",
                        "subject_id,t,y,p\ns1,0,0,0.5\ns1,1,0,1.2\n");
    const std::string msg =
        error_message([&] { load_dataset(file.path, InputFormat::csv, 4.0); });
    CHECK(msg.find("probability out of range") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
  }
  SUBCASE("missing column") {
    const TempFile file("tseval_test_missing.csv", "subject_id,t,p\ns1,0,0.5\n");
    const std::string msg =
        error_message([&] { load_dataset(file.path, InputFormat::csv, 4.0); });
    CHECK(msg.find("missing column 'y'") != std::string::npos);
  }
  SUBCASE("non-contiguous t") {
    const TempFile file("tseval_test_gap.csv",
                        "subject_id,t,y,p\ns1,0,0,0.5\ns1,2,0,0.5\n");
    const std::string msg =
        error_message([&] { load_dataset(file.path, InputFormat::csv, 4.0); });
    CHECK(msg.find("non-contiguous") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
  }
  SUBCASE("bad label") {
    const TempFile file("tseval_test_label.csv", "subject_id,t,y,p\ns1,0,2,0.5\n");
    const std::string msg =
        error_message([&] { load_dataset(file.path, InputFormat::csv, 4.0); });
    CHECK(msg.find("must be 0 or 1") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
  }
  SUBCASE("row without p or yhat") {
    const TempFile file("tseval_test_empty.csv",
                        "subject_id,t,y,p\ns1,0,0,\n");
    const std::string msg =
        error_message([&] { load_dataset(file.path, InputFormat::csv, 4.0); });
    CHECK(msg.find("neither p nor yhat") != std::string::npos);
  }
}

TEST_CASE("JSONL parses one subject per line") {
  const TempFile file("tseval_test_ok.jsonl",
                      R"({"subject_id": "s1", "y": [0, 1, 0], "p": [0.1, 0.8, 0.3]})"
                      "\n"
                      R"({"subject_id": "s2", "y": [1, 0], "yhat": [1, 0]})"
                      "\n");
  const auto records = load_dataset(file.path, InputFormat::jsonl, 4.0);
  REQUIRE(records.size() == 2);
  CHECK(records[0].probabilities().has_value());
  CHECK(records[1].predictions().has_value());
}

TEST_CASE("JSONL errors carry the offending line number") {
  SUBCASE("unequal arrays") {
    const TempFile file("tseval_test_len.jsonl",
                        R"({"subject_id": "s1", "y": [0, 1], "p": [0.1]})" "\n");
    const std::string msg =
        error_message([&] { load_dataset(file.path, InputFormat::jsonl, 4.0); });
    CHECK(msg.find("unequal length") != std::string::npos);
    CHECK(msg.find("line 1") != std::string::npos);
  }
  SUBCASE("duplicate subject") {
    const TempFile file("tseval_test_dup.jsonl",
                        R"({"subject_id": "s1", "y": [0], "p": [0.1]})" "\n"
                        R"({"subject_id": "s1", "y": [0], "p": [0.1]})" "\n");
    const std::string msg =
        error_message([&] { load_dataset(file.path, InputFormat::jsonl, 4.0); });
    CHECK(msg.find("duplicate subject") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
  }
  SUBCASE("invalid JSON") {
    const TempFile file("tseval_test_bad.jsonl", "{not json}\n");
    const std::string msg =
        error_message([&] { load_dataset(file.path, InputFormat::jsonl, 4.0); });
    CHECK(msg.find("invalid JSON") != std::string::npos);
  }
}

TEST_CASE("missing input file raises a filesystem error") {
  CHECK_THROWS_AS(load_dataset("/nonexistent/input.csv", InputFormat::csv, 4.0),
                  std::runtime_error);
}
