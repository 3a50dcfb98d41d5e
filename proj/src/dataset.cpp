#include "tseval/dataset.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <unordered_map>

#include <json.hpp>

namespace tseval {

namespace {

using ordered_json = nlohmann::ordered_json;

struct SubjectAccumulator {
  std::vector<std::uint8_t> y;
  std::vector<double> p;
  std::vector<std::uint8_t> yhat;
  bool has_p = false;
  bool has_yhat = false;
};

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

double parse_double(const std::string& text, const char* what, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(std::string("cannot parse ") + what + " '" + text + "'", line);
  }
  return value;
}

std::uint64_t parse_index(const std::string& text, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("cannot parse sample index '" + text + "'", line);
  }
  return value;
}

std::uint8_t parse_binary(const std::string& text, const char* what, std::size_t line) {
  if (text == "0") return 0;
  if (text == "1") return 1;
  throw ParseError(std::string(what) + " must be 0 or 1, got '" + text + "'", line);
}

std::vector<SubjectRecord> build_records(
    const std::vector<std::string>& order,
    std::unordered_map<std::string, SubjectAccumulator>& subjects, double rate) {
  std::vector<SubjectRecord> records;
  records.reserve(order.size());
  for (const std::string& id : order) {
    SubjectAccumulator& acc = subjects.at(id);
    std::optional<ProbabilitySeries> probabilities;
    std::optional<LabelSeries> predictions;
    if (acc.has_p) probabilities.emplace(std::move(acc.p), rate);
    if (acc.has_yhat) predictions.emplace(std::move(acc.yhat), rate);
    records.emplace_back(id, LabelSeries(std::move(acc.y), rate),
                         std::move(probabilities), std::move(predictions));
  }
  return records;
}

std::vector<SubjectRecord> load_csv(std::istream& in, double rate) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::map<std::string, std::size_t> columns;
  const std::vector<std::string> header = split_fields(line);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!columns.emplace(header[i], i).second) {
      throw ParseError("duplicate column '" + header[i] + "'", 1);
    }
  }
  for (const char* required : {"subject_id", "t", "y"}) {
    if (!columns.contains(required)) {
      throw ParseError("missing column '" + std::string(required) + "'", 1);
    }
  }
  const bool file_has_p = columns.contains("p");
  const bool file_has_yhat = columns.contains("yhat");
  if (!file_has_p && !file_has_yhat) throw ParseError("missing column 'p'", 1);

  std::unordered_map<std::string, SubjectAccumulator> subjects;
  std::vector<std::string> order;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    const std::string& id = fields[columns.at("subject_id")];
    if (id.empty()) throw ParseError("empty subject_id", line_no);

    auto [it, inserted] = subjects.try_emplace(id);
    SubjectAccumulator& acc = it->second;
    if (inserted) order.push_back(id);

    const std::uint64_t t = parse_index(fields[columns.at("t")], line_no);
    if (t != acc.y.size()) {
      throw ParseError("non-contiguous sample index t=" + std::to_string(t) +
                           " for subject '" + id + "' (expected " +
                           std::to_string(acc.y.size()) + ")",
                       line_no);
    }
    acc.y.push_back(parse_binary(fields[columns.at("y")], "label y", line_no));

    const std::string p_field = file_has_p ? fields[columns.at("p")] : std::string();
    const std::string yhat_field =
        file_has_yhat ? fields[columns.at("yhat")] : std::string();
    const bool row_has_p = !p_field.empty();
    const bool row_has_yhat = !yhat_field.empty();
    if (!row_has_p && !row_has_yhat) {
      throw ParseError("row provides neither p nor yhat", line_no);
    }
    if (inserted) {
      acc.has_p = row_has_p;
      acc.has_yhat = row_has_yhat;
    } else if (acc.has_p != row_has_p || acc.has_yhat != row_has_yhat) {
      throw ParseError("inconsistent p/yhat presence for subject '" + id + "'", line_no);
    }
    if (row_has_p) {
      const double p = parse_double(p_field, "probability", line_no);
      if (p < 0.0 || p > 1.0) throw ParseError("probability out of range", line_no);
      acc.p.push_back(p);
    }
    if (row_has_yhat) {
      acc.yhat.push_back(parse_binary(yhat_field, "prediction yhat", line_no));
    }
  }
  if (order.empty()) throw ParseError("no data rows", line_no);
  return build_records(order, subjects, rate);
}

std::vector<std::uint8_t> json_binary_array(const ordered_json& arr, const char* what,
                                            std::size_t line) {
  std::vector<std::uint8_t> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number_integer() || (v.get<std::int64_t>() != 0 && v.get<std::int64_t>() != 1)) {
      throw ParseError(std::string(what) + " must contain only 0 or 1", line);
    }
    out.push_back(static_cast<std::uint8_t>(v.get<std::int64_t>()));
  }
  return out;
}

std::vector<SubjectRecord> load_jsonl(std::istream& in, double rate) {
  std::unordered_map<std::string, SubjectAccumulator> subjects;
  std::vector<std::string> order;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ordered_json obj;
    try {
      obj = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object()) throw ParseError("expected a JSON object", line_no);
    if (!obj.contains("subject_id") || !obj["subject_id"].is_string()) {
      throw ParseError("missing string field 'subject_id'", line_no);
    }
    const auto id = obj["subject_id"].get<std::string>();
    if (id.empty()) throw ParseError("empty subject_id", line_no);
    auto [it, inserted] = subjects.try_emplace(id);
    if (!inserted) throw ParseError("duplicate subject '" + id + "'", line_no);
    order.push_back(id);
    SubjectAccumulator& acc = it->second;

    if (!obj.contains("y") || !obj["y"].is_array()) {
      throw ParseError("missing array field 'y'", line_no);
    }
    acc.y = json_binary_array(obj["y"], "y", line_no);
    if (obj.contains("p")) {
      if (!obj["p"].is_array()) throw ParseError("'p' must be an array", line_no);
      for (const auto& v : obj["p"]) {
        if (!v.is_number()) throw ParseError("'p' must contain numbers", line_no);
        const double p = v.get<double>();
        if (p < 0.0 || p > 1.0) throw ParseError("probability out of range", line_no);
        acc.p.push_back(p);
      }
      acc.has_p = true;
    }
    if (obj.contains("yhat")) {
      if (!obj["yhat"].is_array()) throw ParseError("'yhat' must be an array", line_no);
      acc.yhat = json_binary_array(obj["yhat"], "yhat", line_no);
      acc.has_yhat = true;
    }
    if (!acc.has_p && !acc.has_yhat) {
      throw ParseError("subject provides neither 'p' nor 'yhat'", line_no);
    }
    if (acc.y.empty()) throw ParseError("'y' must not be empty", line_no);
    if (acc.has_p && acc.p.size() != acc.y.size()) {
      throw ParseError("'y' and 'p' arrays have unequal length", line_no);
    }
    if (acc.has_yhat && acc.yhat.size() != acc.y.size()) {
      throw ParseError("'y' and 'yhat' arrays have unequal length", line_no);
    }
  }
  if (order.empty()) throw ParseError("no subjects", line_no == 0 ? 1 : line_no);
  return build_records(order, subjects, rate);
}

}  // namespace

std::string_view input_format_name(InputFormat format) noexcept {
  return format == InputFormat::csv ? "csv" : "jsonl";
}

InputFormat input_format_from_name(std::string_view name) {
  if (name == "csv") return InputFormat::csv;
  if (name == "jsonl") return InputFormat::jsonl;
  throw std::invalid_argument("unknown input format: " + std::string(name));
}

std::vector<SubjectRecord> load_dataset(const std::filesystem::path& path,
                                        InputFormat format, double rate) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open input file: " + path.generic_string());
  }
  try {
    return format == InputFormat::csv ? load_csv(in, rate) : load_jsonl(in, rate);
  } catch (const std::invalid_argument& e) {
    // Series/record invariant violations surface as parse errors too.
    throw std::runtime_error(path.generic_string() + ": " + e.what());
  }
}

}  // namespace tseval
