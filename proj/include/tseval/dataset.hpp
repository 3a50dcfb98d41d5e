#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tseval/series.hpp"

namespace tseval {

enum class InputFormat { csv, jsonl };

std::string_view input_format_name(InputFormat format) noexcept;
InputFormat input_format_from_name(std::string_view name);

/// Input validation failure; the message always names the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error(message + ", line " + std::to_string(line)), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads per-subject records.
///
/// CSV: header `subject_id,t,y,p` (optionally a `yhat` column); t is the
/// 0-based sample index and must be contiguous per subject; y in {0,1};
/// p in [0,1], or empty when yhat supplies hard predictions.
///
/// JSONL: one object per line with "subject_id", "y" and "p" and/or "yhat"
/// arrays of equal length.
std::vector<SubjectRecord> load_dataset(const std::filesystem::path& path,
                                        InputFormat format, double rate);

}  // namespace tseval
