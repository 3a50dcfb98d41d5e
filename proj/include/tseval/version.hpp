#pragma once

#include <string_view>

namespace tseval {

inline constexpr std::string_view kToolName = "tseval";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Bumped whenever the report layout changes incompatibly.
inline constexpr int kReportSchemaVersion = 1;

}  // namespace tseval
