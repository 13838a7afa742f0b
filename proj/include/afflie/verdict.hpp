#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace afflie {

enum class Strategy { frame, exhaustive };

enum class CheckResult { pass, fail, error };

inline const char* to_string(Strategy s) {
  return s == Strategy::frame ? "frame" : "exhaustive";
}

inline const char* to_string(CheckResult r) {
  switch (r) {
    case CheckResult::pass: return "pass";
    case CheckResult::fail: return "fail";
    case CheckResult::error: return "error";
  }
  return "?";
}

/// The offending tuple of a failed law, with both evaluated sides.
/// Entries are rendered values ("name=value"), in slot order.
struct Witness {
  std::vector<std::string> args;
  std::string lhs;
  std::string rhs;
};

/// Outcome of checking one law on one instance.
struct VerdictReport {
  std::string law;
  Strategy strategy = Strategy::exhaustive;
  CheckResult result = CheckResult::error;
  std::optional<Witness> witness;  // present iff result == fail
  std::uint64_t tuples = 0;        // tuples evaluated (deterministic)
  std::string message;             // set when result == error

  bool passed() const { return result == CheckResult::pass; }
  bool failed() const { return result == CheckResult::fail; }

  std::string describe() const;
};

struct CheckOptions {
  /// nullopt lets the engine pick: frame for chart instances, exhaustive
  /// otherwise.
  std::optional<Strategy> strategy;
  std::uint64_t budget = 1'000'000;
  unsigned jobs = 1;
  /// When the requested strategy is unavailable (frame on a table
  /// instance, exhaustive on an infinite one), fall back to the other
  /// rather than erroring.
  bool allow_fallback = true;
};

}  // namespace afflie
