#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "scorelint/rational.hpp"

namespace scorelint {

/// Stable diagnostic codes. Downstream tooling keys on these strings.
namespace codes {
// individual stage
inline constexpr std::string_view kDurationMismatch = "DurationMismatch";
inline constexpr std::string_view kSuspiciousSkip = "SuspiciousSkip";
inline constexpr std::string_view kSkipOutOfMeasure = "SkipOutOfMeasure";
inline constexpr std::string_view kDegenerateSkip = "DegenerateSkip";
inline constexpr std::string_view kMissingSymbolicDuration = "MissingSymbolicDuration";
// contextual stage: state machine rules
inline constexpr std::string_view kScoreMustStartWithBar = "ScoreMustStartWithBar";
inline constexpr std::string_view kVoiceDesyncAtBar = "VoiceDesyncAtBar";
inline constexpr std::string_view kUnclosedChord = "UnclosedChord";
inline constexpr std::string_view kUnclosedTuplet = "UnclosedTuplet";
inline constexpr std::string_view kMeasureOverflow = "MeasureOverflow";
inline constexpr std::string_view kTupletOverflow = "TupletOverflow";
inline constexpr std::string_view kChordDurationMismatch = "ChordDurationMismatch";
inline constexpr std::string_view kDuplicateNoteInChord = "DuplicateNoteInChord";
inline constexpr std::string_view kRestInChord = "RestInChord";
inline constexpr std::string_view kFullMeasureRestNotAlone = "FullMeasureRestNotAlone";
inline constexpr std::string_view kTupletUnderfilled = "TupletUnderfilled";
inline constexpr std::string_view kDanglingTie = "DanglingTie";
inline constexpr std::string_view kTokenAfterEnd = "TokenAfterEnd";
inline constexpr std::string_view kUnmatchedChordEnd = "UnmatchedChordEnd";
inline constexpr std::string_view kUnmatchedTupletEnd = "UnmatchedTupletEnd";
inline constexpr std::string_view kNestedTuplet = "NestedTuplet";
// contextual stage: tokenization and preparation
inline constexpr std::string_view kPaddingImpossible = "PaddingImpossible";
inline constexpr std::string_view kMalformedTupletMarking = "MalformedTupletMarking";
inline constexpr std::string_view kUnrepresentableDuration = "UnrepresentableDuration";
inline constexpr std::string_view kUnbalancedRepeat = "UnbalancedRepeat";
inline constexpr std::string_view kJumpNotUnfolded = "JumpNotUnfolded";
inline constexpr std::string_view kMultiplePartsUnsupported = "MultiplePartsUnsupported";
}  // namespace codes

enum class Stage { Individual, Contextual };
enum class Severity { Error, Warning };

std::string_view to_string(Stage stage) noexcept;
std::string_view to_string(Severity severity) noexcept;

struct Location {
  std::string file;
  std::string part;
  std::string measure;            // label as written in the source score
  std::size_t measure_index = 0;  // position in the (possibly unfolded) part
  int voice = 0;
  Rational onset;  // quarters from the measure start
};

using DataValue = std::variant<Rational, std::int64_t, std::string>;
using DataFields = std::vector<std::pair<std::string, DataValue>>;

struct Diagnostic {
  std::string code;
  Stage stage = Stage::Individual;
  Severity severity = Severity::Error;
  Location location;
  std::string message;
  DataFields data;

  const DataValue* field(std::string_view key) const;
};

bool operator==(const Location& a, const Location& b);
bool operator==(const Diagnostic& a, const Diagnostic& b);

std::size_t count_errors(const std::vector<Diagnostic>& diags);

}  // namespace scorelint
