#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scorelint/config.hpp"
#include "scorelint/diagnostic.hpp"
#include "scorelint/token.hpp"

namespace scorelint {

struct ChordState {
  SymbolicDuration duration;
  std::vector<Pitch> notes;
  friend bool operator==(const ChordState&, const ChordState&) = default;
};

struct TupletState {
  Rational position;  // filled so far, in written (plain) quarters
  SymbolicDuration unit;
  std::int64_t n_normal = 2;
  std::int64_t n_actual = 3;

  Rational normal_duration() const { return quarters_of(unit) * Rational(n_normal); }
  Rational actual_duration() const { return quarters_of(unit) * Rational(n_actual); }
  friend bool operator==(const TupletState&, const TupletState&) = default;
};

struct VoiceState {
  Rational duration;  // capacity of the measure for this voice
  Rational position;
  std::optional<ChordState> chord;
  std::vector<TupletState> tuplets;  // innermost last
  bool has_content = false;
  bool full_measure_rest = false;
  friend bool operator==(const VoiceState&, const VoiceState&) = default;
};

struct ScoreState {
  std::map<int, VoiceState> voices;
  std::set<std::pair<int, Rational>> tied;  // (voice, sounding pitch) awaiting a continuation
  bool is_initial = true;
  bool ended = false;
  Rational measure_duration;
  friend bool operator==(const ScoreState&, const ScoreState&) = default;
};

/// Compact one-line state summary used by the state trace.
std::string describe(const ScoreState& state);

struct Violation {
  std::string code;
  int voice = 0;
  std::string explanation;
  DataFields data;
};

/// Checks whether `token` may follow `state`. Pure: never changes anything.
std::optional<Violation> guard(const ScoreState& state, const Token& token, const CheckConfig& config);

/// Applies an accepted token.
void update(ScoreState& state, const Token& token);

struct ContextualResult {
  std::vector<Diagnostic> diagnostics;
  ScoreState final_state;
  std::string trace;  // filled when config.dump_state is set
};

/**
 * Runs the machine over a token sequence.
 *
 * After a violation the rest of the measure is skipped: the run resumes at
 * the next Bar with empty voices and no pending ties, so every measure
 * reports at most one contextual error. A violation on EndOfScore ends the
 * run.
 */
ContextualResult run_contextual(const TokenSequence& seq, const CheckConfig& config, const std::string& file);

}  // namespace scorelint
