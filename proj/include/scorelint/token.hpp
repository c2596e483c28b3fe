#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "scorelint/duration.hpp"
#include "scorelint/rational.hpp"
#include "scorelint/score.hpp"

namespace scorelint {

struct BarToken {
  std::int64_t ts_numerator = 4;
  std::int64_t ts_denominator = 4;

  Rational measure_quarters() const { return Rational(ts_numerator * 4, ts_denominator); }
  friend bool operator==(const BarToken&, const BarToken&) = default;
};

struct NoteToken {
  int voice = 1;
  Pitch pitch;
  SymbolicDuration duration;
  bool is_grace = false;
  bool is_tied = false;  // tied to a later note
  friend bool operator==(const NoteToken&, const NoteToken&) = default;
};

struct RestToken {
  int voice = 1;
  SymbolicDuration duration;
  bool full_measure = false;
  bool synthetic = false;  // inserted by voice padding; reporting only
  friend bool operator==(const RestToken&, const RestToken&) = default;
};

struct ChordStartToken {
  int voice = 1;
  SymbolicDuration duration;
  bool is_grace = false;
  friend bool operator==(const ChordStartToken&, const ChordStartToken&) = default;
};

struct ChordEndToken {
  int voice = 1;
  friend bool operator==(const ChordEndToken&, const ChordEndToken&) = default;
};

struct TupletStartToken {
  int voice = 1;
  SymbolicDuration base_unit;
  std::int64_t n_normal = 2;
  std::int64_t n_actual = 3;

  Rational normal_duration() const { return quarters_of(base_unit) * Rational(n_normal); }
  Rational actual_duration() const { return quarters_of(base_unit) * Rational(n_actual); }
  friend bool operator==(const TupletStartToken&, const TupletStartToken&) = default;
};

struct TupletEndToken {
  int voice = 1;
  friend bool operator==(const TupletEndToken&, const TupletEndToken&) = default;
};

struct EndOfScoreToken {
  friend bool operator==(const EndOfScoreToken&, const EndOfScoreToken&) = default;
};

using Token = std::variant<BarToken, NoteToken, RestToken, ChordStartToken, ChordEndToken, TupletStartToken,
                           TupletEndToken, EndOfScoreToken>;

/// Voice of a voice-bound token; 0 for Bar and EndOfScore.
int token_voice(const Token& t);
std::string_view token_type_name(const Token& t);
/// One-line human description, e.g. "Note v1 C#4 dotted quarter tied".
std::string describe(const Token& t);

struct SourceLocation {
  std::string part;
  std::string measure;
  std::size_t measure_index = 0;
  Rational onset;
};

struct TokenSequence {
  std::vector<Token> tokens;
  std::vector<SourceLocation> locations;  // parallel to tokens

  void push(Token token, SourceLocation location) {
    tokens.push_back(std::move(token));
    locations.push_back(std::move(location));
  }
  std::size_t size() const { return tokens.size(); }
};

/// One token per line: index, description, source location.
std::string dump_tokens(const TokenSequence& seq);

}  // namespace scorelint
