#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scorelint/rational.hpp"

namespace scorelint {

/// MusicXML <type> values. The enumerator value is log2 of the base length in
/// quarter notes, so a 1024th is 2^-8 quarters and a maxima is 2^5.
enum class NoteType : std::int8_t {
  N1024th = -8,
  N512th = -7,
  N256th = -6,
  N128th = -5,
  N64th = -4,
  N32nd = -3,
  N16th = -2,
  Eighth = -1,
  Quarter = 0,
  Half = 1,
  Whole = 2,
  Breve = 3,
  Long = 4,
  Maxima = 5,
};

inline constexpr int kMaxDots = 4;

std::optional<NoteType> parse_note_type(std::string_view name) noexcept;
std::string_view note_type_name(NoteType type) noexcept;
Rational base_quarters(NoteType type);

struct TimeModification {
  std::int64_t actual_notes = 1;
  std::int64_t normal_notes = 1;

  friend bool operator==(const TimeModification&, const TimeModification&) = default;
};

struct SymbolicDuration {
  NoteType note_type = NoteType::Quarter;
  int dots = 0;
  std::optional<TimeModification> time_modification;

  /// Copy without the time modification (the bare written symbol).
  SymbolicDuration plain() const { return {note_type, dots, std::nullopt}; }

  friend bool operator==(const SymbolicDuration&, const SymbolicDuration&) = default;
};

/// Throws Error(InvalidArgument) when dots exceed kMaxDots or a time
/// modification count is not positive.
void validate(const SymbolicDuration& sym);

/// Theoretical length in quarter notes:
/// base × (2 − 2^−dots) × normal_notes / actual_notes.
Rational quarters_of(const SymbolicDuration& sym);

/// Timeline length of a <duration> value. divisions == 0 throws
/// Error(IllFormedDocument).
Rational ticks_to_quarters(std::int64_t ticks, std::int64_t divisions);

/// "dotted quarter", "32nd (14:8)", "half".
std::string describe(const SymbolicDuration& sym);

/// The default smallest rest used for skip decomposition and voice padding.
inline constexpr NoteType kDefaultMinUnit = NoteType::N128th;

/**
 * Splits `q` quarters into undotted rests, largest first, none shorter than
 * `min_unit` (which must be a power of two between a 1024th and a maxima).
 *
 * Returns std::nullopt when q is not a whole multiple of min_unit. Lengths
 * above a maxima are covered by repeated maxima rests.
 *
 * Throws Error(InvalidArgument) for q <= 0 or a min_unit that is not a power
 * of two in range.
 */
std::optional<std::vector<SymbolicDuration>> decompose_into_rests(const Rational& q, const Rational& min_unit);

/// Same acceptance test as decompose_into_rests without building the list.
bool is_decomposable(const Rational& q, const Rational& min_unit);

}  // namespace scorelint
