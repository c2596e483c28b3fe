#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scorelint/duration.hpp"
#include "scorelint/rational.hpp"

namespace scorelint {

struct Pitch {
  char step = 'C';
  int octave = 4;
  Rational alter;  // semitones; microtonal alters are fractional

  /// Key-number style identity (C4 = 60) plus the alteration, so enharmonic
  /// spellings compare equal.
  Rational sounding() const;
  std::string to_string() const;

  friend bool operator==(const Pitch&, const Pitch&) = default;
};

enum class TupletMarkType { Start, Stop };

struct TupletMark {
  TupletMarkType type = TupletMarkType::Start;
  int number = 1;
  // Explicit <tuplet-actual>/<tuplet-normal> content, when encoded.
  std::optional<std::int64_t> actual_count;
  std::optional<std::int64_t> normal_count;
  std::optional<NoteType> unit_type;
  int unit_dots = 0;
};

struct NoteEvent {
  std::optional<Pitch> pitch;  // absent for rests
  bool rest = false;
  int voice = 1;
  int staff = 1;
  std::int64_t ticks = 0;
  std::optional<SymbolicDuration> symbolic;
  // <normal-type>/<normal-dot> from <time-modification>, when present.
  std::optional<NoteType> normal_type;
  int normal_dots = 0;
  bool grace = false;
  bool cue = false;
  bool chord = false;
  bool tie_start = false;
  bool tie_stop = false;
  bool full_measure_rest = false;
  std::vector<TupletMark> tuplet_marks;
  std::int64_t onset_ticks = 0;
};

struct BackupEvent {
  std::int64_t ticks = 0;
  int voice = 0;  // voice of the preceding note, 0 when none
  std::int64_t onset_ticks = 0;
};

struct ForwardEvent {
  std::int64_t ticks = 0;
  int voice = 1;
  bool voice_explicit = false;
  std::int64_t onset_ticks = 0;
};

using Event = std::variant<NoteEvent, BackupEvent, ForwardEvent>;

std::int64_t onset_of(const Event& e);
std::int64_t ticks_of(const Event& e);
int voice_of(const Event& e);

struct TimeSignature {
  std::int64_t beats = 4;
  std::int64_t beat_type = 4;

  Rational quarters() const { return Rational(beats * 4, beat_type); }
  friend bool operator==(const TimeSignature&, const TimeSignature&) = default;
};

struct RepeatMarks {
  bool forward = false;
  bool backward = false;
  int times = 2;
  std::vector<int> ending_numbers;
  bool ending_start = false;
  bool ending_stop = false;

  bool any() const { return forward || backward || !ending_numbers.empty() || ending_start || ending_stop; }
};

struct Measure {
  std::string number_label;
  std::int64_t divisions = 1;
  TimeSignature time;
  std::vector<Event> events;
  RepeatMarks repeat;
  bool has_jump = false;  // da capo / dal segno / to coda instruction seen
  std::size_t source_index = 0;  // position in the part as written

  Rational nominal_quarters() const { return time.quarters(); }
};

struct Part {
  std::string id;
  std::vector<Measure> measures;
};

struct ScoreDoc {
  std::string source_name;
  std::vector<Part> parts;
};

}  // namespace scorelint
