#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scorelint/config.hpp"
#include "scorelint/diagnostic.hpp"
#include "scorelint/individual.hpp"
#include "scorelint/score.hpp"
#include "scorelint/token.hpp"

namespace scorelint {

/// One element of a voice's timeline, real or inserted by padding.
struct VoiceEvent {
  Rational onset;   // quarters from the measure start
  Rational length;  // timeline length in quarters (0 for grace notes)
  std::size_t input_index = 0;
  const NoteEvent* note = nullptr;  // nullptr for a synthetic padding rest
  SymbolicDuration synthetic_duration;

  bool synthetic() const { return note == nullptr; }
  bool grace() const { return note != nullptr && note->grace; }
};

using VoiceTimelines = std::map<int, std::vector<VoiceEvent>>;

struct PaddedMeasure {
  VoiceTimelines voices;
  std::vector<Diagnostic> diagnostics;  // PaddingImpossible
  bool excluded = false;
};

/**
 * Splits a measure into per-voice timelines and fills their gaps with rests.
 *
 * Gaps before a voice's first event and between consecutive events are
 * filled with undotted rests (largest first) no shorter than
 * config.min_unit. A voice that stops early is filled up to the measure's
 * extent (the latest event end, capped at the nominal length), so shorter
 * pickup-style measures stay short. A gap that cannot be written with such
 * rests gives a PaddingImpossible diagnostic and marks the measure excluded.
 */
PaddedMeasure pad_voices(const Measure& m, const MeasureSite& site, const CheckConfig& config);

/// A voice element after chord grouping: one event, or ≥2 simultaneous
/// non-grace events forming a chord.
struct VoiceItem {
  std::vector<VoiceEvent> members;

  bool is_chord() const { return members.size() >= 2; }
  bool grace() const { return members.front().grace(); }
  const Rational& onset() const { return members.front().onset; }
};

/// Groups simultaneous non-grace events of one voice into chords. Grace
/// notes stay single (grace chords become sequential grace notes) and come
/// before the main events sharing their onset.
std::vector<VoiceItem> group_chords(const std::vector<VoiceEvent>& voice_events);

struct TimedToken {
  Token token;
  Rational onset;
};

struct VoiceTokens {
  std::vector<TimedToken> tokens;
  std::vector<Diagnostic> diagnostics;  // MalformedTupletMarking, UnrepresentableDuration
  bool excluded = false;
};

/**
 * Emits one voice's tokens, wrapping chords in ChordStart/ChordEnd and
 * tuplets in TupletStart/TupletEnd.
 *
 * Tuplet brackets follow explicit <tuplet> start/stop marks. Notes carrying
 * a <time-modification> outside any marked tuplet are bracketed per run of
 * equal modifications, a new bracket starting whenever the previous one is
 * full. Inside a bracket, note and rest durations are the plain written
 * symbols; the ratio lives on TupletStart.
 */
VoiceTokens group_tuplets(int voice, const std::vector<VoiceItem>& items, const MeasureSite& site);

struct PartTokens {
  std::string part_id;
  TokenSequence sequence;
  std::vector<Diagnostic> diagnostics;
};

/// Tokenizes one part of an unfolded score: per measure a Bar, then every
/// voice's tokens ordered by (onset, voice, voice order); EndOfScore last.
/// Excluded measures contribute only their Bar.
PartTokens tokenize_part(const ScoreDoc& doc, std::size_t part_index, const CheckConfig& config);

/// tokenize_part for every part.
std::vector<PartTokens> tokenize(const ScoreDoc& doc, const CheckConfig& config);

}  // namespace scorelint
