#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scorelint/config.hpp"
#include "scorelint/diagnostic.hpp"
#include "scorelint/score.hpp"

namespace scorelint {

/// Where an element sits, plus the measure attributes the checks need.
struct MeasureSite {
  std::string file;
  std::string part;
  std::string measure;
  std::size_t measure_index = 0;
  std::int64_t divisions = 1;
  TimeSignature time;

  static MeasureSite of(const ScoreDoc& doc, const Part& part, const Measure& m, std::size_t index);
};

/// DurationMismatch when the written symbol and the <duration> disagree.
/// Grace notes count as zero-length symbols; full-measure rests without a
/// <type> (or spanning exactly the nominal measure) are not compared. A
/// regular note without <type> yields a MissingSymbolicDuration warning.
std::optional<Diagnostic> check_event_duration(const NoteEvent& e, const MeasureSite& site);

/// SuspiciousSkip when a <backup>/<forward> cannot be written as rests no
/// shorter than `min_unit`; DegenerateSkip (warning) for zero-length skips.
/// `skip` must hold a BackupEvent or ForwardEvent.
std::optional<Diagnostic> check_skip_decomposable(const Event& skip, const MeasureSite& site,
                                                  const Rational& min_unit);

/// SkipOutOfMeasure for every <backup> that rewinds the cursor before the
/// start of its measure.
std::vector<Diagnostic> check_skip_bounds(const Measure& m, const MeasureSite& site);

/// All individual checks over every part and measure, in document order.
std::vector<Diagnostic> run_individual(const ScoreDoc& doc, const CheckConfig& config);

}  // namespace scorelint
