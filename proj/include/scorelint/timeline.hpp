#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scorelint/score.hpp"

namespace scorelint {

struct TimelineEntry {
  std::int64_t onset_ticks = 0;
  std::size_t input_index = 0;
  const Event* event = nullptr;
};

/// Events of `m` ordered by (onset, voice, input order). Entries point into
/// `m`, which must outlive the result.
std::vector<TimelineEntry> measure_timeline(const Measure& m);

}  // namespace scorelint
