#include "scorelint/timeline.hpp"

#include <algorithm>
#include <tuple>

namespace scorelint {

std::vector<TimelineEntry> measure_timeline(const Measure& m) {
  std::vector<TimelineEntry> out;
  out.reserve(m.events.size());
  for (std::size_t i = 0; i < m.events.size(); ++i) {
    out.push_back({onset_of(m.events[i]), i, &m.events[i]});
  }
  std::stable_sort(out.begin(), out.end(), [](const TimelineEntry& a, const TimelineEntry& b) {
    return std::tuple(a.onset_ticks, voice_of(*a.event), a.input_index) <
           std::tuple(b.onset_ticks, voice_of(*b.event), b.input_index);
  });
  return out;
}

}  // namespace scorelint
