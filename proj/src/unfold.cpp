#include "scorelint/unfold.hpp"

#include <algorithm>

namespace scorelint {

namespace {

bool repeats_balanced(const Part& part) {
  bool open_forward = false;
  for (const Measure& m : part.measures) {
    if (m.repeat.forward) {
      if (open_forward) return false;
      open_forward = true;
    }
    if (m.repeat.backward) open_forward = false;
  }
  return !open_forward;
}

// Ending numbers in effect for each measure: an ending runs from its start
// barline through the measure carrying its stop/discontinue barline.
std::vector<std::vector<int>> ending_membership(const Part& part) {
  std::vector<std::vector<int>> out(part.measures.size());
  std::vector<int> active;
  for (std::size_t i = 0; i < part.measures.size(); ++i) {
    const RepeatMarks& r = part.measures[i].repeat;
    if (r.ending_start) active = r.ending_numbers;
    if (!active.empty()) {
      out[i] = active;
    } else if (r.ending_stop) {
      out[i] = r.ending_numbers;  // stop without a start: treat as one-measure ending
    }
    if (r.ending_stop) active.clear();
  }
  return out;
}

Diagnostic unfold_warning(const ScoreDoc& doc, const Part& part, const Measure& m, std::string_view code,
                          std::string message) {
  Diagnostic d;
  d.code = std::string(code);
  d.stage = Stage::Contextual;
  d.severity = Severity::Warning;
  d.location.file = doc.source_name;
  d.location.part = part.id;
  d.location.measure = m.number_label;
  d.location.measure_index = m.source_index;
  d.message = std::move(message);
  return d;
}

}  // namespace

std::optional<std::vector<std::size_t>> playback_order(const Part& part) {
  const std::size_t n = part.measures.size();
  if (!repeats_balanced(part)) return std::nullopt;
  const auto endings = ending_membership(part);

  std::vector<std::size_t> order;
  const std::size_t limit = 64 * n + 64;
  std::size_t i = 0;
  int pass = 1;
  std::size_t section_start = 0;
  std::optional<std::size_t> jumped_from;
  bool arrived_by_jump = false;

  while (i < n) {
    const Measure& m = part.measures[i];
    if (m.repeat.forward && !arrived_by_jump) {
      section_start = i;
      pass = 1;
      jumped_from.reset();
    }
    arrived_by_jump = false;

    const auto& numbers = endings[i];
    if (!numbers.empty() && std::find(numbers.begin(), numbers.end(), pass) == numbers.end()) {
      ++i;
      continue;
    }
    if (numbers.empty() && jumped_from && i > *jumped_from) {
      // Past the repeated section and its endings.
      pass = 1;
      jumped_from.reset();
      section_start = i;
    }

    order.push_back(i);
    if (order.size() > limit) return std::nullopt;

    if (m.repeat.backward) {
      if (pass < m.repeat.times) {
        ++pass;
        jumped_from = std::max(jumped_from.value_or(i), i);
        i = section_start;
        arrived_by_jump = true;
        continue;
      }
      pass = 1;
      jumped_from.reset();
      section_start = i + 1;
    }
    ++i;
  }
  return order;
}

UnfoldResult unfold_repeats(const ScoreDoc& doc) {
  UnfoldResult result;
  result.doc.source_name = doc.source_name;
  if (doc.parts.empty()) return result;

  const Part& lead = doc.parts.front();
  for (const Measure& m : lead.measures) {
    if (m.has_jump) {
      result.warnings.push_back(unfold_warning(doc, lead, m, codes::kJumpNotUnfolded,
                                               "da capo / dal segno / coda jump is not unfolded"));
    }
  }

  auto order = playback_order(lead);
  if (!order) {
    const Measure* where = nullptr;
    for (const Measure& m : lead.measures) {
      if (m.repeat.forward) where = &m;
    }
    if (where == nullptr && !lead.measures.empty()) where = &lead.measures.front();
    if (where != nullptr) {
      result.warnings.push_back(unfold_warning(doc, lead, *where, codes::kUnbalancedRepeat,
                                               "repeat barlines do not pair up; repeats left folded"));
    }
    order.emplace(lead.measures.size());
    for (std::size_t i = 0; i < order->size(); ++i) (*order)[i] = i;
  }

  for (const Part& part : doc.parts) {
    Part unfolded;
    unfolded.id = part.id;
    unfolded.measures.reserve(order->size());
    for (std::size_t index : *order) {
      if (index >= part.measures.size()) continue;
      Measure copy = part.measures[index];
      copy.repeat = RepeatMarks{};
      unfolded.measures.push_back(std::move(copy));
    }
    result.doc.parts.push_back(std::move(unfolded));
  }
  return result;
}

}  // namespace scorelint
