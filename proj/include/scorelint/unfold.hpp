#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scorelint/diagnostic.hpp"
#include "scorelint/score.hpp"

namespace scorelint {

struct UnfoldResult {
  ScoreDoc doc;
  std::vector<Diagnostic> warnings;  // UnbalancedRepeat, JumpNotUnfolded
};

/// Playback order of measure indices for one part, following repeat
/// barlines and numbered endings. Returns std::nullopt when the repeat marks
/// do not pair up (a forward repeat that is never closed, or two forward
/// repeats in a row).
std::optional<std::vector<std::size_t>> playback_order(const Part& part);

/**
 * Expands repeats into linear playback order.
 *
 * The order is computed from the first part and applied to every part so
 * parts stay aligned. Copied measures keep their number_label and
 * source_index; repeat marks are cleared, so unfolding the result again is
 * the identity. Unbalanced marks produce an UnbalancedRepeat warning and an
 * unchanged score. Da capo / dal segno / coda instructions are not followed
 * (JumpNotUnfolded warning).
 */
UnfoldResult unfold_repeats(const ScoreDoc& doc);

}  // namespace scorelint
