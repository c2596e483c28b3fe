#pragma once

#include "scorelint/rational.hpp"

namespace scorelint {

enum class StageSelection { Individual, Contextual, All };

struct CheckConfig {
  /// Smallest rest allowed when decomposing skips and padding voices, in
  /// quarters (a 128th note by default).
  Rational min_unit{1, 32};
  /// Forbid duplicate pitches inside one chord.
  bool piano_rules = true;
  /// Accept voices longer than the time signature allows.
  bool allow_overflow = false;
  /// When false, every nested tuplet also produces a NestedTuplet warning.
  bool allow_nested_tuplets = true;
  /// Run the contextual stage even when the individual stage found errors.
  bool force_contextual = false;
  /// Reject multi-part scores in the contextual stage.
  bool single_part = false;
  StageSelection stage = StageSelection::All;
  bool dump_tokens = false;
  bool dump_state = false;
};

}  // namespace scorelint
