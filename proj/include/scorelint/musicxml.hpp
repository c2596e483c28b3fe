#pragma once

#include <string>
#include <string_view>

#include "scorelint/score.hpp"

namespace scorelint {

/**
 * Parses a score-partwise MusicXML document.
 *
 * <divisions> and <time> are carried forward from the last <attributes> that
 * set them (4/4 and divisions 1 until then). Note onsets are computed by
 * replaying the measure cursor: notes advance it by their <duration>, chord
 * continuations reuse the previous note's onset, <backup> rewinds and
 * <forward> advances. Negative onsets are kept.
 *
 * Errors (thrown as scorelint::Error):
 *  - Parse: the bytes are not well-formed XML.
 *  - UnsupportedDocument: the root is not <score-partwise>.
 *  - IllFormedDocument: no parts, non-integer durations, more than 4 dots,
 *    zero <divisions>, or non-positive time-modification counts.
 */
ScoreDoc parse_musicxml(std::string_view bytes, std::string source_name = {});

}  // namespace scorelint
