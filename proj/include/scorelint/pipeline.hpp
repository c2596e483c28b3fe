#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "scorelint/config.hpp"
#include "scorelint/diagnostic.hpp"
#include "scorelint/score.hpp"

namespace scorelint {

struct ScoreResult {
  std::string file;
  std::vector<Diagnostic> diagnostics;  // sorted with sort_diagnostics
  bool contextual_run = false;
  bool contextual_skipped = false;  // blocked by individual-stage errors
  std::size_t original_measures = 0;
  std::size_t unfolded_measures = 0;
  std::string token_dump;   // when config.dump_tokens
  std::string state_trace;  // when config.dump_state

  std::size_t error_count() const { return count_errors(diagnostics); }
};

/**
 * Runs the selected stages on a parsed score.
 *
 * The individual stage sees the score as written; the contextual stage sees
 * it with repeats unfolded, one token sequence per part. With
 * StageSelection::All the contextual stage only runs when the individual
 * stage found no errors, unless config.force_contextual is set.
 */
ScoreResult validate_document(const ScoreDoc& doc, const CheckConfig& config);

/// parse_musicxml + validate_document. Throws scorelint::Error for documents
/// that cannot be read.
ScoreResult validate_bytes(std::string_view bytes, const std::string& source_name, const CheckConfig& config);

/// open_container + validate_bytes. The file name in diagnostics is `path`
/// as given.
ScoreResult validate_file(const std::filesystem::path& path, const CheckConfig& config);

}  // namespace scorelint
