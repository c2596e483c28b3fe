#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scorelint/diagnostic.hpp"

namespace scorelint {

/// Stable order used by every renderer: file, measure position, onset, code.
void sort_diagnostics(std::vector<Diagnostic>& diags);

/// One line per diagnostic:
///   file:measure:voice: severity code — message
std::string render_text(std::vector<Diagnostic> diags);

struct JsonReport {
  std::string file;
  std::vector<Diagnostic> diagnostics;
  bool contextual_skipped = false;
};

/// Single-line JSON document (schema version 1). Rationals are written as
/// {"num":n,"den":d} objects, never as floats.
std::string render_json(const JsonReport& report);

/// Inverse of render_json. Throws Error(Parse) on malformed input.
JsonReport parse_json_report(std::string_view text);

}  // namespace scorelint
