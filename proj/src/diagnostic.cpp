#include "scorelint/diagnostic.hpp"

#include <algorithm>

namespace scorelint {

std::string_view to_string(Stage stage) noexcept {
  return stage == Stage::Individual ? "individual" : "contextual";
}

std::string_view to_string(Severity severity) noexcept {
  return severity == Severity::Error ? "error" : "warning";
}

const DataValue* Diagnostic::field(std::string_view key) const {
  for (const auto& [k, v] : data) {
    if (k == key) return &v;
  }
  return nullptr;
}

bool operator==(const Location& a, const Location& b) {
  return a.file == b.file && a.part == b.part && a.measure == b.measure && a.measure_index == b.measure_index &&
         a.voice == b.voice && a.onset == b.onset;
}

bool operator==(const Diagnostic& a, const Diagnostic& b) {
  return a.code == b.code && a.stage == b.stage && a.severity == b.severity && a.location == b.location &&
         a.message == b.message && a.data == b.data;
}

std::size_t count_errors(const std::vector<Diagnostic>& diags) {
  return static_cast<std::size_t>(
      std::count_if(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; }));
}

}  // namespace scorelint
