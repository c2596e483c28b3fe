#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scorelint::detail {

// Minimal element tree built with expat. Comments, processing instructions
// and the DOCTYPE are dropped; character data is concatenated per element.
struct XmlNode {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;
  std::vector<std::unique_ptr<XmlNode>> children;
  int line = 0;

  const XmlNode* child(std::string_view child_name) const;
  const std::string* attribute(std::string_view attr_name) const;
  /// Trimmed text of the named child, or empty when absent.
  std::string child_text(std::string_view child_name) const;
  std::string trimmed_text() const;
};

/// Throws Error(Parse) on malformed XML, with expat's line number.
std::unique_ptr<XmlNode> parse_xml(std::string_view bytes);

}  // namespace scorelint::detail
