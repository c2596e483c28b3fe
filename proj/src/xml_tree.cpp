#include "xml_tree.hpp"

#include <expat.h>

#include <climits>

#include "scorelint/error.hpp"

namespace scorelint::detail {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n";
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

struct Builder {
  XML_Parser parser = nullptr;
  std::unique_ptr<XmlNode> root;
  std::vector<XmlNode*> stack;
};

void on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto* b = static_cast<Builder*>(user);
  auto node = std::make_unique<XmlNode>();
  node->name = name;
  node->line = static_cast<int>(XML_GetCurrentLineNumber(b->parser));
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    node->attributes.emplace_back(attrs[i], attrs[i + 1]);
  }
  XmlNode* raw = node.get();
  if (b->stack.empty()) {
    b->root = std::move(node);
  } else {
    b->stack.back()->children.push_back(std::move(node));
  }
  b->stack.push_back(raw);
}

void on_end(void* user, const XML_Char*) { static_cast<Builder*>(user)->stack.pop_back(); }

void on_text(void* user, const XML_Char* s, int len) {
  auto* b = static_cast<Builder*>(user);
  if (!b->stack.empty()) b->stack.back()->text.append(s, static_cast<std::size_t>(len));
}

}  // namespace

const XmlNode* XmlNode::child(std::string_view child_name) const {
  for (const auto& c : children) {
    if (c->name == child_name) return c.get();
  }
  return nullptr;
}

const std::string* XmlNode::attribute(std::string_view attr_name) const {
  for (const auto& [k, v] : attributes) {
    if (k == attr_name) return &v;
  }
  return nullptr;
}

std::string XmlNode::child_text(std::string_view child_name) const {
  const XmlNode* c = child(child_name);
  return c ? c->trimmed_text() : std::string{};
}

std::string XmlNode::trimmed_text() const { return std::string(trim(text)); }

std::unique_ptr<XmlNode> parse_xml(std::string_view bytes) {
  if (bytes.size() > static_cast<std::size_t>(INT_MAX)) {
    throw Error(ErrorKind::Parse, "document larger than 2 GiB");
  }
  Builder b;
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(XML_ParserCreate(nullptr),
                                                                                       &XML_ParserFree);
  if (!parser) throw Error(ErrorKind::Parse, "cannot allocate XML parser");
  b.parser = parser.get();
  XML_SetUserData(parser.get(), &b);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE) == XML_STATUS_ERROR) {
    throw Error(ErrorKind::Parse, std::string("XML syntax error at line ") +
                                      std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
                                      XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!b.root) throw Error(ErrorKind::Parse, "document has no root element");
  return std::move(b.root);
}

}  // namespace scorelint::detail
