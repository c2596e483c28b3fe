#pragma once

#include <string>
#include <utility>
#include <vector>

namespace testsupport {

/// Directory holding the XML fixtures (set by the build).
std::string fixture_path(const std::string& name);

std::string read_file(const std::string& path);

/// Wraps measure elements in a single-part score-partwise document.
std::string partwise(const std::string& measures, const std::string& part_id = "P1");

/// Same with several parts; each entry is (part id, measures).
std::string partwise_multi(const std::vector<std::pair<std::string, std::string>>& parts);

struct ZipEntry {
  std::string name;
  std::string data;
  bool deflate = true;
};

/// Minimal ZIP archive writer (local headers, central directory, end record).
std::string make_zip(const std::vector<ZipEntry>& entries);

/// A .mxl archive whose container.xml points at `rootfile`.
std::string make_mxl(const std::string& score_xml, const std::string& rootfile = "score.xml");

/// Fresh empty directory under the system temp dir.
std::string temp_dir(const std::string& tag);

}  // namespace testsupport
