#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace scorelint {

/// Reads a score file and returns the MusicXML document bytes.
///
/// Plain files (.xml, .musicxml) are returned as-is. Compressed .mxl files
/// (or any file starting with a ZIP signature) are opened as archives: the
/// rootfile named by META-INF/container.xml is extracted and returned.
///
/// Throws Error(Io) when the file cannot be read and Error(Container) for a
/// malformed archive or a missing container/rootfile entry.
std::string open_container(const std::filesystem::path& path);

/// Archive half of open_container, for bytes already in memory.
std::string extract_mxl_rootfile(std::string_view archive);

}  // namespace scorelint
