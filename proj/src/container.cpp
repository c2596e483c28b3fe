#include "scorelint/container.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <vector>

#include "scorelint/error.hpp"
#include "xml_tree.hpp"

namespace scorelint {

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;
constexpr std::size_t kEndOfCentralDirSize = 22;
constexpr std::size_t kCentralHeaderSize = 46;
constexpr std::size_t kLocalHeaderSize = 30;
constexpr std::uint32_t kMaxEntrySize = 1u << 29;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Container, what); }

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::uint16_t u16(std::size_t at) const {
    need(at, 2);
    return static_cast<std::uint16_t>(byte(at) | byte(at + 1) << 8);
  }
  std::uint32_t u32(std::size_t at) const {
    need(at, 4);
    return static_cast<std::uint32_t>(byte(at)) | static_cast<std::uint32_t>(byte(at + 1)) << 8 |
           static_cast<std::uint32_t>(byte(at + 2)) << 16 | static_cast<std::uint32_t>(byte(at + 3)) << 24;
  }
  std::string_view slice(std::size_t at, std::size_t len) const {
    need(at, len);
    return data_.substr(at, len);
  }
  std::size_t size() const { return data_.size(); }

 private:
  unsigned byte(std::size_t at) const { return static_cast<unsigned char>(data_[at]); }
  void need(std::size_t at, std::size_t len) const {
    if (at > data_.size() || len > data_.size() - at) fail("truncated archive");
  }

  std::string_view data_;
};

struct Entry {
  std::string name;
  std::uint16_t method = 0;
  std::uint32_t crc = 0;
  std::uint32_t compressed_size = 0;
  std::uint32_t uncompressed_size = 0;
  std::uint32_t local_offset = 0;
};

std::vector<Entry> read_central_directory(const ByteReader& zip) {
  if (zip.size() < kEndOfCentralDirSize) fail("file too small to be an archive");
  // The end record sits in the last 64 KiB + 22 bytes (trailing comment).
  const std::size_t lowest = zip.size() > 0xFFFF + kEndOfCentralDirSize ? zip.size() - 0xFFFF - kEndOfCentralDirSize : 0;
  std::optional<std::size_t> eocd;
  for (std::size_t at = zip.size() - kEndOfCentralDirSize + 1; at-- > lowest;) {
    if (zip.u32(at) == kEndOfCentralDirSig) {
      eocd = at;
      break;
    }
  }
  if (!eocd) fail("end of central directory not found");

  const std::uint16_t count = zip.u16(*eocd + 10);
  const std::uint32_t dir_offset = zip.u32(*eocd + 16);
  if (count == 0xFFFF || dir_offset == 0xFFFFFFFF) fail("ZIP64 archives are not supported");

  std::vector<Entry> entries;
  std::size_t at = dir_offset;
  for (std::uint16_t i = 0; i < count; ++i) {
    if (zip.u32(at) != kCentralHeaderSig) fail("corrupt central directory");
    Entry e;
    e.method = zip.u16(at + 10);
    e.crc = zip.u32(at + 16);
    e.compressed_size = zip.u32(at + 20);
    e.uncompressed_size = zip.u32(at + 24);
    const std::uint16_t name_len = zip.u16(at + 28);
    const std::uint16_t extra_len = zip.u16(at + 30);
    const std::uint16_t comment_len = zip.u16(at + 32);
    e.local_offset = zip.u32(at + 42);
    e.name = std::string(zip.slice(at + kCentralHeaderSize, name_len));
    entries.push_back(std::move(e));
    at += kCentralHeaderSize + name_len + extra_len + comment_len;
  }
  return entries;
}

std::string inflate_raw(std::string_view compressed, std::size_t expected_size) {
  std::string out(expected_size, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) fail("cannot initialise inflate");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const auto produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected_size) fail("corrupt deflate stream");
  return out;
}

std::string read_entry(const ByteReader& zip, const Entry& e) {
  if (zip.u32(e.local_offset) != kLocalHeaderSig) fail("corrupt local header for " + e.name);
  const std::uint16_t name_len = zip.u16(e.local_offset + 26);
  const std::uint16_t extra_len = zip.u16(e.local_offset + 28);
  const std::string_view payload = zip.slice(e.local_offset + kLocalHeaderSize + name_len + extra_len, e.compressed_size);

  if (e.uncompressed_size > kMaxEntrySize) fail("entry " + e.name + " is implausibly large");

  std::string data;
  if (e.method == 0) {
    if (e.compressed_size != e.uncompressed_size) fail("stored entry size mismatch for " + e.name);
    data = std::string(payload);
  } else if (e.method == 8) {
    data = inflate_raw(payload, e.uncompressed_size);
  } else {
    fail("unsupported compression method " + std::to_string(e.method) + " for " + e.name);
  }
  const auto crc = crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size()));
  if (crc != e.crc) fail("checksum mismatch for " + e.name);
  return data;
}

const Entry* find_entry(const std::vector<Entry>& entries, std::string_view name) {
  auto it = std::find_if(entries.begin(), entries.end(), [&](const Entry& e) { return e.name == name; });
  return it == entries.end() ? nullptr : &*it;
}

std::string rootfile_path(std::string_view container_xml) {
  std::unique_ptr<detail::XmlNode> root;
  try {
    root = detail::parse_xml(container_xml);
  } catch (const Error& e) {
    fail(std::string("META-INF/container.xml: ") + e.what());
  }
  const detail::XmlNode* rootfiles = root->child("rootfiles");
  if (rootfiles == nullptr) fail("META-INF/container.xml has no <rootfiles>");
  // The first rootfile is the score; later ones are alternate renditions.
  for (const auto& rf : rootfiles->children) {
    if (rf->name != "rootfile") continue;
    if (const std::string* path = rf->attribute("full-path")) return *path;
  }
  fail("META-INF/container.xml names no rootfile");
}

bool looks_like_zip(std::string_view bytes) { return bytes.size() >= 4 && bytes.substr(0, 4) == "PK\x03\x04"; }

}  // namespace

std::string extract_mxl_rootfile(std::string_view archive) {
  const ByteReader zip(archive);
  const auto entries = read_central_directory(zip);
  const Entry* container = find_entry(entries, "META-INF/container.xml");
  if (container == nullptr) fail("archive has no META-INF/container.xml");
  const std::string path = rootfile_path(read_entry(zip, *container));
  const Entry* score = find_entry(entries, path);
  if (score == nullptr) fail("rootfile '" + path + "' missing from archive");
  return read_entry(zip, *score);
}

std::string open_container(const std::filesystem::path& path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) throw Error(ErrorKind::Io, path.string() + " is a directory");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw Error(ErrorKind::Io, "read error on " + path.string());

  if (path.extension() == ".mxl" || looks_like_zip(bytes)) return extract_mxl_rootfile(bytes);
  return bytes;
}

}  // namespace scorelint
