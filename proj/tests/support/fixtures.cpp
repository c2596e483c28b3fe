#include "fixtures.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>
#include <zlib.h>

namespace testsupport {

std::string fixture_path(const std::string& name) { return std::string(SCORELINT_FIXTURE_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string partwise(const std::string& measures, const std::string& part_id) {
  return partwise_multi({{part_id, measures}});
}

std::string partwise_multi(const std::vector<std::pair<std::string, std::string>>& parts) {
  std::string xml = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<score-partwise version=\"4.0\">\n<part-list>\n";
  for (const auto& [id, _] : parts) xml += "<score-part id=\"" + id + "\"><part-name>" + id + "</part-name></score-part>\n";
  xml += "</part-list>\n";
  for (const auto& [id, measures] : parts) xml += "<part id=\"" + id + "\">\n" + measures + "</part>\n";
  return xml + "</score-partwise>\n";
}

namespace {

void put16(std::string& s, std::uint32_t v) {
  s += static_cast<char>(v & 0xff);
  s += static_cast<char>((v >> 8) & 0xff);
}

void put32(std::string& s, std::uint32_t v) {
  put16(s, v & 0xffff);
  put16(s, v >> 16);
}

std::string raw_deflate(const std::string& data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw std::runtime_error("deflateInit2 failed");
  }
  std::string out(deflateBound(&zs, static_cast<uLong>(data.size())), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw std::runtime_error("deflate failed");
  out.resize(zs.total_out);
  return out;
}

}  // namespace

std::string make_zip(const std::vector<ZipEntry>& entries) {
  std::string body;
  std::string central;
  for (const ZipEntry& e : entries) {
    const std::uint32_t crc =
        static_cast<std::uint32_t>(crc32(0, reinterpret_cast<const Bytef*>(e.data.data()), static_cast<uInt>(e.data.size())));
    const std::string payload = e.deflate ? raw_deflate(e.data) : e.data;
    const std::uint16_t method = e.deflate ? 8 : 0;
    const auto offset = static_cast<std::uint32_t>(body.size());

    put32(body, 0x04034b50);
    put16(body, 20);
    put16(body, 0);
    put16(body, method);
    put16(body, 0);
    put16(body, 0);
    put32(body, crc);
    put32(body, static_cast<std::uint32_t>(payload.size()));
    put32(body, static_cast<std::uint32_t>(e.data.size()));
    put16(body, static_cast<std::uint32_t>(e.name.size()));
    put16(body, 0);
    body += e.name;
    body += payload;

    put32(central, 0x02014b50);
    put16(central, 20);
    put16(central, 20);
    put16(central, 0);
    put16(central, method);
    put16(central, 0);
    put16(central, 0);
    put32(central, crc);
    put32(central, static_cast<std::uint32_t>(payload.size()));
    put32(central, static_cast<std::uint32_t>(e.data.size()));
    put16(central, static_cast<std::uint32_t>(e.name.size()));
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put32(central, 0);
    put32(central, offset);
    central += e.name;
  }
  std::string out = body + central;
  put32(out, 0x06054b50);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<std::uint32_t>(entries.size()));
  put16(out, static_cast<std::uint32_t>(entries.size()));
  put32(out, static_cast<std::uint32_t>(central.size()));
  put32(out, static_cast<std::uint32_t>(body.size()));
  put16(out, 0);
  return out;
}

std::string make_mxl(const std::string& score_xml, const std::string& rootfile) {
  const std::string container =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<container><rootfiles><rootfile full-path=\"" + rootfile +
      "\" media-type=\"application/vnd.recordare.musicxml+xml\"/></rootfiles></container>\n";
  return make_zip({{"mimetype", "application/vnd.recordare.musicxml", false},
                   {"META-INF/container.xml", container, true},
                   {rootfile, score_xml, true}});
}

std::string temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("scorelint-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace testsupport
