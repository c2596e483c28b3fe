#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "scorelint/container.hpp"
#include "scorelint/error.hpp"

using namespace scorelint;

namespace {

std::string write(const std::string& dir, const std::string& name, const std::string& bytes) {
  const std::string path = dir + "/" + name;
  std::ofstream(path, std::ios::binary) << bytes;
  return path;
}

ErrorKind kind_of(const std::string& path) {
  try {
    open_container(path);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("plain files are returned unchanged") {
  const std::string path = testsupport::fixture_path("clean.xml");
  CHECK(open_container(path) == testsupport::read_file(path));
}

TEST_CASE("mxl archives yield the rootfile named by container.xml") {
  const std::string dir = testsupport::temp_dir("mxl");
  const std::string score = testsupport::read_file(testsupport::fixture_path("two_voice_backup.xml"));
  CHECK(open_container(write(dir, "a.mxl", testsupport::make_mxl(score, "music/two_voice_backup.xml"))) == score);
  // detection by signature as well as by extension
  CHECK(open_container(write(dir, "a.bin", testsupport::make_mxl(score))) == score);
  // stored (uncompressed) entries
  const std::string container =
      "<container><rootfiles><rootfile full-path=\"s.xml\"/></rootfiles></container>";
  const std::string stored = testsupport::make_zip({{"META-INF/container.xml", container, false}, {"s.xml", score, false}});
  CHECK(extract_mxl_rootfile(stored) == score);
}

TEST_CASE("container errors") {
  const std::string dir = testsupport::temp_dir("mxl-bad");
  CHECK(kind_of(dir + "/missing.xml") == ErrorKind::Io);
  CHECK(kind_of(dir) == ErrorKind::Io);

  const std::string no_container = testsupport::make_zip({{"score.xml", "<score-partwise/>", true}});
  CHECK(kind_of(write(dir, "nc.mxl", no_container)) == ErrorKind::Container);

  const std::string container = "<container><rootfiles><rootfile full-path=\"gone.xml\"/></rootfiles></container>";
  const std::string dangling = testsupport::make_zip({{"META-INF/container.xml", container, true}});
  CHECK(kind_of(write(dir, "d.mxl", dangling)) == ErrorKind::Container);

  CHECK(kind_of(write(dir, "junk.mxl", "PK\x03\x04 this is not a zip")) == ErrorKind::Container);

  // flip a byte of a stored entry so only the CRC can notice
  std::string corrupt = testsupport::make_zip(
      {{"META-INF/container.xml", "<container><rootfiles><rootfile full-path=\"s.xml\"/></rootfiles></container>", false},
       {"s.xml", "<score-partwise/>", false}});
  corrupt[corrupt.find("<score-partwise/>") + 3] = 'X';
  CHECK(kind_of(write(dir, "c.mxl", corrupt)) == ErrorKind::Container);
}
