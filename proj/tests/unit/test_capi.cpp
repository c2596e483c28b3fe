#include <doctest.h>

#include <cstring>
#include <string>

#include "fixtures.hpp"
#include "scorelint/scorelint.h"

namespace {

std::string fixture(const char* name) { return testsupport::fixture_path(name); }

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::strcmp(sl_status_name(SL_OK), "ok") == 0);
  CHECK(std::strcmp(sl_status_name(SL_ERR_PARSE), "parse-failure") == 0);
  CHECK(std::strcmp(sl_status_name(static_cast<sl_status>(99)), "unknown-status") == 0);
  CHECK(std::strlen(sl_version()) > 0);
}

TEST_CASE("null arguments are rejected, not dereferenced") {
  sl_report* r = nullptr;
  CHECK(sl_validate_file(nullptr, nullptr, &r) == SL_ERR_INVALID_ARGUMENT);
  CHECK(sl_validate_file("x.xml", nullptr, nullptr) == SL_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(sl_last_error_message()) > 0);
  CHECK(sl_validate_buffer(nullptr, 4, "x", nullptr, &r) == SL_ERR_INVALID_ARGUMENT);
  CHECK(sl_options_create(nullptr) == SL_ERR_INVALID_ARGUMENT);
  CHECK(sl_options_set_flag(nullptr, SL_FLAG_PIANO_RULES, 1) == SL_ERR_INVALID_ARGUMENT);
  CHECK(sl_report_diagnostic(nullptr, 0, nullptr) == SL_ERR_INVALID_ARGUMENT);
  CHECK(sl_report_diagnostic_count(nullptr) == 0);
  CHECK(std::strcmp(sl_report_render(nullptr, SL_FORMAT_TEXT), "") == 0);
  CHECK(sl_corpus_add_report(nullptr, nullptr) == SL_ERR_INVALID_ARGUMENT);
  sl_options_destroy(nullptr);
  sl_report_destroy(nullptr);
  sl_corpus_destroy(nullptr);
}

TEST_CASE("options validation") {
  sl_options* o = nullptr;
  REQUIRE(sl_options_create(&o) == SL_OK);
  CHECK(sl_options_set_min_unit(o, "32nd") == SL_OK);
  CHECK(sl_options_set_min_unit(o, "crotchet") == SL_ERR_INVALID_ARGUMENT);
  CHECK(sl_options_set_min_unit(o, nullptr) == SL_ERR_INVALID_ARGUMENT);
  CHECK(sl_options_set_flag(o, static_cast<sl_flag>(42), 1) == SL_ERR_INVALID_ARGUMENT);
  CHECK(sl_options_set_stages(o, static_cast<sl_stage_selection>(9)) == SL_ERR_INVALID_ARGUMENT);
  sl_options_destroy(o);
}

TEST_CASE("file errors map to statuses") {
  sl_report* r = nullptr;
  CHECK(sl_validate_file("/nonexistent/dir/x.xml", nullptr, &r) == SL_ERR_IO);
  CHECK(r == nullptr);
  const char junk[] = "<score-partwise><part";
  CHECK(sl_validate_buffer(junk, sizeof junk - 1, "j.xml", nullptr, &r) == SL_ERR_PARSE);
  const char timewise[] = "<score-timewise/>";
  CHECK(sl_validate_buffer(timewise, sizeof timewise - 1, "t.xml", nullptr, &r) == SL_ERR_UNSUPPORTED);
  const char empty[] = "<score-partwise/>";
  CHECK(sl_validate_buffer(empty, sizeof empty - 1, "e.xml", nullptr, &r) == SL_ERR_ILL_FORMED);
  CHECK(std::string(sl_last_error_message()).size() > 0);
}

TEST_CASE("report views over the two-voice backup fixture") {
  sl_report* r = nullptr;
  const std::string path = fixture("two_voice_backup.xml");
  REQUIRE(sl_validate_file(path.c_str(), nullptr, &r) == SL_OK);
  CHECK(sl_report_error_count(r) == 4);
  CHECK(sl_report_diagnostic_count(r) == 4);
  CHECK(sl_report_contextual_skipped(r) == 1);
  sl_diagnostic_view v{};
  REQUIRE(sl_report_diagnostic(r, 0, &v) == SL_OK);
  CHECK(std::strcmp(v.code, "DurationMismatch") == 0);
  CHECK(v.stage == SL_STAGE_INDIVIDUAL);
  CHECK(v.severity == SL_SEVERITY_ERROR);
  CHECK(std::strcmp(v.part, "P1") == 0);
  CHECK(v.onset_den >= 1);
  CHECK(sl_report_diagnostic(r, 4, &v) == SL_ERR_INVALID_ARGUMENT);

  const std::string text = sl_report_render(r, SL_FORMAT_TEXT);
  CHECK(text.find("DurationMismatch") != std::string::npos);
  const std::string json = sl_report_render(r, SL_FORMAT_JSON);
  CHECK(json.find("\"contextual_skipped\":true") != std::string::npos);
  sl_report_destroy(r);
}

TEST_CASE("stage selection and dumps through options") {
  sl_options* o = nullptr;
  REQUIRE(sl_options_create(&o) == SL_OK);
  REQUIRE(sl_options_set_stages(o, SL_STAGES_INDIVIDUAL) == SL_OK);
  sl_report* r = nullptr;
  const std::string overlap = fixture("voice_overlap.xml");
  REQUIRE(sl_validate_file(overlap.c_str(), o, &r) == SL_OK);
  CHECK(sl_report_error_count(r) == 0);
  sl_report_destroy(r);

  REQUIRE(sl_options_set_stages(o, SL_STAGES_ALL) == SL_OK);
  REQUIRE(sl_options_set_flag(o, SL_FLAG_DUMP_TOKENS, 1) == SL_OK);
  REQUIRE(sl_options_set_flag(o, SL_FLAG_DUMP_STATE, 1) == SL_OK);
  REQUIRE(sl_validate_file(overlap.c_str(), o, &r) == SL_OK);
  CHECK(sl_report_error_count(r) == 1);
  CHECK(std::string(sl_report_token_dump(r)).find("B4 dotted eighth") != std::string::npos);
  CHECK(std::string(sl_report_state_trace(r)).find("reject MeasureOverflow") != std::string::npos);
  sl_report_destroy(r);

  REQUIRE(sl_options_set_flag(o, SL_FLAG_ALLOW_OVERFLOW, 1) == SL_OK);
  REQUIRE(sl_validate_file(overlap.c_str(), o, &r) == SL_OK);
  CHECK(sl_report_error_count(r) == 0);
  sl_report_destroy(r);
  sl_options_destroy(o);
}

TEST_CASE("corpus statistics") {
  sl_corpus* c = nullptr;
  REQUIRE(sl_corpus_create(&c) == SL_OK);
  for (const char* name : {"clean.xml", "voice_overlap.xml", "two_voice_backup.xml"}) {
    sl_report* r = nullptr;
    const std::string path = fixture(name);
    REQUIRE(sl_validate_file(path.c_str(), nullptr, &r) == SL_OK);
    CHECK(sl_corpus_add_report(c, r) == SL_OK);
    sl_report_destroy(r);  // the corpus keeps its own summary
  }
  CHECK(sl_corpus_add_failure(c, "broken.xml", "parse-failure: oops") == SL_OK);
  sl_stage_stats ind{}, ctx{};
  REQUIRE(sl_corpus_stats(c, &ind, &ctx) == SL_OK);
  CHECK(ind.scores == 3);
  CHECK(ind.flagged_scores == 1);
  CHECK(ind.flagged_bars == 1);  // all four errors sit in measure 2
  CHECK(ind.has_median == 1);
  CHECK(ind.median_num == 1);
  CHECK(ctx.scores == 2);
  CHECK(ctx.flagged_scores == 1);
  CHECK(sl_corpus_failure_count(c) == 1);
  const std::string table = sl_corpus_render_table(c);
  CHECK(table.find("broken.xml") != std::string::npos);
  const std::string csv = sl_corpus_render_csv(c);
  CHECK(csv.rfind("file,", 0) == 0);
  sl_corpus_destroy(c);
}
