#include "scorelint/scorelint.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "scorelint/config.hpp"
#include "scorelint/error.hpp"
#include "scorelint/pipeline.hpp"
#include "scorelint/report.hpp"
#include "scorelint/stats.hpp"

struct sl_options {
  scorelint::CheckConfig config;
};

struct sl_report {
  scorelint::ScoreResult result;
  std::string rendered;
};

struct sl_corpus {
  std::vector<scorelint::ScoreSummary> scores;
  std::vector<scorelint::ParseFailure> failures;
  std::string rendered;
};

namespace {

thread_local std::string last_error;

sl_status fail(sl_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

sl_status status_of(scorelint::ErrorKind kind) {
  using scorelint::ErrorKind;
  switch (kind) {
    case ErrorKind::InvalidArgument: return SL_ERR_INVALID_ARGUMENT;
    case ErrorKind::Io: return SL_ERR_IO;
    case ErrorKind::Container: return SL_ERR_CONTAINER;
    case ErrorKind::Parse: return SL_ERR_PARSE;
    case ErrorKind::UnsupportedDocument: return SL_ERR_UNSUPPORTED;
    case ErrorKind::IllFormedDocument: return SL_ERR_ILL_FORMED;
  }
  return SL_ERR_INTERNAL;
}

template <class F>
sl_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const scorelint::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SL_ERR_INTERNAL, "unknown failure");
  }
}

void fill(const scorelint::StageStats& s, sl_stage_stats* out) {
  if (out == nullptr) return;
  out->scores = s.scores;
  out->flagged_scores = s.flagged_scores;
  out->bars = s.bars;
  out->flagged_bars = s.flagged_bars;
  out->has_median = s.median_flagged_bars.has_value() ? 1 : 0;
  out->median_num = s.median_flagged_bars ? s.median_flagged_bars->numerator() : 0;
  out->median_den = s.median_flagged_bars ? s.median_flagged_bars->denominator() : 1;
}

}  // namespace

extern "C" {

const char* sl_version(void) { return "0.1.0"; }

const char* sl_status_name(sl_status status) {
  switch (status) {
    case SL_OK: return "ok";
    case SL_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SL_ERR_IO: return "io-error";
    case SL_ERR_CONTAINER: return "container-error";
    case SL_ERR_PARSE: return "parse-failure";
    case SL_ERR_UNSUPPORTED: return "unsupported-document";
    case SL_ERR_ILL_FORMED: return "ill-formed-document";
    case SL_ERR_INTERNAL: return "internal-error";
  }
  return "unknown-status";
}

const char* sl_last_error_message(void) { return last_error.c_str(); }

sl_status sl_options_create(sl_options** out) {
  if (out == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = new sl_options();
    return SL_OK;
  });
}

void sl_options_destroy(sl_options* options) { delete options; }

sl_status sl_options_set_flag(sl_options* options, sl_flag flag, int value) {
  if (options == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "options is null");
  scorelint::CheckConfig& c = options->config;
  const bool on = value != 0;
  switch (flag) {
    case SL_FLAG_PIANO_RULES: c.piano_rules = on; break;
    case SL_FLAG_ALLOW_OVERFLOW: c.allow_overflow = on; break;
    case SL_FLAG_ALLOW_NESTED_TUPLETS: c.allow_nested_tuplets = on; break;
    case SL_FLAG_FORCE_CONTEXTUAL: c.force_contextual = on; break;
    case SL_FLAG_SINGLE_PART: c.single_part = on; break;
    case SL_FLAG_DUMP_TOKENS: c.dump_tokens = on; break;
    case SL_FLAG_DUMP_STATE: c.dump_state = on; break;
    default: return fail(SL_ERR_INVALID_ARGUMENT, "unknown flag " + std::to_string(static_cast<int>(flag)));
  }
  return SL_OK;
}

sl_status sl_options_set_min_unit(sl_options* options, const char* note_type) {
  if (options == nullptr || note_type == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  const auto type = scorelint::parse_note_type(note_type);
  if (!type) return fail(SL_ERR_INVALID_ARGUMENT, std::string("unknown note type '") + note_type + "'");
  options->config.min_unit = scorelint::base_quarters(*type);
  return SL_OK;
}

sl_status sl_options_set_stages(sl_options* options, sl_stage_selection stages) {
  if (options == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "options is null");
  switch (stages) {
    case SL_STAGES_INDIVIDUAL: options->config.stage = scorelint::StageSelection::Individual; break;
    case SL_STAGES_CONTEXTUAL: options->config.stage = scorelint::StageSelection::Contextual; break;
    case SL_STAGES_ALL: options->config.stage = scorelint::StageSelection::All; break;
    default: return fail(SL_ERR_INVALID_ARGUMENT, "unknown stage selection");
  }
  return SL_OK;
}

sl_status sl_validate_file(const char* path, const sl_options* options, sl_report** out) {
  if (path == nullptr || out == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const scorelint::CheckConfig config = options ? options->config : scorelint::CheckConfig{};
    auto* r = new sl_report();
    try {
      r->result = scorelint::validate_file(path, config);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
    return SL_OK;
  });
}

sl_status sl_validate_buffer(const char* data, size_t size, const char* name, const sl_options* options,
                             sl_report** out) {
  if ((data == nullptr && size > 0) || out == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const scorelint::CheckConfig config = options ? options->config : scorelint::CheckConfig{};
    auto* r = new sl_report();
    try {
      r->result = scorelint::validate_bytes(std::string_view(data, size), name ? name : "", config);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
    return SL_OK;
  });
}

void sl_report_destroy(sl_report* report) { delete report; }

size_t sl_report_diagnostic_count(const sl_report* report) {
  return report ? report->result.diagnostics.size() : 0;
}

size_t sl_report_error_count(const sl_report* report) { return report ? report->result.error_count() : 0; }

int sl_report_contextual_skipped(const sl_report* report) {
  return report && report->result.contextual_skipped ? 1 : 0;
}

sl_status sl_report_diagnostic(const sl_report* report, size_t index, sl_diagnostic_view* out) {
  if (report == nullptr || out == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->result.diagnostics.size()) return fail(SL_ERR_INVALID_ARGUMENT, "index out of range");
  const scorelint::Diagnostic& d = report->result.diagnostics[index];
  out->code = d.code.c_str();
  out->stage = d.stage == scorelint::Stage::Individual ? SL_STAGE_INDIVIDUAL : SL_STAGE_CONTEXTUAL;
  out->severity = d.severity == scorelint::Severity::Error ? SL_SEVERITY_ERROR : SL_SEVERITY_WARNING;
  out->part = d.location.part.c_str();
  out->measure = d.location.measure.c_str();
  out->measure_index = d.location.measure_index;
  out->voice = d.location.voice;
  out->onset_num = d.location.onset.numerator();
  out->onset_den = d.location.onset.denominator();
  out->message = d.message.c_str();
  return SL_OK;
}

const char* sl_report_render(sl_report* report, sl_format format) {
  if (report == nullptr) return "";
  if (format == SL_FORMAT_JSON) {
    report->rendered = scorelint::render_json(
        {report->result.file, report->result.diagnostics, report->result.contextual_skipped});
  } else {
    report->rendered = scorelint::render_text(report->result.diagnostics);
  }
  return report->rendered.c_str();
}

const char* sl_report_token_dump(const sl_report* report) { return report ? report->result.token_dump.c_str() : ""; }

const char* sl_report_state_trace(const sl_report* report) {
  return report ? report->result.state_trace.c_str() : "";
}

sl_status sl_corpus_create(sl_corpus** out) {
  if (out == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = new sl_corpus();
    return SL_OK;
  });
}

void sl_corpus_destroy(sl_corpus* corpus) { delete corpus; }

sl_status sl_corpus_add_report(sl_corpus* corpus, const sl_report* report) {
  if (corpus == nullptr || report == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    corpus->scores.push_back(scorelint::summarize(report->result));
    return SL_OK;
  });
}

sl_status sl_corpus_add_failure(sl_corpus* corpus, const char* file, const char* message) {
  if (corpus == nullptr || file == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    corpus->failures.push_back({file, message ? message : ""});
    return SL_OK;
  });
}

sl_status sl_corpus_stats(const sl_corpus* corpus, sl_stage_stats* individual, sl_stage_stats* contextual) {
  if (corpus == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "corpus is null");
  return guarded([&] {
    const scorelint::CorpusStats s = scorelint::aggregate(corpus->scores);
    fill(s.individual, individual);
    fill(s.contextual, contextual);
    return SL_OK;
  });
}

size_t sl_corpus_failure_count(const sl_corpus* corpus) { return corpus ? corpus->failures.size() : 0; }

const char* sl_corpus_render_table(sl_corpus* corpus) {
  if (corpus == nullptr) return "";
  corpus->rendered = scorelint::render_stats_table(scorelint::aggregate(corpus->scores, corpus->failures));
  return corpus->rendered.c_str();
}

const char* sl_corpus_render_csv(sl_corpus* corpus) {
  if (corpus == nullptr) return "";
  corpus->rendered = scorelint::render_stats_csv(corpus->scores);
  return corpus->rendered.c_str();
}

}  // extern "C"
