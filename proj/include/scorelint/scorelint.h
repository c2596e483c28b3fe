/* C interface to the scorelint MusicXML checker.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions that can fail return an sl_status; on failure a description is
 * available from sl_last_error_message() on the same thread. Strings returned
 * by the library are owned by the handle they came from and stay valid until
 * that handle is destroyed or the same function is called again on it.
 */
#ifndef SCORELINT_H
#define SCORELINT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SL_API __declspec(dllexport)
#elif defined(__GNUC__)
#define SL_API __attribute__((visibility("default")))
#else
#define SL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sl_options sl_options;
typedef struct sl_report sl_report;
typedef struct sl_corpus sl_corpus;

typedef enum sl_status {
  SL_OK = 0,
  SL_ERR_INVALID_ARGUMENT = 1,
  SL_ERR_IO = 2,
  SL_ERR_CONTAINER = 3,
  SL_ERR_PARSE = 4,
  SL_ERR_UNSUPPORTED = 5,
  SL_ERR_ILL_FORMED = 6,
  SL_ERR_INTERNAL = 7
} sl_status;

typedef enum sl_flag {
  SL_FLAG_PIANO_RULES = 0,
  SL_FLAG_ALLOW_OVERFLOW = 1,
  SL_FLAG_ALLOW_NESTED_TUPLETS = 2,
  SL_FLAG_FORCE_CONTEXTUAL = 3,
  SL_FLAG_SINGLE_PART = 4,
  SL_FLAG_DUMP_TOKENS = 5,
  SL_FLAG_DUMP_STATE = 6
} sl_flag;

typedef enum sl_stage_selection { SL_STAGES_INDIVIDUAL = 0, SL_STAGES_CONTEXTUAL = 1, SL_STAGES_ALL = 2 } sl_stage_selection;

typedef enum sl_format { SL_FORMAT_TEXT = 0, SL_FORMAT_JSON = 1 } sl_format;

typedef enum sl_stage { SL_STAGE_INDIVIDUAL = 0, SL_STAGE_CONTEXTUAL = 1 } sl_stage;

typedef enum sl_severity { SL_SEVERITY_ERROR = 0, SL_SEVERITY_WARNING = 1 } sl_severity;

/* Borrowed view of one diagnostic; pointers live as long as the report. */
typedef struct sl_diagnostic_view {
  const char* code;
  sl_stage stage;
  sl_severity severity;
  const char* part;
  const char* measure;
  size_t measure_index;
  int voice;
  int64_t onset_num;
  int64_t onset_den;
  const char* message;
} sl_diagnostic_view;

typedef struct sl_stage_stats {
  size_t scores;
  size_t flagged_scores;
  size_t bars;
  size_t flagged_bars;
  int has_median;
  int64_t median_num;
  int64_t median_den;
} sl_stage_stats;

SL_API const char* sl_version(void);
SL_API const char* sl_status_name(sl_status status);
SL_API const char* sl_last_error_message(void);

/* options: defaults are min unit 128th, piano rules on, nested tuplets
 * allowed, everything else off, all stages. */
SL_API sl_status sl_options_create(sl_options** out);
SL_API void sl_options_destroy(sl_options* options);
SL_API sl_status sl_options_set_flag(sl_options* options, sl_flag flag, int value);
/* note type name as in MusicXML <type>, e.g. "128th", "32nd", "eighth" */
SL_API sl_status sl_options_set_min_unit(sl_options* options, const char* note_type);
SL_API sl_status sl_options_set_stages(sl_options* options, sl_stage_selection stages);

/* options may be NULL for defaults */
SL_API sl_status sl_validate_file(const char* path, const sl_options* options, sl_report** out);
SL_API sl_status sl_validate_buffer(const char* data, size_t size, const char* name, const sl_options* options,
                                    sl_report** out);

SL_API void sl_report_destroy(sl_report* report);
SL_API size_t sl_report_diagnostic_count(const sl_report* report);
SL_API size_t sl_report_error_count(const sl_report* report);
SL_API int sl_report_contextual_skipped(const sl_report* report);
SL_API sl_status sl_report_diagnostic(const sl_report* report, size_t index, sl_diagnostic_view* out);
SL_API const char* sl_report_render(sl_report* report, sl_format format);
SL_API const char* sl_report_token_dump(const sl_report* report);
SL_API const char* sl_report_state_trace(const sl_report* report);

SL_API sl_status sl_corpus_create(sl_corpus** out);
SL_API void sl_corpus_destroy(sl_corpus* corpus);
SL_API sl_status sl_corpus_add_report(sl_corpus* corpus, const sl_report* report);
SL_API sl_status sl_corpus_add_failure(sl_corpus* corpus, const char* file, const char* message);
SL_API sl_status sl_corpus_stats(const sl_corpus* corpus, sl_stage_stats* individual, sl_stage_stats* contextual);
SL_API size_t sl_corpus_failure_count(const sl_corpus* corpus);
SL_API const char* sl_corpus_render_table(sl_corpus* corpus);
SL_API const char* sl_corpus_render_csv(sl_corpus* corpus);

#ifdef __cplusplus
}
#endif

#endif
