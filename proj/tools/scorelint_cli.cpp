// scorelint command-line front end. Talks to the library through the C API only.
#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "scorelint/scorelint.h"

namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string format = "text";
  std::string min_unit = "128th";
  bool piano_rules = true;
  bool allow_overflow = false;
  bool allow_nested_tuplets = true;
  bool force_contextual = false;
  bool single_part = false;
  std::string stage = "all";
  bool dump_tokens = false;
  bool dump_state = false;
  unsigned jobs = 1;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--min-unit", f.min_unit, "Smallest rest used for skips and padding (note type)");
  cmd->add_flag("--piano-rules,!--no-piano-rules", f.piano_rules, "Forbid duplicate pitches in a chord (default on)");
  cmd->add_flag("--allow-overflow", f.allow_overflow, "Accept voices longer than the time signature");
  cmd->add_flag("--allow-nested-tuplets,!--no-allow-nested-tuplets", f.allow_nested_tuplets,
                "Accept nested tuplets silently (default on; off adds a warning per nested tuplet)");
  cmd->add_flag("--force-contextual", f.force_contextual, "Run the contextual stage even after individual errors");
  cmd->add_flag("--single-part", f.single_part, "Reject scores with more than one part");
  cmd->add_option("--stage", f.stage, "Stages to run")->check(CLI::IsMember({"individual", "contextual", "all"}));
  cmd->add_flag("--dump-tokens", f.dump_tokens, "Print the token sequence to stderr");
  cmd->add_flag("--dump-state", f.dump_state, "Print the state machine trace to stderr");
  cmd->add_option("--jobs,-j", f.jobs, "Files processed in parallel")->check(CLI::PositiveNumber);
}

struct OptionsDeleter {
  void operator()(sl_options* o) const { sl_options_destroy(o); }
};
struct ReportDeleter {
  void operator()(sl_report* r) const { sl_report_destroy(r); }
};
using OptionsPtr = std::unique_ptr<sl_options, OptionsDeleter>;
using ReportPtr = std::unique_ptr<sl_report, ReportDeleter>;

OptionsPtr make_options(const Flags& f) {
  sl_options* raw = nullptr;
  if (sl_options_create(&raw) != SL_OK) throw std::runtime_error(sl_last_error_message());
  OptionsPtr o(raw);
  sl_options_set_flag(raw, SL_FLAG_PIANO_RULES, f.piano_rules);
  sl_options_set_flag(raw, SL_FLAG_ALLOW_OVERFLOW, f.allow_overflow);
  sl_options_set_flag(raw, SL_FLAG_ALLOW_NESTED_TUPLETS, f.allow_nested_tuplets);
  sl_options_set_flag(raw, SL_FLAG_FORCE_CONTEXTUAL, f.force_contextual);
  sl_options_set_flag(raw, SL_FLAG_SINGLE_PART, f.single_part);
  sl_options_set_flag(raw, SL_FLAG_DUMP_TOKENS, f.dump_tokens);
  sl_options_set_flag(raw, SL_FLAG_DUMP_STATE, f.dump_state);
  if (sl_options_set_min_unit(raw, f.min_unit.c_str()) != SL_OK) throw std::runtime_error(sl_last_error_message());
  const sl_stage_selection stages = f.stage == "individual"   ? SL_STAGES_INDIVIDUAL
                                    : f.stage == "contextual" ? SL_STAGES_CONTEXTUAL
                                                              : SL_STAGES_ALL;
  sl_options_set_stages(raw, stages);
  return o;
}

bool is_score_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".xml" || ext == ".musicxml" || ext == ".mxl";
}

bool hidden_below(const fs::path& root, const fs::path& p) {
  for (const auto& part : fs::relative(p, root)) {
    const std::string s = part.string();
    if (!s.empty() && s[0] == '.' && s != "." && s != "..") return true;
  }
  return false;
}

std::vector<std::string> discover(const fs::path& root) {
  std::vector<std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied)) {
    if (!entry.is_regular_file() || !is_score_file(entry.path()) || hidden_below(root, entry.path())) continue;
    out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Outcome {
  ReportPtr report;
  std::string failure;  // set when the file could not be read
};

// Results come back in input order whatever the thread count.
std::vector<Outcome> run_all(const std::vector<std::string>& files, const sl_options* options, unsigned jobs) {
  std::vector<Outcome> out(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      sl_report* r = nullptr;
      const sl_status st = sl_validate_file(files[i].c_str(), options, &r);
      if (st == SL_OK) {
        out[i].report.reset(r);
      } else {
        out[i].failure = std::string(sl_status_name(st)) + ": " + sl_last_error_message();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

int validate_command(const std::vector<std::string>& paths, const Flags& flags) {
  std::vector<std::string> files;
  for (const auto& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      auto found = discover(p);
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  const OptionsPtr options = make_options(flags);
  const std::vector<Outcome> outcomes = run_all(files, options.get(), flags.jobs);

  bool any_failure = false;
  bool any_error = false;
  const sl_format format = flags.format == "json" ? SL_FORMAT_JSON : SL_FORMAT_TEXT;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (!o.report) {
      any_failure = true;
      std::cerr << files[i] << ": " << o.failure << '\n';
      continue;
    }
    if (flags.dump_tokens) std::cerr << sl_report_token_dump(o.report.get());
    if (flags.dump_state) std::cerr << sl_report_state_trace(o.report.get());
    std::cout << sl_report_render(o.report.get(), format);
    if (format == SL_FORMAT_JSON) std::cout << '\n';
    any_error = any_error || sl_report_error_count(o.report.get()) > 0;
  }
  std::cout.flush();
  if (any_failure) return 2;
  return any_error ? 1 : 0;
}

int stats_command(const std::string& dir, const Flags& flags, const std::optional<std::string>& csv_path) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    std::cerr << dir << ": not a directory\n";
    return 2;
  }
  const std::vector<std::string> files = discover(dir);
  const OptionsPtr options = make_options(flags);
  const std::vector<Outcome> outcomes = run_all(files, options.get(), flags.jobs);

  sl_corpus* raw = nullptr;
  if (sl_corpus_create(&raw) != SL_OK) throw std::runtime_error(sl_last_error_message());
  std::unique_ptr<sl_corpus, void (*)(sl_corpus*)> corpus(raw, sl_corpus_destroy);
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (outcomes[i].report) {
      sl_corpus_add_report(raw, outcomes[i].report.get());
    } else {
      sl_corpus_add_failure(raw, files[i].c_str(), outcomes[i].failure.c_str());
    }
  }
  std::cout << sl_corpus_render_table(raw);
  if (csv_path) {
    const std::string csv = sl_corpus_render_csv(raw);
    if (*csv_path == "-") {
      std::cout << '\n' << csv;
    } else {
      std::ofstream f(*csv_path, std::ios::binary);
      f << csv;
      if (!f) {
        std::cerr << *csv_path << ": cannot write CSV\n";
        return 2;
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks MusicXML scores for rhythm and voice consistency errors"};
  app.set_version_flag("--version", std::string(sl_version()));
  app.require_subcommand(1);

  Flags validate_flags;
  std::vector<std::string> paths;
  auto* validate = app.add_subcommand("validate", "Check score files (or directories of them)");
  add_common(validate, validate_flags);
  validate->add_option("paths", paths, "Score files (.xml, .musicxml, .mxl) or directories")->required();

  Flags stats_flags;
  std::string dir;
  std::optional<std::string> csv;
  auto* stats = app.add_subcommand("stats", "Summarize errors over a directory of scores");
  add_common(stats, stats_flags);
  stats->add_option("dir", dir, "Corpus directory")->required();
  stats->add_option("--csv", csv, "Write a per-score CSV to this file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return validate_command(paths, validate_flags);
    return stats_command(dir, stats_flags, csv);
  } catch (const std::exception& e) {
    std::cerr << "scorelint: " << e.what() << '\n';
    return 2;
  }
}
