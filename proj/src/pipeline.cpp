#include "scorelint/pipeline.hpp"

#include <algorithm>

#include "scorelint/container.hpp"
#include "scorelint/individual.hpp"
#include "scorelint/machine.hpp"
#include "scorelint/musicxml.hpp"
#include "scorelint/report.hpp"
#include "scorelint/tokenizer.hpp"
#include "scorelint/unfold.hpp"

namespace scorelint {

namespace {

std::size_t measure_count(const ScoreDoc& doc) {
  std::size_t n = 0;
  for (const Part& p : doc.parts) n = std::max(n, p.measures.size());
  return n;
}

void run_contextual_stage(const ScoreDoc& doc, const CheckConfig& config, ScoreResult& out) {
  UnfoldResult unfolded = unfold_repeats(doc);
  out.unfolded_measures = measure_count(unfolded.doc);
  for (auto& d : unfolded.warnings) out.diagnostics.push_back(std::move(d));

  if (config.single_part && doc.parts.size() > 1) {
    Diagnostic d;
    d.code = std::string(codes::kMultiplePartsUnsupported);
    d.stage = Stage::Contextual;
    d.severity = Severity::Error;
    d.location.file = doc.source_name;
    d.location.part = doc.parts[1].id;
    d.message = "score has " + std::to_string(doc.parts.size()) + " parts; only single-part scores are accepted";
    d.data = {{"parts", static_cast<std::int64_t>(doc.parts.size())}};
    out.diagnostics.push_back(std::move(d));
    return;
  }

  out.contextual_run = true;
  for (std::size_t p = 0; p < unfolded.doc.parts.size(); ++p) {
    PartTokens tokens = tokenize_part(unfolded.doc, p, config);
    for (auto& d : tokens.diagnostics) out.diagnostics.push_back(std::move(d));
    if (config.dump_tokens) out.token_dump += "# part " + tokens.part_id + "\n" + dump_tokens(tokens.sequence);
    ContextualResult r = run_contextual(tokens.sequence, config, doc.source_name);
    for (auto& d : r.diagnostics) out.diagnostics.push_back(std::move(d));
    if (config.dump_state) out.state_trace += "# part " + tokens.part_id + "\n" + r.trace;
  }
}

}  // namespace

ScoreResult validate_document(const ScoreDoc& doc, const CheckConfig& config) {
  ScoreResult out;
  out.file = doc.source_name;
  out.original_measures = measure_count(doc);

  bool clean = true;
  if (config.stage != StageSelection::Contextual) {
    out.diagnostics = run_individual(doc, config);
    clean = count_errors(out.diagnostics) == 0;
  }
  if (config.stage != StageSelection::Individual) {
    if (clean || config.force_contextual || config.stage == StageSelection::Contextual) {
      run_contextual_stage(doc, config, out);
    } else {
      out.contextual_skipped = true;
    }
  }
  sort_diagnostics(out.diagnostics);
  return out;
}

ScoreResult validate_bytes(std::string_view bytes, const std::string& source_name, const CheckConfig& config) {
  return validate_document(parse_musicxml(bytes, source_name), config);
}

ScoreResult validate_file(const std::filesystem::path& path, const CheckConfig& config) {
  return validate_bytes(open_container(path), path.string(), config);
}

}  // namespace scorelint
