#include "scorelint/individual.hpp"

namespace scorelint {

namespace {

Diagnostic make(std::string_view code, Severity severity, const MeasureSite& site, int voice, std::int64_t onset_ticks,
                std::string message) {
  Diagnostic d;
  d.code = std::string(code);
  d.stage = Stage::Individual;
  d.severity = severity;
  d.location = {site.file, site.part, site.measure, site.measure_index, voice,
                ticks_to_quarters(onset_ticks, site.divisions)};
  d.message = std::move(message);
  return d;
}

std::string note_noun(const NoteEvent& e) { return e.rest ? "rest" : "note"; }

std::string min_unit_name(const Rational& min_unit) {
  for (int exp = static_cast<int>(NoteType::N1024th); exp <= static_cast<int>(NoteType::Maxima); ++exp) {
    const auto t = static_cast<NoteType>(exp);
    if (base_quarters(t) == min_unit) return std::string(note_type_name(t));
  }
  return min_unit.to_string() + "-quarter";
}

std::optional<Diagnostic> backup_bound(const BackupEvent& b, const MeasureSite& site) {
  const std::int64_t after = b.onset_ticks - b.ticks;
  if (after >= 0) return std::nullopt;
  const Rational at = ticks_to_quarters(b.onset_ticks, site.divisions);
  const Rational moved = ticks_to_quarters(b.ticks, site.divisions);
  Diagnostic d = make(codes::kSkipOutOfMeasure, Severity::Error, site, b.voice, b.onset_ticks,
                      "backup of " + moved.to_string() + " quarters at position " + at.to_string() +
                          " rewinds to " + (at - moved).to_string() + ", before the measure start");
  d.data = {{"ticks", b.ticks}, {"divisions", site.divisions}, {"position", at}, {"target", at - moved}};
  return d;
}

}  // namespace

MeasureSite MeasureSite::of(const ScoreDoc& doc, const Part& part, const Measure& m, std::size_t index) {
  return {doc.source_name, part.id, m.number_label, index, m.divisions, m.time};
}

std::optional<Diagnostic> check_event_duration(const NoteEvent& e, const MeasureSite& site) {
  const Rational timeline = ticks_to_quarters(e.ticks, site.divisions);

  if (e.grace) {
    if (e.ticks == 0) return std::nullopt;
    const std::string what = "grace " + (e.symbolic ? describe(*e.symbolic) + " " : std::string{}) + note_noun(e);
    Diagnostic d = make(codes::kDurationMismatch, Severity::Error, site, e.voice, e.onset_ticks,
                        what + ": symbol says 0, timeline says " + timeline.to_string() + " (quarters)");
    d.data = {{"theoretical", Rational(0)}, {"timeline", timeline}, {"ticks", e.ticks}, {"divisions", site.divisions}};
    return d;
  }

  if (e.full_measure_rest && (!e.symbolic || timeline == site.time.quarters())) return std::nullopt;

  if (!e.symbolic) {
    Diagnostic d = make(codes::kMissingSymbolicDuration, Severity::Warning, site, e.voice, e.onset_ticks,
                        note_noun(e) + " has no <type>; its timeline length " + timeline.to_string() +
                            " cannot be cross-checked");
    d.data = {{"timeline", timeline}, {"ticks", e.ticks}, {"divisions", site.divisions}};
    return d;
  }

  const Rational theoretical = quarters_of(*e.symbolic);
  if (theoretical == timeline) return std::nullopt;
  Diagnostic d = make(codes::kDurationMismatch, Severity::Error, site, e.voice, e.onset_ticks,
                      describe(*e.symbolic) + " " + note_noun(e) + ": symbol says " + theoretical.to_string() +
                          ", timeline says " + timeline.to_string() + " (quarters)");
  d.data = {{"theoretical", theoretical}, {"timeline", timeline}, {"ticks", e.ticks}, {"divisions", site.divisions}};
  return d;
}

std::optional<Diagnostic> check_skip_decomposable(const Event& skip, const MeasureSite& site,
                                                  const Rational& min_unit) {
  const bool is_backup = std::holds_alternative<BackupEvent>(skip);
  if (!is_backup && !std::holds_alternative<ForwardEvent>(skip)) return std::nullopt;
  const std::string kind = is_backup ? "backup" : "forward";
  const std::int64_t ticks = ticks_of(skip);
  const Rational q = ticks_to_quarters(ticks, site.divisions);

  if (ticks == 0) {
    Diagnostic d = make(codes::kDegenerateSkip, Severity::Warning, site, voice_of(skip), onset_of(skip),
                        kind + " with zero duration");
    d.data = {{"kind", kind}, {"ticks", ticks}, {"divisions", site.divisions}};
    return d;
  }
  if (is_decomposable(q, min_unit)) return std::nullopt;
  Diagnostic d = make(codes::kSuspiciousSkip, Severity::Error, site, voice_of(skip), onset_of(skip),
                      kind + " of " + std::to_string(ticks) + " ticks (" + q.to_string() +
                          " quarters) is not a sequence of rests down to a " + min_unit_name(min_unit));
  d.data = {{"kind", kind}, {"ticks", ticks}, {"divisions", site.divisions}, {"quarters", q}, {"min_unit", min_unit}};
  return d;
}

std::vector<Diagnostic> check_skip_bounds(const Measure& m, const MeasureSite& site) {
  std::vector<Diagnostic> out;
  for (const Event& e : m.events) {
    if (const auto* b = std::get_if<BackupEvent>(&e)) {
      if (auto d = backup_bound(*b, site)) out.push_back(std::move(*d));
    }
  }
  return out;
}

std::vector<Diagnostic> run_individual(const ScoreDoc& doc, const CheckConfig& config) {
  std::vector<Diagnostic> out;
  for (const Part& part : doc.parts) {
    for (std::size_t mi = 0; mi < part.measures.size(); ++mi) {
      const Measure& m = part.measures[mi];
      const MeasureSite site = MeasureSite::of(doc, part, m, mi);
      for (const Event& e : m.events) {
        if (const auto* n = std::get_if<NoteEvent>(&e)) {
          if (auto d = check_event_duration(*n, site)) out.push_back(std::move(*d));
          continue;
        }
        if (auto d = check_skip_decomposable(e, site, config.min_unit)) out.push_back(std::move(*d));
        if (const auto* b = std::get_if<BackupEvent>(&e)) {
          if (auto d = backup_bound(*b, site)) out.push_back(std::move(*d));
        }
      }
    }
  }
  return out;
}

}  // namespace scorelint
