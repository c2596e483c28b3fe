#include "scorelint/stats.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace scorelint {

namespace {

Rational fraction(std::size_t part, std::size_t whole) {
  if (whole == 0) return Rational(0);
  return Rational(static_cast<std::int64_t>(part), static_cast<std::int64_t>(whole));
}

std::optional<Rational> median(std::vector<std::size_t> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return Rational(static_cast<std::int64_t>(values[mid]));
  return Rational(static_cast<std::int64_t>(values[mid - 1] + values[mid]), 2);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string labels(const std::map<std::size_t, std::string>& flagged) {
  std::string out;
  for (const auto& [index, label] : flagged) {
    if (!out.empty()) out += ' ';
    out += label;
  }
  return out;
}

}  // namespace

ScoreSummary summarize(const ScoreResult& result) {
  ScoreSummary s;
  s.file = result.file;
  s.original_measures = result.original_measures;
  s.unfolded_measures = result.unfolded_measures;
  s.contextual_evaluated = result.contextual_run;
  for (const Diagnostic& d : result.diagnostics) {
    if (d.severity != Severity::Error) continue;
    auto& target = d.stage == Stage::Individual ? s.individual_flagged : s.contextual_flagged;
    target.emplace(d.location.measure_index, d.location.measure);
  }
  return s;
}

Rational StageStats::score_fraction() const { return fraction(flagged_scores, scores); }
Rational StageStats::bar_fraction() const { return fraction(flagged_bars, bars); }

CorpusStats aggregate(const std::vector<ScoreSummary>& scores, std::vector<ParseFailure> failures) {
  CorpusStats out;
  std::vector<std::size_t> individual_counts;
  std::vector<std::size_t> contextual_counts;
  for (const ScoreSummary& s : scores) {
    out.individual.scores += 1;
    out.individual.bars += s.original_measures;
    if (!s.individual_flagged.empty()) {
      out.individual.flagged_scores += 1;
      out.individual.flagged_bars += s.individual_flagged.size();
      individual_counts.push_back(s.individual_flagged.size());
    }
    if (!s.contextual_evaluated) continue;
    out.contextual.scores += 1;
    out.contextual.bars += s.unfolded_measures;
    if (!s.contextual_flagged.empty()) {
      out.contextual.flagged_scores += 1;
      out.contextual.flagged_bars += s.contextual_flagged.size();
      contextual_counts.push_back(s.contextual_flagged.size());
    }
  }
  out.individual.median_flagged_bars = median(std::move(individual_counts));
  out.contextual.median_flagged_bars = median(std::move(contextual_counts));
  std::sort(failures.begin(), failures.end(),
            [](const ParseFailure& a, const ParseFailure& b) { return a.file < b.file; });
  out.failures = std::move(failures);
  return out;
}

std::string format_percent(const Rational& f) {
  // tenths of a percent, rounded half up
  const std::int64_t tenths = (f.numerator() * 2000 + f.denominator()) / (2 * f.denominator());
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

std::string render_stats_table(const CorpusStats& stats) {
  struct Row {
    std::string cells[6];
  };
  auto row = [](const std::string& name, const StageStats& s) {
    Row r;
    r.cells[0] = name;
    r.cells[1] = std::to_string(s.flagged_scores);
    r.cells[2] = std::to_string(s.flagged_scores) + "/" + std::to_string(s.scores) + " = " +
                 format_percent(s.score_fraction());
    r.cells[3] = std::to_string(s.flagged_bars);
    r.cells[4] = std::to_string(s.flagged_bars) + "/" + std::to_string(s.bars) + " = " + format_percent(s.bar_fraction());
    r.cells[5] = s.median_flagged_bars ? s.median_flagged_bars->to_string() : "—";
    return r;
  };
  const std::vector<Row> rows = {
      {{"Stage", "Scores", "% scores", "Measures", "% measures", "Median"}},
      row("Individual errors", stats.individual),
      row("Contextual errors", stats.contextual),
  };

  // "—" is three bytes but one column
  auto width = [](const std::string& s) { return s == "—" ? std::size_t{1} : s.size(); };
  std::size_t widths[6] = {};
  for (const Row& r : rows) {
    for (int c = 0; c < 6; ++c) widths[c] = std::max(widths[c], width(r.cells[c]));
  }
  std::ostringstream out;
  for (const Row& r : rows) {
    std::string line;
    for (int c = 0; c < 6; ++c) {
      if (c > 0) line += "  ";
      const std::string pad(widths[c] - width(r.cells[c]), ' ');
      line += c == 0 ? r.cells[c] + pad : pad + r.cells[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  out << "Contextual measures are counted on unfolded scores, over scores without individual errors.\n";
  if (!stats.failures.empty()) {
    out << "\nUnreadable scores (" << stats.failures.size() << "):\n";
    for (const ParseFailure& f : stats.failures) out << "  " << f.file << ": " << f.message << '\n';
  }
  return out.str();
}

std::string render_stats_csv(const std::vector<ScoreSummary>& scores) {
  std::vector<const ScoreSummary*> sorted;
  for (const ScoreSummary& s : scores) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->file < b->file; });

  std::string out = "file,measures,individual_flagged,individual_measures,contextual_evaluated,unfolded_measures,"
                    "contextual_flagged,contextual_measures\n";
  for (const ScoreSummary* s : sorted) {
    out += csv_field(s->file) + "," + std::to_string(s->original_measures) + "," +
           std::to_string(s->individual_flagged.size()) + "," + csv_field(labels(s->individual_flagged)) + "," +
           (s->contextual_evaluated ? "yes" : "no") + "," + std::to_string(s->unfolded_measures) + "," +
           std::to_string(s->contextual_flagged.size()) + "," + csv_field(labels(s->contextual_flagged)) + "\n";
  }
  return out;
}

}  // namespace scorelint
