#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scorelint/pipeline.hpp"
#include "scorelint/rational.hpp"

namespace scorelint {

/// What the corpus statistics need to know about one validated score.
struct ScoreSummary {
  std::string file;
  std::size_t original_measures = 0;
  std::size_t unfolded_measures = 0;
  bool contextual_evaluated = false;
  // measure index -> label, for measures holding at least one error
  std::map<std::size_t, std::string> individual_flagged;
  std::map<std::size_t, std::string> contextual_flagged;
};

ScoreSummary summarize(const ScoreResult& result);

struct StageStats {
  std::size_t scores = 0;
  std::size_t flagged_scores = 0;
  std::size_t bars = 0;
  std::size_t flagged_bars = 0;
  std::optional<Rational> median_flagged_bars;  // over flagged scores only

  /// Exact fractions; zero when the denominator is zero.
  Rational score_fraction() const;
  Rational bar_fraction() const;
};

struct ParseFailure {
  std::string file;
  std::string message;
};

struct CorpusStats {
  StageStats individual;
  StageStats contextual;
  std::vector<ParseFailure> failures;
};

/// Permutation-invariant reduction over per-score summaries.
CorpusStats aggregate(const std::vector<ScoreSummary>& scores, std::vector<ParseFailure> failures = {});

/// Aligned table with one row per stage, followed by the failure list.
std::string render_stats_table(const CorpusStats& stats);

/// One row per score: file, flagged counts and flagged measure labels per stage.
std::string render_stats_csv(const std::vector<ScoreSummary>& scores);

/// "27.7%" from an exact fraction, rounded half up to one decimal.
std::string format_percent(const Rational& fraction);

}  // namespace scorelint
