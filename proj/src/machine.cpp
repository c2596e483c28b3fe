#include "scorelint/machine.hpp"

#include <algorithm>
#include <sstream>

namespace scorelint {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Violation violation(std::string_view code, int voice, std::string explanation, DataFields data = {}) {
  return {std::string(code), voice, std::move(explanation), std::move(data)};
}

std::string vtag(int voice) { return "voice " + std::to_string(voice); }

VoiceState fresh_voice(const ScoreState& s) {
  VoiceState v;
  v.duration = s.measure_duration;
  return v;
}

VoiceState voice_view(const ScoreState& s, int voice) {
  auto it = s.voices.find(voice);
  return it == s.voices.end() ? fresh_voice(s) : it->second;
}

VoiceState& voice_ref(ScoreState& s, int voice) {
  auto it = s.voices.find(voice);
  if (it == s.voices.end()) it = s.voices.emplace(voice, fresh_voice(s)).first;
  return it->second;
}

// Room left for the next element: in the innermost tuplet if any, else in the measure.
std::optional<Violation> check_capacity(const VoiceState& v, int voice, const Rational& length,
                                        const CheckConfig& config, const std::string& what) {
  if (!v.tuplets.empty()) {
    const TupletState& t = v.tuplets.back();
    const Rational room = t.actual_duration() - t.position;
    if (length <= room) return std::nullopt;
    return violation(codes::kTupletOverflow, voice,
                     what + " of " + length.to_string() + " quarters does not fit in the " + room.to_string() +
                         " left in its tuplet",
                     {{"length", length}, {"room", room}});
  }
  if (config.allow_overflow) return std::nullopt;
  const Rational room = v.duration - v.position;
  if (length <= room) return std::nullopt;
  return violation(codes::kMeasureOverflow, voice,
                   what + " of " + length.to_string() + " quarters overflows " + vtag(voice) + " (" +
                       room.to_string() + " left of " + v.duration.to_string() + ")",
                   {{"length", length}, {"room", room}, {"measure", v.duration}});
}

std::optional<Violation> check_closed(const ScoreState& s, const std::string& where) {
  for (const auto& [voice, v] : s.voices) {
    if (v.chord) return violation(codes::kUnclosedChord, voice, "chord in " + vtag(voice) + " still open at " + where);
  }
  for (const auto& [voice, v] : s.voices) {
    if (!v.tuplets.empty()) {
      return violation(codes::kUnclosedTuplet, voice,
                       std::to_string(v.tuplets.size()) + " tuplet(s) in " + vtag(voice) + " still open at " + where,
                       {{"open", static_cast<std::int64_t>(v.tuplets.size())}});
    }
  }
  std::optional<std::pair<int, Rational>> first;
  for (const auto& [voice, v] : s.voices) {
    if (v.position.is_zero()) continue;
    if (!first) {
      first = {voice, v.position};
    } else if (v.position != first->second) {
      return violation(codes::kVoiceDesyncAtBar, voice,
                       vtag(voice) + " ends at " + v.position.to_string() + " but " + vtag(first->first) +
                           " ends at " + first->second.to_string() + " (" + where + ")",
                       {{"position", v.position},
                        {"reference_voice", static_cast<std::int64_t>(first->first)},
                        {"reference_position", first->second}});
    }
  }
  return std::nullopt;
}

std::optional<Violation> guard_note(const ScoreState& s, const NoteToken& n, const CheckConfig& config) {
  const VoiceState v = voice_view(s, n.voice);
  if (v.full_measure_rest) {
    return violation(codes::kFullMeasureRestNotAlone, n.voice, "note after a full-measure rest in " + vtag(n.voice));
  }
  if (v.chord) {
    if (n.is_grace) return violation(codes::kUnclosedChord, n.voice, "grace note inside an open chord");
    if (n.duration != v.chord->duration) {
      return violation(codes::kChordDurationMismatch, n.voice,
                       "chord note is a " + describe(n.duration) + " but the chord is a " +
                           describe(v.chord->duration),
                       {{"note", quarters_of(n.duration)}, {"chord", quarters_of(v.chord->duration)}});
    }
    if (config.piano_rules) {
      const Rational p = n.pitch.sounding();
      for (const Pitch& other : v.chord->notes) {
        if (other.sounding() == p) {
          return violation(codes::kDuplicateNoteInChord, n.voice,
                           n.pitch.to_string() + " sounds the same key as " + other.to_string() + " in one chord",
                           {{"pitch", n.pitch.to_string()}, {"other", other.to_string()}});
        }
      }
    }
    return std::nullopt;
  }
  if (n.is_grace) return std::nullopt;
  return check_capacity(v, n.voice, quarters_of(n.duration), config, describe(n.duration) + " note");
}

std::optional<Violation> guard_rest(const ScoreState& s, const RestToken& r, const CheckConfig& config) {
  const VoiceState v = voice_view(s, r.voice);
  if (v.chord) return violation(codes::kRestInChord, r.voice, "rest inside an open chord in " + vtag(r.voice));
  if (v.full_measure_rest) {
    return violation(codes::kFullMeasureRestNotAlone, r.voice, "rest after a full-measure rest in " + vtag(r.voice));
  }
  if (r.full_measure) {
    if (v.has_content || !v.tuplets.empty()) {
      return violation(codes::kFullMeasureRestNotAlone, r.voice,
                       "full-measure rest in " + vtag(r.voice) + " follows other material");
    }
    return std::nullopt;
  }
  return check_capacity(v, r.voice, quarters_of(r.duration), config, describe(r.duration) + " rest");
}

}  // namespace

std::string describe(const ScoreState& state) {
  std::ostringstream out;
  if (state.ended) return "ended";
  if (state.is_initial) return "initial";
  out << "measure=" << state.measure_duration;
  for (const auto& [voice, v] : state.voices) {
    out << " v" << voice << '@' << v.position;
    if (v.full_measure_rest) out << "(full)";
    if (v.chord) out << "[chord " << v.chord->notes.size() << ']';
    for (const TupletState& t : v.tuplets) out << "{" << t.n_actual << ':' << t.n_normal << ' ' << t.position << '}';
  }
  if (!state.tied.empty()) out << " tied=" << state.tied.size();
  return out.str();
}

std::optional<Violation> guard(const ScoreState& s, const Token& token, const CheckConfig& config) {
  if (s.ended) return violation(codes::kTokenAfterEnd, token_voice(token), "token after the end of the score");
  if (s.is_initial && !std::holds_alternative<BarToken>(token)) {
    return violation(codes::kScoreMustStartWithBar, token_voice(token),
                     "score starts with " + std::string(token_type_name(token)) + " instead of a bar");
  }
  return std::visit(
      overloaded{
          [&](const BarToken&) -> std::optional<Violation> {
            if (s.is_initial) return std::nullopt;
            return check_closed(s, "the barline");
          },
          [&](const EndOfScoreToken&) -> std::optional<Violation> {
            if (auto v = check_closed(s, "the end of the score")) return v;
            if (!s.tied.empty()) {
              const auto& [voice, pitch] = *s.tied.begin();
              return violation(codes::kDanglingTie, voice,
                               std::to_string(s.tied.size()) + " tie(s) never reach a following note",
                               {{"pending", static_cast<std::int64_t>(s.tied.size())}, {"pitch", pitch}});
            }
            return std::nullopt;
          },
          [&](const NoteToken& n) { return guard_note(s, n, config); },
          [&](const RestToken& r) { return guard_rest(s, r, config); },
          [&](const ChordStartToken& c) -> std::optional<Violation> {
            const VoiceState v = voice_view(s, c.voice);
            if (v.chord) return violation(codes::kUnclosedChord, c.voice, "chord opened inside an open chord");
            if (v.full_measure_rest) {
              return violation(codes::kFullMeasureRestNotAlone, c.voice,
                               "chord after a full-measure rest in " + vtag(c.voice));
            }
            if (c.is_grace) return std::nullopt;
            return check_capacity(v, c.voice, quarters_of(c.duration), config, describe(c.duration) + " chord");
          },
          [&](const ChordEndToken& c) -> std::optional<Violation> {
            const VoiceState v = voice_view(s, c.voice);
            if (!v.chord) return violation(codes::kUnmatchedChordEnd, c.voice, "chord end without an open chord");
            if (v.chord->notes.empty()) return violation(codes::kUnmatchedChordEnd, c.voice, "chord closed with no notes");
            return std::nullopt;
          },
          [&](const TupletStartToken& t) -> std::optional<Violation> {
            const VoiceState v = voice_view(s, t.voice);
            if (v.chord) return violation(codes::kUnclosedChord, t.voice, "tuplet opened inside an open chord");
            if (v.full_measure_rest) {
              return violation(codes::kFullMeasureRestNotAlone, t.voice,
                               "tuplet after a full-measure rest in " + vtag(t.voice));
            }
            return check_capacity(v, t.voice, t.normal_duration(), config,
                                  std::to_string(t.n_actual) + ":" + std::to_string(t.n_normal) + " tuplet");
          },
          [&](const TupletEndToken& t) -> std::optional<Violation> {
            const VoiceState v = voice_view(s, t.voice);
            if (v.chord) return violation(codes::kUnclosedChord, t.voice, "tuplet closed inside an open chord");
            if (v.tuplets.empty()) return violation(codes::kUnmatchedTupletEnd, t.voice, "tuplet end without an open tuplet");
            const TupletState& top = v.tuplets.back();
            if (top.position != top.actual_duration()) {
              return violation(codes::kTupletUnderfilled, t.voice,
                               std::to_string(top.n_actual) + ":" + std::to_string(top.n_normal) + " tuplet holds " +
                                   top.position.to_string() + " of " + top.actual_duration().to_string() +
                                   " written quarters",
                               {{"filled", top.position}, {"expected", top.actual_duration()}});
            }
            return std::nullopt;
          },
      },
      token);
}

void update(ScoreState& s, const Token& token) {
  auto advance = [](VoiceState& v, const Rational& length) {
    if (v.tuplets.empty()) {
      v.position += length;
    } else {
      v.tuplets.back().position += length;
    }
  };
  std::visit(overloaded{
                 [&](const BarToken& b) {
                   // an empty (or skipped) measure cannot carry a tie onwards
                   if (s.voices.empty()) s.tied.clear();
                   s.voices.clear();
                   s.measure_duration = b.measure_quarters();
                   s.is_initial = false;
                 },
                 [&](const EndOfScoreToken&) {
                   s.ended = true;
                   s.is_initial = false;
                 },
                 [&](const NoteToken& n) {
                   VoiceState& v = voice_ref(s, n.voice);
                   v.has_content = true;
                   const Rational p = n.pitch.sounding();
                   if (!n.is_grace) {
                     if (s.tied.erase({n.voice, p}) == 0) {
                       auto it = std::find_if(s.tied.begin(), s.tied.end(),
                                              [&](const auto& e) { return e.second == p; });
                       if (it != s.tied.end()) s.tied.erase(it);
                     }
                   }
                   if (n.is_tied) s.tied.insert({n.voice, p});
                   if (v.chord) {
                     v.chord->notes.push_back(n.pitch);
                   } else if (!n.is_grace) {
                     advance(v, quarters_of(n.duration));
                   }
                 },
                 [&](const RestToken& r) {
                   VoiceState& v = voice_ref(s, r.voice);
                   v.has_content = true;
                   if (r.full_measure) {
                     v.full_measure_rest = true;
                     v.position = v.duration;
                   } else {
                     advance(v, quarters_of(r.duration));
                   }
                 },
                 [&](const ChordStartToken& c) {
                   VoiceState& v = voice_ref(s, c.voice);
                   v.has_content = true;
                   v.chord = ChordState{c.duration, {}};
                 },
                 [&](const ChordEndToken& c) {
                   VoiceState& v = voice_ref(s, c.voice);
                   const SymbolicDuration d = v.chord->duration;
                   v.chord.reset();
                   advance(v, quarters_of(d));
                 },
                 [&](const TupletStartToken& t) {
                   VoiceState& v = voice_ref(s, t.voice);
                   v.has_content = true;
                   v.tuplets.push_back({Rational(0), t.base_unit, t.n_normal, t.n_actual});
                 },
                 [&](const TupletEndToken& t) {
                   VoiceState& v = voice_ref(s, t.voice);
                   const Rational normal = v.tuplets.back().normal_duration();
                   v.tuplets.pop_back();
                   advance(v, normal);
                 },
             },
             token);
}

ContextualResult run_contextual(const TokenSequence& seq, const CheckConfig& config, const std::string& file) {
  ContextualResult out;
  ScoreState& s = out.final_state;
  std::ostringstream trace;
  bool skipping = false;

  auto report = [&](std::size_t i, const Violation& v, Severity severity) {
    const SourceLocation& loc = seq.locations[i];
    Diagnostic d;
    d.code = v.code;
    d.stage = Stage::Contextual;
    d.severity = severity;
    d.location = {file, loc.part, loc.measure, loc.measure_index, v.voice, loc.onset};
    d.message = v.explanation;
    d.data = v.data;
    d.data.emplace_back("token_index", static_cast<std::int64_t>(i));
    d.data.emplace_back("token", describe(seq.tokens[i]));
    out.diagnostics.push_back(std::move(d));
  };

  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Token& token = seq.tokens[i];
    const bool is_bar = std::holds_alternative<BarToken>(token);
    const bool is_end = std::holds_alternative<EndOfScoreToken>(token);
    if (skipping && !is_bar && !is_end) {
      if (config.dump_state) trace << i << '\t' << describe(token) << "\tskipped\n";
      continue;
    }
    if (skipping) {
      s.voices.clear();
      s.tied.clear();
      skipping = false;
    }

    const auto v = guard(s, token, config);
    if (v) {
      report(i, *v, Severity::Error);
      if (config.dump_state) trace << i << '\t' << describe(token) << "\treject " << v->code << '\n';
      if (s.ended || is_end) break;
      if (is_bar) {
        s.voices.clear();
        s.tied.clear();
        update(s, token);
      } else {
        skipping = true;
      }
      continue;
    }
    if (!config.allow_nested_tuplets) {
      if (const auto* t = std::get_if<TupletStartToken>(&token)) {
        auto it = s.voices.find(t->voice);
        if (it != s.voices.end() && !it->second.tuplets.empty()) {
          report(i, violation(codes::kNestedTuplet, t->voice, "tuplet nested inside another tuplet"),
                 Severity::Warning);
        }
      }
    }
    update(s, token);
    if (config.dump_state) trace << i << '\t' << describe(token) << "\tok\t" << describe(s) << '\n';
  }
  out.trace = trace.str();
  return out;
}

}  // namespace scorelint
