#include "scorelint/tokenizer.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

namespace scorelint {

namespace {

Diagnostic make(std::string_view code, Severity severity, const MeasureSite& site, int voice, const Rational& onset,
                std::string message) {
  Diagnostic d;
  d.code = std::string(code);
  d.stage = Stage::Contextual;
  d.severity = severity;
  d.location = {site.file, site.part, site.measure, site.measure_index, voice, onset};
  d.message = std::move(message);
  return d;
}

std::optional<SymbolicDuration> symbol_for_length(const Rational& q) {
  for (int exp = static_cast<int>(NoteType::N1024th); exp <= static_cast<int>(NoteType::Maxima); ++exp) {
    for (int dots = 0; dots <= kMaxDots; ++dots) {
      SymbolicDuration sym{static_cast<NoteType>(exp), dots, std::nullopt};
      if (quarters_of(sym) == q) return sym;
    }
  }
  return std::nullopt;
}

struct Bracket {
  int number = 0;
  bool implicit = false;
  std::int64_t n_actual = 1;
  std::int64_t n_normal = 1;
  SymbolicDuration unit;
  std::optional<TimeModification> implicit_mod;
  Rational filled;

  Rational actual_duration() const { return quarters_of(unit) * Rational(n_actual); }
};

class TupletGrouper {
 public:
  TupletGrouper(int voice, const MeasureSite& site) : voice_(voice), site_(site) {}

  VoiceTokens run(const std::vector<VoiceItem>& items) {
    for (const VoiceItem& item : items) {
      if (item.grace()) {
        emit_item(item);
        continue;
      }
      std::vector<TupletMark> starts;
      std::vector<TupletMark> stops;
      for (const VoiceEvent& e : item.members) {
        if (e.note == nullptr) continue;
        for (const TupletMark& mark : e.note->tuplet_marks) {
          (mark.type == TupletMarkType::Start ? starts : stops).push_back(mark);
        }
      }
      std::sort(starts.begin(), starts.end(), [](const auto& a, const auto& b) { return a.number < b.number; });

      const VoiceEvent& head = item.members.front();
      const std::optional<TimeModification> mod =
          head.note != nullptr && head.note->symbolic ? head.note->symbolic->time_modification : std::nullopt;

      if (!stack_.empty() && stack_.back().implicit && (!starts.empty() || !mod || *mod != stack_.back().implicit_mod)) {
        close_top();
      }
      for (const TupletMark& mark : starts) open_explicit(mark, head, item.onset());
      if (stack_.empty() && mod) open_implicit(*mod, head, item.onset());

      emit_item(item);

      if (!stack_.empty() && stack_.back().implicit) {
        Bracket& top = stack_.back();
        top.filled += quarters_of(plain_symbol(head));
        if (top.filled >= top.actual_duration()) close_top();
      }
      for (const TupletMark& mark : stops) stop(mark.number, item.onset());
    }
    while (!stack_.empty()) {
      if (!stack_.back().implicit) {
        warn(last_onset_, "tuplet " + std::to_string(stack_.back().number) + " is not stopped before the measure ends");
      }
      close_top();
    }
    return std::move(out_);
  }

 private:
  void push(Token token, const Rational& onset) {
    out_.tokens.push_back({std::move(token), onset});
    last_onset_ = onset;
  }

  void warn(const Rational& onset, std::string message) {
    out_.diagnostics.push_back(make(codes::kMalformedTupletMarking, Severity::Warning, site_, voice_, onset,
                                    std::move(message)));
  }

  Rational outer_ratio() const {
    Rational r(1);
    for (const Bracket& b : stack_) r *= Rational(b.n_actual, b.n_normal);
    return r;
  }

  void open_bracket(Bracket b, const Rational& onset) {
    push(TupletStartToken{voice_, b.unit, b.n_normal, b.n_actual}, onset);
    stack_.push_back(std::move(b));
  }

  void open_explicit(const TupletMark& mark, const VoiceEvent& head, const Rational& onset) {
    for (const Bracket& b : stack_) {
      if (!b.implicit && b.number == mark.number) {
        warn(onset, "tuplet " + std::to_string(mark.number) + " started again while still open");
        stop(mark.number, onset);
        break;
      }
    }
    const NoteEvent* note = head.note;
    Bracket b;
    b.number = mark.number;
    if (mark.actual_count && mark.normal_count) {
      b.n_actual = *mark.actual_count;
      b.n_normal = *mark.normal_count;
      if (mark.unit_type) {
        b.unit = {*mark.unit_type, mark.unit_dots, std::nullopt};
      } else {
        b.unit = plain_symbol(head);
      }
    } else if (note != nullptr && note->symbolic && note->symbolic->time_modification) {
      const TimeModification mod = *note->symbolic->time_modification;
      const bool outermost = stack_.empty();
      if (outermost) {
        b.n_actual = mod.actual_notes;
        b.n_normal = mod.normal_notes;
      } else {
        const Rational r = Rational(mod.actual_notes, mod.normal_notes) / outer_ratio();
        b.n_actual = r.numerator();
        b.n_normal = r.denominator();
      }
      if (outermost && note->normal_type) {
        b.unit = {*note->normal_type, note->normal_dots, std::nullopt};
      } else {
        b.unit = note->symbolic->plain();
      }
    } else {
      warn(onset, "tuplet " + std::to_string(mark.number) + " starts on a note without <time-modification>");
      ignored_.insert(mark.number);
      return;
    }
    ignored_.erase(mark.number);
    open_bracket(std::move(b), onset);
  }

  void open_implicit(const TimeModification& mod, const VoiceEvent& head, const Rational& onset) {
    Bracket b;
    b.implicit = true;
    b.implicit_mod = mod;
    b.n_actual = mod.actual_notes;
    b.n_normal = mod.normal_notes;
    if (head.note->normal_type) {
      b.unit = {*head.note->normal_type, head.note->normal_dots, std::nullopt};
    } else {
      b.unit = head.note->symbolic->plain();
    }
    open_bracket(std::move(b), onset);
  }

  void close_top() {
    push(TupletEndToken{voice_}, last_onset_);
    stack_.pop_back();
  }

  void stop(int number, const Rational& onset) {
    auto it = std::find_if(stack_.rbegin(), stack_.rend(),
                           [&](const Bracket& b) { return !b.implicit && b.number == number; });
    if (it == stack_.rend()) {
      if (ignored_.erase(number) == 0) {
        warn(onset, "tuplet " + std::to_string(number) + " stopped without being started");
      }
      return;
    }
    const auto depth = static_cast<std::size_t>(std::distance(stack_.rbegin(), it));
    for (std::size_t i = 0; i < depth; ++i) {
      if (!stack_.back().implicit) {
        warn(onset, "tuplet " + std::to_string(stack_.back().number) + " is not stopped before tuplet " +
                        std::to_string(number));
      }
      close_top();
    }
    close_top();
  }

  SymbolicDuration plain_symbol(const VoiceEvent& e) const {
    if (e.synthetic()) return e.synthetic_duration;
    if (e.note->symbolic) return e.note->symbolic->plain();
    return symbol_for_length(e.length).value_or(SymbolicDuration{NoteType::Whole, 0, std::nullopt});
  }

  // Written duration for a token: the plain symbol inside a bracket, the
  // full symbol otherwise.
  std::optional<SymbolicDuration> token_duration(const VoiceEvent& e) {
    if (e.synthetic()) return e.synthetic_duration;
    const NoteEvent& n = *e.note;
    if (n.symbolic) return stack_.empty() && !n.grace ? *n.symbolic : n.symbolic->plain();
    if (n.full_measure_rest) return SymbolicDuration{NoteType::Whole, 0, std::nullopt};
    if (n.grace) return SymbolicDuration{NoteType::Eighth, 0, std::nullopt};
    if (auto sym = symbol_for_length(e.length)) return sym;
    out_.excluded = true;
    out_.diagnostics.push_back(make(codes::kUnrepresentableDuration, Severity::Warning, site_, voice_, e.onset,
                                    std::string(n.rest ? "rest" : "note") + " without <type> lasts " +
                                        e.length.to_string() + " quarters, which no single symbol writes; measure skipped"));
    return std::nullopt;
  }

  void emit_event(const VoiceEvent& e) {
    const auto duration = token_duration(e);
    if (!duration) return;
    if (e.synthetic()) {
      push(RestToken{voice_, *duration, false, true}, e.onset);
    } else if (e.note->rest) {
      push(RestToken{voice_, *duration, e.note->full_measure_rest, false}, e.onset);
    } else {
      push(NoteToken{voice_, e.note->pitch.value_or(Pitch{}), *duration, e.note->grace, e.note->tie_start}, e.onset);
    }
  }

  void emit_item(const VoiceItem& item) {
    if (!item.is_chord()) {
      emit_event(item.members.front());
      return;
    }
    const auto duration = token_duration(item.members.front());
    if (!duration) return;
    push(ChordStartToken{voice_, *duration, false}, item.onset());
    for (const VoiceEvent& e : item.members) emit_event(e);
    push(ChordEndToken{voice_}, item.onset());
  }

  int voice_;
  const MeasureSite& site_;
  std::vector<Bracket> stack_;
  std::set<int> ignored_;
  Rational last_onset_;
  VoiceTokens out_;
};

}  // namespace

PaddedMeasure pad_voices(const Measure& m, const MeasureSite& site, const CheckConfig& config) {
  PaddedMeasure out;
  VoiceTimelines raw;
  Rational extent;
  for (std::size_t i = 0; i < m.events.size(); ++i) {
    const Event& e = m.events[i];
    if (const auto* n = std::get_if<NoteEvent>(&e)) {
      const Rational onset = ticks_to_quarters(n->onset_ticks, site.divisions);
      const Rational length = n->grace ? Rational(0) : ticks_to_quarters(n->ticks, site.divisions);
      raw[n->voice].push_back({onset, length, i, n, {}});
      extent = std::max(extent, onset + length);
    } else if (const auto* f = std::get_if<ForwardEvent>(&e)) {
      raw[f->voice];
      extent = std::max(extent, ticks_to_quarters(f->onset_ticks + f->ticks, site.divisions));
    }
  }
  const Rational target = std::min(extent, site.time.quarters());

  for (auto& [voice, events] : raw) {
    std::stable_sort(events.begin(), events.end(), [](const VoiceEvent& a, const VoiceEvent& b) {
      return std::tie(a.onset, a.input_index) < std::tie(b.onset, b.input_index);
    });
    std::vector<VoiceEvent> padded;
    Rational cursor;
    bool failed = false;
    auto fill = [&](const Rational& from, const Rational& to, std::size_t next_index) {
      const auto rests = decompose_into_rests(to - from, config.min_unit);
      if (!rests) {
        Diagnostic d = make(codes::kPaddingImpossible, Severity::Error, site, voice, from,
                            "gap of " + (to - from).to_string() + " quarters in voice " + std::to_string(voice) +
                                " cannot be filled with rests; measure skipped");
        d.data = {{"gap", to - from}, {"from", from}, {"to", to}};
        out.diagnostics.push_back(std::move(d));
        failed = true;
        return;
      }
      Rational at = from;
      for (const SymbolicDuration& r : *rests) {
        padded.push_back({at, quarters_of(r), next_index, nullptr, r});
        at += quarters_of(r);
      }
    };
    for (const VoiceEvent& e : events) {
      if (e.onset > cursor) {
        fill(cursor, e.onset, e.input_index);
        if (failed) break;
      }
      padded.push_back(e);
      cursor = std::max(cursor, e.onset + e.length);
    }
    if (!failed && cursor < target) fill(cursor, target, std::numeric_limits<std::size_t>::max());
    if (failed) out.excluded = true;
    out.voices.emplace(voice, std::move(padded));
  }
  return out;
}

std::vector<VoiceItem> group_chords(const std::vector<VoiceEvent>& voice_events) {
  std::vector<VoiceItem> items;
  std::size_t i = 0;
  while (i < voice_events.size()) {
    const Rational onset = voice_events[i].onset;
    std::vector<VoiceEvent> members;
    std::size_t j = i;
    for (; j < voice_events.size() && voice_events[j].onset == onset; ++j) {
      if (voice_events[j].grace()) {
        items.push_back({{voice_events[j]}});
      } else {
        members.push_back(voice_events[j]);
      }
    }
    if (!members.empty()) items.push_back({std::move(members)});
    i = j;
  }
  return items;
}

VoiceTokens group_tuplets(int voice, const std::vector<VoiceItem>& items, const MeasureSite& site) {
  return TupletGrouper(voice, site).run(items);
}

PartTokens tokenize_part(const ScoreDoc& doc, std::size_t part_index, const CheckConfig& config) {
  const Part& part = doc.parts.at(part_index);
  PartTokens out;
  out.part_id = part.id;
  if (part.measures.empty()) return out;

  for (std::size_t mi = 0; mi < part.measures.size(); ++mi) {
    const Measure& m = part.measures[mi];
    const MeasureSite site = MeasureSite::of(doc, part, m, mi);
    out.sequence.push(BarToken{m.time.beats, m.time.beat_type}, {part.id, m.number_label, mi, Rational(0)});

    PaddedMeasure padded = pad_voices(m, site, config);
    for (auto& d : padded.diagnostics) out.diagnostics.push_back(std::move(d));
    if (padded.excluded) continue;

    struct Entry {
      int voice;
      std::size_t order;
      TimedToken token;
    };
    std::vector<Entry> entries;
    bool excluded = false;
    for (const auto& [voice, events] : padded.voices) {
      VoiceTokens vt = group_tuplets(voice, group_chords(events), site);
      for (auto& d : vt.diagnostics) out.diagnostics.push_back(std::move(d));
      excluded = excluded || vt.excluded;
      for (auto& t : vt.tokens) entries.push_back({voice, entries.size(), std::move(t)});
    }
    if (excluded) continue;
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.token.onset, a.voice, a.order) < std::tie(b.token.onset, b.voice, b.order);
    });
    for (auto& e : entries) {
      out.sequence.push(std::move(e.token.token), {part.id, m.number_label, mi, e.token.onset});
    }
  }
  const Measure& last = part.measures.back();
  out.sequence.push(EndOfScoreToken{}, {part.id, last.number_label, part.measures.size() - 1, Rational(0)});
  return out;
}

std::vector<PartTokens> tokenize(const ScoreDoc& doc, const CheckConfig& config) {
  std::vector<PartTokens> out;
  out.reserve(doc.parts.size());
  for (std::size_t p = 0; p < doc.parts.size(); ++p) out.push_back(tokenize_part(doc, p, config));
  return out;
}

}  // namespace scorelint
