#include "scorelint/musicxml.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "scorelint/error.hpp"
#include "xml_tree.hpp"

namespace scorelint {

namespace {

using detail::XmlNode;

[[noreturn]] void ill_formed(const XmlNode& at, const std::string& what) {
  throw Error(ErrorKind::IllFormedDocument, "line " + std::to_string(at.line) + ": " + what);
}

std::optional<std::int64_t> parse_int(std::string_view text) {
  std::int64_t value = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || text.empty()) return std::nullopt;
  // Accept "4.0"-style integral decimals.
  if (ptr != end) {
    if (*ptr != '.') return std::nullopt;
    for (++ptr; ptr != end; ++ptr) {
      if (*ptr != '0') return std::nullopt;
    }
  }
  return value;
}

// Decimal text ("-1", "0.5") to an exact fraction.
std::optional<Rational> parse_decimal(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_point = false;
  for (char c : text) {
    if (c == '.' && !seen_point) {
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') return std::nullopt;
    if (num > (std::int64_t{1} << 50) || den > (std::int64_t{1} << 50)) return std::nullopt;
    num = num * 10 + (c - '0');
    if (seen_point) den *= 10;
  }
  return Rational(negative ? -num : num, den);
}

std::int64_t required_int(const XmlNode& node, std::string_view what) {
  const auto v = parse_int(node.trimmed_text());
  if (!v) ill_formed(node, std::string(what) + " is not an integer: '" + node.trimmed_text() + "'");
  return *v;
}

int count_children(const XmlNode& node, std::string_view name) {
  int n = 0;
  for (const auto& c : node.children) n += c->name == name ? 1 : 0;
  return n;
}

bool attr_is(const XmlNode& node, std::string_view name, std::string_view value) {
  const std::string* a = node.attribute(name);
  return a != nullptr && *a == value;
}

// <beats> may be additive ("3+2"); several beats/beat-type pairs are summed
// over a common beat unit.
std::optional<TimeSignature> parse_time(const XmlNode& time) {
  Rational total;
  std::int64_t common_type = 1;
  bool any = false;
  bool awaiting_type = false;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& c : time.children) {
    if (c->name == "beats") {
      pairs.emplace_back(c->trimmed_text(), "");
      awaiting_type = true;
    } else if (c->name == "beat-type" && awaiting_type) {
      pairs.back().second = c->trimmed_text();
      awaiting_type = false;
    }
  }
  for (const auto& [beats_text, type_text] : pairs) {
    std::int64_t beats = 0;
    std::string_view rest = beats_text;
    while (!rest.empty()) {
      const auto plus = rest.find('+');
      const auto v = parse_int(rest.substr(0, plus));
      if (!v || *v <= 0) return std::nullopt;
      beats += *v;
      rest = plus == std::string_view::npos ? std::string_view{} : rest.substr(plus + 1);
    }
    const auto type = parse_int(type_text);
    if (beats <= 0 || !type || *type <= 0) return std::nullopt;
    total += Rational(beats, *type);
    common_type = std::lcm(common_type, *type);
    any = true;
  }
  if (!any) return std::nullopt;
  const Rational beats_in_common = total * Rational(common_type);
  return TimeSignature{beats_in_common.numerator(), common_type};
}

std::vector<int> parse_ending_numbers(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] < '0' || text[i] > '9')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
    if (j > i) {
      int v = 0;
      std::from_chars(text.data() + i, text.data() + j, v);
      out.push_back(v);
    }
    i = j;
  }
  return out;
}

void parse_barline(const XmlNode& barline, RepeatMarks& marks) {
  if (const XmlNode* repeat = barline.child("repeat")) {
    if (attr_is(*repeat, "direction", "forward")) marks.forward = true;
    if (attr_is(*repeat, "direction", "backward")) {
      marks.backward = true;
      if (const std::string* times = repeat->attribute("times")) {
        if (auto t = parse_int(*times); t && *t >= 1) marks.times = static_cast<int>(*t);
      }
    }
  }
  if (const XmlNode* ending = barline.child("ending")) {
    if (const std::string* number = ending->attribute("number")) {
      // start and stop barlines repeat the same numbers
      for (int n : parse_ending_numbers(*number)) {
        if (std::find(marks.ending_numbers.begin(), marks.ending_numbers.end(), n) == marks.ending_numbers.end()) {
          marks.ending_numbers.push_back(n);
        }
      }
    }
    const std::string* type = ending->attribute("type");
    if (type != nullptr && *type == "start") marks.ending_start = true;
    if (type != nullptr && (*type == "stop" || *type == "discontinue")) marks.ending_stop = true;
  }
}

bool is_jump_sound(const XmlNode& sound) {
  return sound.attribute("dacapo") != nullptr || sound.attribute("dalsegno") != nullptr ||
         sound.attribute("tocoda") != nullptr;
}

TupletMark parse_tuplet_mark(const XmlNode& tuplet) {
  TupletMark mark;
  mark.type = attr_is(tuplet, "type", "stop") ? TupletMarkType::Stop : TupletMarkType::Start;
  if (const std::string* number = tuplet.attribute("number")) {
    if (auto n = parse_int(*number)) mark.number = static_cast<int>(*n);
  }
  if (const XmlNode* actual = tuplet.child("tuplet-actual")) {
    if (auto n = parse_int(actual->child_text("tuplet-number")); n && *n > 0) mark.actual_count = *n;
    if (const XmlNode* type = actual->child("tuplet-type")) {
      mark.unit_type = parse_note_type(type->trimmed_text());
      mark.unit_dots = count_children(*actual, "tuplet-dot");
    }
  }
  if (const XmlNode* normal = tuplet.child("tuplet-normal")) {
    if (auto n = parse_int(normal->child_text("tuplet-number")); n && *n > 0) mark.normal_count = *n;
    if (!mark.unit_type) {
      if (const XmlNode* type = normal->child("tuplet-type")) {
        mark.unit_type = parse_note_type(type->trimmed_text());
        mark.unit_dots = count_children(*normal, "tuplet-dot");
      }
    }
  }
  return mark;
}

std::optional<Pitch> parse_pitch(const XmlNode& note) {
  if (const XmlNode* pitch = note.child("pitch")) {
    Pitch p;
    const std::string step = pitch->child_text("step");
    if (step.size() != 1 || std::string_view("ABCDEFG").find(step[0]) == std::string_view::npos) {
      ill_formed(*pitch, "invalid <step> '" + step + "'");
    }
    p.step = step[0];
    const XmlNode* octave = pitch->child("octave");
    if (octave == nullptr) ill_formed(*pitch, "<pitch> without <octave>");
    p.octave = static_cast<int>(required_int(*octave, "<octave>"));
    if (const XmlNode* alter = pitch->child("alter")) {
      const auto a = parse_decimal(alter->trimmed_text());
      if (!a) ill_formed(*alter, "invalid <alter> '" + alter->trimmed_text() + "'");
      p.alter = *a;
    }
    return p;
  }
  if (const XmlNode* unpitched = note.child("unpitched")) {
    Pitch p;
    const std::string step = unpitched->child_text("display-step");
    if (step.size() == 1) p.step = step[0];
    if (auto o = parse_int(unpitched->child_text("display-octave"))) p.octave = static_cast<int>(*o);
    return p;
  }
  return std::nullopt;
}

class MeasureReader {
 public:
  MeasureReader(std::int64_t divisions, TimeSignature time) : divisions_(divisions), time_(time) {}

  Measure read(const XmlNode& xml, std::size_t index) {
    Measure m;
    const std::string* number = xml.attribute("number");
    m.number_label = number != nullptr ? *number : std::to_string(index + 1);
    m.source_index = index;

    bool attributes_seen = false;
    for (const auto& child : xml.children) {
      const XmlNode& c = *child;
      if (c.name == "attributes") {
        read_attributes(c);
        if (!attributes_seen) {
          m.divisions = divisions_;
          m.time = time_;
        }
        attributes_seen = true;
      } else if (c.name == "note") {
        m.events.emplace_back(read_note(c));
      } else if (c.name == "backup") {
        BackupEvent b;
        b.ticks = duration_ticks(c);
        b.voice = last_voice_;
        b.onset_ticks = cursor_;
        cursor_ -= b.ticks;
        m.events.emplace_back(b);
      } else if (c.name == "forward") {
        ForwardEvent f;
        f.ticks = duration_ticks(c);
        if (const XmlNode* voice = c.child("voice")) {
          f.voice = voice_number(*voice);
          f.voice_explicit = true;
        } else {
          f.voice = last_voice_ > 0 ? last_voice_ : 1;
        }
        f.onset_ticks = cursor_;
        cursor_ += f.ticks;
        m.events.emplace_back(f);
      } else if (c.name == "barline") {
        parse_barline(c, m.repeat);
      } else if (c.name == "direction") {
        if (const XmlNode* sound = c.child("sound"); sound != nullptr && is_jump_sound(*sound)) m.has_jump = true;
      } else if (c.name == "sound") {
        if (is_jump_sound(c)) m.has_jump = true;
      }
    }
    // Mid-measure <attributes> rarely change divisions; the measure keeps the
    // value in effect at its first event, which is what the checks read.
    if (!attributes_seen) {
      m.divisions = divisions_;
      m.time = time_;
    }
    return m;
  }

  std::int64_t divisions() const { return divisions_; }
  TimeSignature time() const { return time_; }

 private:
  void read_attributes(const XmlNode& attrs) {
    if (const XmlNode* div = attrs.child("divisions")) {
      const auto d = parse_int(div->trimmed_text());
      if (!d || *d <= 0) ill_formed(*div, "<divisions> must be a positive integer, got '" + div->trimmed_text() + "'");
      divisions_ = *d;
    }
    if (const XmlNode* time = attrs.child("time")) {
      if (auto ts = parse_time(*time)) time_ = *ts;
    }
  }

  std::int64_t duration_ticks(const XmlNode& node) const {
    const XmlNode* d = node.child("duration");
    if (d == nullptr) return 0;
    const auto v = parse_int(d->trimmed_text());
    if (!v || *v < 0) ill_formed(*d, "<duration> must be a non-negative integer, got '" + d->trimmed_text() + "'");
    return *v;
  }

  static int voice_number(const XmlNode& voice) {
    const auto v = parse_int(voice.trimmed_text());
    return v ? static_cast<int>(*v) : 1;
  }

  NoteEvent read_note(const XmlNode& xml) {
    NoteEvent n;
    n.grace = xml.child("grace") != nullptr;
    n.cue = xml.child("cue") != nullptr;
    n.chord = xml.child("chord") != nullptr;
    n.ticks = duration_ticks(xml);
    if (const XmlNode* rest = xml.child("rest")) {
      n.rest = true;
      n.full_measure_rest = attr_is(*rest, "measure", "yes");
    } else {
      n.pitch = parse_pitch(xml);
    }
    if (const XmlNode* voice = xml.child("voice")) n.voice = voice_number(*voice);
    if (const XmlNode* staff = xml.child("staff")) {
      if (auto s = parse_int(staff->trimmed_text())) n.staff = static_cast<int>(*s);
    }

    const std::string type_text = xml.child_text("type");
    if (auto type = parse_note_type(type_text)) {
      SymbolicDuration sym{*type, count_children(xml, "dot"), std::nullopt};
      if (sym.dots > kMaxDots) ill_formed(xml, std::to_string(sym.dots) + " augmentation dots (at most 4 supported)");
      if (const XmlNode* tm = xml.child("time-modification")) {
        const XmlNode* actual = tm->child("actual-notes");
        const XmlNode* normal = tm->child("normal-notes");
        if (actual == nullptr || normal == nullptr) ill_formed(*tm, "<time-modification> needs actual and normal notes");
        TimeModification mod{required_int(*actual, "<actual-notes>"), required_int(*normal, "<normal-notes>")};
        if (mod.actual_notes < 1 || mod.normal_notes < 1) ill_formed(*tm, "time-modification counts must be positive");
        sym.time_modification = mod;
        n.normal_type = parse_note_type(tm->child_text("normal-type"));
        n.normal_dots = count_children(*tm, "normal-dot");
      }
      n.symbolic = sym;
    } else if (!type_text.empty()) {
      ill_formed(xml, "unknown note <type> '" + type_text + "'");
    }

    for (const auto& c : xml.children) {
      if (c->name == "tie") {
        if (attr_is(*c, "type", "start")) n.tie_start = true;
        if (attr_is(*c, "type", "stop")) n.tie_stop = true;
      } else if (c->name == "notations") {
        for (const auto& nc : c->children) {
          if (nc->name == "tied") {
            if (attr_is(*nc, "type", "start") || attr_is(*nc, "type", "continue")) n.tie_start = true;
            if (attr_is(*nc, "type", "stop") || attr_is(*nc, "type", "continue")) n.tie_stop = true;
          } else if (nc->name == "tuplet") {
            n.tuplet_marks.push_back(parse_tuplet_mark(*nc));
          }
        }
      }
    }

    if (n.chord) {
      n.onset_ticks = last_onset_;
    } else {
      n.onset_ticks = cursor_;
      cursor_ += n.ticks;
    }
    last_onset_ = n.onset_ticks;
    last_voice_ = n.voice;
    return n;
  }

  std::int64_t divisions_;
  TimeSignature time_;
  std::int64_t cursor_ = 0;
  std::int64_t last_onset_ = 0;
  int last_voice_ = 0;
};

Part read_part(const XmlNode& xml) {
  Part part;
  if (const std::string* id = xml.attribute("id")) part.id = *id;
  std::int64_t divisions = 1;
  TimeSignature time;
  std::size_t index = 0;
  for (const auto& child : xml.children) {
    if (child->name != "measure") continue;
    MeasureReader reader(divisions, time);
    part.measures.push_back(reader.read(*child, index++));
    divisions = reader.divisions();
    time = reader.time();
  }
  return part;
}

}  // namespace

ScoreDoc parse_musicxml(std::string_view bytes, std::string source_name) {
  const auto root = detail::parse_xml(bytes);
  if (root->name == "score-timewise") {
    throw Error(ErrorKind::UnsupportedDocument, "score-timewise documents are not supported");
  }
  if (root->name != "score-partwise") {
    throw Error(ErrorKind::UnsupportedDocument, "root element <" + root->name + "> is not <score-partwise>");
  }
  ScoreDoc doc;
  doc.source_name = std::move(source_name);
  for (const auto& child : root->children) {
    if (child->name == "part") doc.parts.push_back(read_part(*child));
  }
  if (doc.parts.empty()) throw Error(ErrorKind::IllFormedDocument, "score has no <part>");
  return doc;
}

}  // namespace scorelint
