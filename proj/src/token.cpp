#include "scorelint/token.hpp"

#include <sstream>

namespace scorelint {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string voice_tag(int voice) { return "v" + std::to_string(voice); }

}  // namespace

int token_voice(const Token& t) {
  return std::visit(overloaded{
                        [](const BarToken&) { return 0; },
                        [](const EndOfScoreToken&) { return 0; },
                        [](const auto& tok) { return tok.voice; },
                    },
                    t);
}

std::string_view token_type_name(const Token& t) {
  return std::visit(overloaded{
                        [](const BarToken&) { return std::string_view("Bar"); },
                        [](const NoteToken&) { return std::string_view("Note"); },
                        [](const RestToken&) { return std::string_view("Rest"); },
                        [](const ChordStartToken&) { return std::string_view("ChordStart"); },
                        [](const ChordEndToken&) { return std::string_view("ChordEnd"); },
                        [](const TupletStartToken&) { return std::string_view("TupletStart"); },
                        [](const TupletEndToken&) { return std::string_view("TupletEnd"); },
                        [](const EndOfScoreToken&) { return std::string_view("EndOfScore"); },
                    },
                    t);
}

std::string describe(const Token& t) {
  return std::visit(
      overloaded{
          [](const BarToken& b) { return "Bar " + std::to_string(b.ts_numerator) + "/" + std::to_string(b.ts_denominator); },
          [](const NoteToken& n) {
            std::string s = "Note " + voice_tag(n.voice) + " " + n.pitch.to_string() + " " + describe(n.duration);
            if (n.is_grace) s += " grace";
            if (n.is_tied) s += " tied";
            return s;
          },
          [](const RestToken& r) {
            std::string s = "Rest " + voice_tag(r.voice) + " " + describe(r.duration);
            if (r.full_measure) s += " full-measure";
            if (r.synthetic) s += " synthetic";
            return s;
          },
          [](const ChordStartToken& c) {
            return "ChordStart " + voice_tag(c.voice) + " " + describe(c.duration) + (c.is_grace ? " grace" : "");
          },
          [](const ChordEndToken& c) { return "ChordEnd " + voice_tag(c.voice); },
          [](const TupletStartToken& k) {
            return "TupletStart " + voice_tag(k.voice) + " " + describe(k.base_unit) + " normal=" +
                   std::to_string(k.n_normal) + " actual=" + std::to_string(k.n_actual);
          },
          [](const TupletEndToken& k) { return "TupletEnd " + voice_tag(k.voice); },
          [](const EndOfScoreToken&) { return std::string("EndOfScore"); },
      },
      t);
}

std::string dump_tokens(const TokenSequence& seq) {
  std::ostringstream out;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    const SourceLocation& loc = seq.locations[i];
    out << i << '\t' << describe(seq.tokens[i]) << '\t' << loc.part << ':' << loc.measure << '@' << loc.onset << '\n';
  }
  return out.str();
}

}  // namespace scorelint
