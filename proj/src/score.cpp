#include "scorelint/score.hpp"

namespace scorelint {

namespace {

int step_semitone(char step) {
  switch (step) {
    case 'C': return 0;
    case 'D': return 2;
    case 'E': return 4;
    case 'F': return 5;
    case 'G': return 7;
    case 'A': return 9;
    case 'B': return 11;
    default: return 0;
  }
}

}  // namespace

Rational Pitch::sounding() const { return Rational(12 * (octave + 1) + step_semitone(step)) + alter; }

std::string Pitch::to_string() const {
  std::string out(1, step);
  if (alter.is_integer()) {
    auto a = alter.numerator();
    for (; a > 0; --a) out += '#';
    for (; a < 0; ++a) out += 'b';
  } else {
    out += "(" + alter.to_string() + ")";
  }
  return out + std::to_string(octave);
}

std::int64_t onset_of(const Event& e) {
  return std::visit([](const auto& ev) { return ev.onset_ticks; }, e);
}

std::int64_t ticks_of(const Event& e) {
  return std::visit([](const auto& ev) { return ev.ticks; }, e);
}

int voice_of(const Event& e) {
  return std::visit([](const auto& ev) { return ev.voice; }, e);
}

}  // namespace scorelint
