#include "scorelint/duration.hpp"

#include <array>
#include <utility>

#include "scorelint/error.hpp"

namespace scorelint {

namespace {

constexpr std::array<std::pair<std::string_view, NoteType>, 14> kTypeNames{{
    {"1024th", NoteType::N1024th},
    {"512th", NoteType::N512th},
    {"256th", NoteType::N256th},
    {"128th", NoteType::N128th},
    {"64th", NoteType::N64th},
    {"32nd", NoteType::N32nd},
    {"16th", NoteType::N16th},
    {"eighth", NoteType::Eighth},
    {"quarter", NoteType::Quarter},
    {"half", NoteType::Half},
    {"whole", NoteType::Whole},
    {"breve", NoteType::Breve},
    {"long", NoteType::Long},
    {"maxima", NoteType::Maxima},
}};

constexpr int kMinExponent = static_cast<int>(NoteType::N1024th);
constexpr int kMaxExponent = static_cast<int>(NoteType::Maxima);

Rational power_of_two(int exponent) {
  if (exponent >= 0) return Rational(std::int64_t{1} << exponent);
  return Rational(1, std::int64_t{1} << -exponent);
}

// log2 of r if r is an exact power of two, else nullopt.
std::optional<int> log2_exact(const Rational& r) {
  auto is_pow2 = [](std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; };
  if (!r.is_positive() || !is_pow2(r.numerator()) || !is_pow2(r.denominator())) return std::nullopt;
  if (r.denominator() == 1) return __builtin_ctzll(static_cast<unsigned long long>(r.numerator()));
  return -__builtin_ctzll(static_cast<unsigned long long>(r.denominator()));
}

}  // namespace

std::optional<NoteType> parse_note_type(std::string_view name) noexcept {
  for (const auto& [text, type] : kTypeNames) {
    if (text == name) return type;
  }
  return std::nullopt;
}

std::string_view note_type_name(NoteType type) noexcept {
  for (const auto& [text, t] : kTypeNames) {
    if (t == type) return text;
  }
  return "?";
}

Rational base_quarters(NoteType type) { return power_of_two(static_cast<int>(type)); }

void validate(const SymbolicDuration& sym) {
  if (sym.dots < 0 || sym.dots > kMaxDots) {
    throw Error(ErrorKind::InvalidArgument, "dot count " + std::to_string(sym.dots) + " outside [0, 4]");
  }
  if (sym.time_modification &&
      (sym.time_modification->actual_notes < 1 || sym.time_modification->normal_notes < 1)) {
    throw Error(ErrorKind::InvalidArgument, "time-modification counts must be positive");
  }
}

Rational quarters_of(const SymbolicDuration& sym) {
  const Rational base = base_quarters(sym.note_type);
  // base × (2 − 2^−dots) == base × (2^(dots+1) − 1) / 2^dots
  const std::int64_t scale = std::int64_t{1} << sym.dots;
  Rational q = base * Rational(2 * scale - 1, scale);
  if (sym.time_modification) {
    q *= Rational(sym.time_modification->normal_notes, sym.time_modification->actual_notes);
  }
  return q;
}

Rational ticks_to_quarters(std::int64_t ticks, std::int64_t divisions) {
  if (divisions <= 0) {
    throw Error(ErrorKind::IllFormedDocument, "non-positive <divisions> value " + std::to_string(divisions));
  }
  return Rational(ticks, divisions);
}

std::string describe(const SymbolicDuration& sym) {
  std::string out;
  static constexpr std::array<std::string_view, 5> kDotWords{"", "dotted ", "double-dotted ", "triple-dotted ",
                                                             "quadruple-dotted "};
  if (sym.dots >= 0 && sym.dots <= kMaxDots) out += kDotWords[static_cast<std::size_t>(sym.dots)];
  out += note_type_name(sym.note_type);
  if (sym.time_modification) {
    out += " (" + std::to_string(sym.time_modification->actual_notes) + ":" +
           std::to_string(sym.time_modification->normal_notes) + ")";
  }
  return out;
}

namespace {

int checked_unit_exponent(const Rational& q, const Rational& min_unit) {
  if (!q.is_positive()) {
    throw Error(ErrorKind::InvalidArgument, "rest decomposition needs a positive duration, got " + q.to_string());
  }
  const auto unit_exp = log2_exact(min_unit);
  if (!unit_exp || *unit_exp < kMinExponent || *unit_exp > kMaxExponent) {
    throw Error(ErrorKind::InvalidArgument, "minimal rest unit must be a note-type length, got " + min_unit.to_string());
  }
  return *unit_exp;
}

}  // namespace

bool is_decomposable(const Rational& q, const Rational& min_unit) {
  checked_unit_exponent(q, min_unit);
  return (q / min_unit).is_integer();
}

std::optional<std::vector<SymbolicDuration>> decompose_into_rests(const Rational& q, const Rational& min_unit) {
  const int unit_exp = checked_unit_exponent(q, min_unit);
  const Rational units = q / min_unit;
  if (!units.is_integer()) return std::nullopt;

  std::vector<SymbolicDuration> rests;
  std::int64_t remaining = units.numerator();
  // Bit k of `remaining` stands for a rest of 2^(unit_exp + k) quarters.
  const int top_bit = kMaxExponent - unit_exp;
  const std::int64_t maxima_units = std::int64_t{1} << top_bit;
  while (remaining >= maxima_units) {
    rests.push_back({NoteType::Maxima, 0, std::nullopt});
    remaining -= maxima_units;
  }
  for (int bit = top_bit - 1; bit >= 0; --bit) {
    if (remaining & (std::int64_t{1} << bit)) {
      rests.push_back({static_cast<NoteType>(unit_exp + bit), 0, std::nullopt});
    }
  }
  return rests;
}

}  // namespace scorelint
