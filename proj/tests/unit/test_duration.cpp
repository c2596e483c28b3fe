#include <doctest.h>

#include <vector>

#include "scorelint/duration.hpp"
#include "scorelint/error.hpp"

using namespace scorelint;

namespace {

SymbolicDuration sym(NoteType t, int dots = 0) { return {t, dots, std::nullopt}; }

SymbolicDuration tup(NoteType t, std::int64_t actual, std::int64_t normal, int dots = 0) {
  return {t, dots, TimeModification{actual, normal}};
}

// Undotted rest lengths (in 128ths) that sum to q, counted by brute force.
bool reachable(std::int64_t target, const std::vector<std::int64_t>& parts) {
  std::vector<bool> ok(static_cast<std::size_t>(target + 1), false);
  ok[0] = true;
  for (std::int64_t t = 1; t <= target; ++t) {
    for (std::int64_t p : parts) {
      if (p <= t && ok[static_cast<std::size_t>(t - p)]) ok[static_cast<std::size_t>(t)] = true;
    }
  }
  return ok[static_cast<std::size_t>(target)];
}

}  // namespace

TEST_CASE("note type names round-trip") {
  for (int e = -8; e <= 5; ++e) {
    const auto t = static_cast<NoteType>(e);
    const auto back = parse_note_type(note_type_name(t));
    REQUIRE(back.has_value());
    CHECK(*back == t);
  }
  CHECK_FALSE(parse_note_type("crotchet").has_value());
  CHECK(parse_note_type("16th") == NoteType::N16th);
}

TEST_CASE("quarters_of basic values") {
  CHECK(quarters_of(sym(NoteType::Quarter)) == Rational(1));
  CHECK(quarters_of(sym(NoteType::Half)) == Rational(2));
  CHECK(quarters_of(sym(NoteType::Quarter, 1)) == Rational(3, 2));
  CHECK(quarters_of(sym(NoteType::Quarter, 2)) == Rational(7, 4));
  CHECK(quarters_of(sym(NoteType::Eighth, 1)) == Rational(3, 4));
  CHECK(quarters_of(tup(NoteType::Eighth, 3, 2)) == Rational(1, 3));
  CHECK(quarters_of(tup(NoteType::N32nd, 14, 8)) == Rational(1, 14));
  CHECK(quarters_of(sym(NoteType::N1024th)) == Rational(1, 256));
  CHECK(quarters_of(sym(NoteType::Maxima)) == Rational(32));
}

TEST_CASE("dot sum law: each dot adds half of the previous addition") {
  for (int e = -8; e <= 5; ++e) {
    const auto t = static_cast<NoteType>(e);
    const Rational base = base_quarters(t);
    Rational expected = base;
    Rational add = base;
    for (int dots = 0; dots <= kMaxDots; ++dots) {
      CHECK(quarters_of(sym(t, dots)) == expected);
      add = add / Rational(2);
      expected += add;
    }
  }
}

TEST_CASE("time modification scales by normal/actual and its inverse restores") {
  for (std::int64_t actual = 1; actual <= 15; ++actual) {
    for (std::int64_t normal = 1; normal <= 15; ++normal) {
      const Rational q = quarters_of(tup(NoteType::N16th, actual, normal, 1));
      CHECK(q * Rational(actual, normal) == quarters_of(sym(NoteType::N16th, 1)));
    }
  }
}

TEST_CASE("validate rejects bad symbols") {
  CHECK_THROWS_AS(validate(sym(NoteType::Quarter, 5)), Error);
  CHECK_THROWS_AS(validate(tup(NoteType::Quarter, 0, 2)), Error);
  CHECK_THROWS_AS(validate(tup(NoteType::Quarter, 3, -2)), Error);
  CHECK_NOTHROW(validate(sym(NoteType::Quarter, 4)));
}

TEST_CASE("ticks_to_quarters") {
  CHECK(ticks_to_quarters(34, 480) == Rational(17, 240));
  CHECK(ticks_to_quarters(6, 2) == Rational(3));
  CHECK(ticks_to_quarters(-6, 4) == Rational(-3, 2));
  CHECK_THROWS_AS(ticks_to_quarters(1, 0), Error);
}

TEST_CASE("describe") {
  CHECK(describe(sym(NoteType::Quarter, 1)) == "dotted quarter");
  CHECK(describe(sym(NoteType::Half, 2)) == "double-dotted half");
  CHECK(describe(tup(NoteType::N32nd, 14, 8)) == "32nd (14:8)");
  CHECK(describe(sym(NoteType::Half)) == "half");
}

TEST_CASE("decompose_into_rests examples") {
  const Rational unit = base_quarters(kDefaultMinUnit);
  const auto three = decompose_into_rests(Rational(3), unit);
  REQUIRE(three.has_value());
  REQUIRE(three->size() == 2);
  CHECK((*three)[0] == sym(NoteType::Half));
  CHECK((*three)[1] == sym(NoteType::Quarter));

  CHECK_FALSE(decompose_into_rests(Rational(1, 3), unit).has_value());
  CHECK_FALSE(decompose_into_rests(Rational(17, 240), unit).has_value());

  const auto long_gap = decompose_into_rests(Rational(70), unit);
  REQUIRE(long_gap.has_value());
  Rational total;
  for (const auto& r : *long_gap) total += quarters_of(r);
  CHECK(total == Rational(70));
  CHECK((*long_gap)[0] == sym(NoteType::Maxima));

  CHECK_THROWS_AS(decompose_into_rests(Rational(0), unit), Error);
  CHECK_THROWS_AS(decompose_into_rests(Rational(-1), unit), Error);
  CHECK_THROWS_AS(decompose_into_rests(Rational(1), Rational(1, 3)), Error);
}

TEST_CASE("decomposition property: sums back, undotted, non-increasing, no shorter than the unit") {
  const Rational unit = base_quarters(kDefaultMinUnit);
  for (std::int64_t k = 1; k <= 600; ++k) {
    const Rational q(k, 32);
    const auto rests = decompose_into_rests(q, unit);
    REQUIRE(rests.has_value());
    Rational total;
    for (std::size_t i = 0; i < rests->size(); ++i) {
      const auto& r = (*rests)[i];
      CHECK(r.dots == 0);
      CHECK_FALSE(r.time_modification.has_value());
      CHECK(quarters_of(r) >= unit);
      if (i > 0) CHECK(quarters_of(r) <= quarters_of((*rests)[i - 1]));
      total += quarters_of(r);
    }
    CHECK(total == q);
  }
}

TEST_CASE("is_decomposable matches a brute-force subset sum over k/480 quarters") {
  // rest values in 1/480 quarter: 128th=15, 64th=30, ... whole=1920
  const std::vector<std::int64_t> parts = {15, 30, 60, 120, 240, 480, 960, 1920};
  const Rational unit = base_quarters(kDefaultMinUnit);
  for (std::int64_t k = 1; k <= 1920; ++k) {
    CHECK_MESSAGE(is_decomposable(Rational(k, 480), unit) == reachable(k, parts), "k=" << k);
  }
}

TEST_CASE("a coarser minimum unit rejects finer gaps") {
  const Rational sixteenth = base_quarters(NoteType::N16th);
  CHECK(is_decomposable(Rational(1, 4), sixteenth));
  CHECK_FALSE(is_decomposable(Rational(1, 8), sixteenth));
  CHECK(is_decomposable(Rational(1, 8), base_quarters(NoteType::N32nd)));
}
