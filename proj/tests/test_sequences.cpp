#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "qgspec/error.hpp"
#include "qgspec/sequences.hpp"

using namespace qgs;

namespace {

std::vector<int> fib_prefix(std::size_t n) { return generate_word(fibonacci_rule(), 0, n).data; }

// independent Fibonacci word: s_n = 2 iff floor((n+2) g) - floor((n+1) g) == 0, g = golden ratio conjugate
int fibonacci_by_rotation(long n) {
  const long double g = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  const long a = static_cast<long>(std::floor((n + 2) * g));
  const long b = static_cast<long>(std::floor((n + 1) * g));
  return a - b == 1 ? 1 : 2;
}

}  // namespace

TEST_CASE("fibonacci prefix") {
  CHECK(fib_prefix(8) == std::vector<int>{1, 2, 1, 1, 2, 1, 2, 1});
}

TEST_CASE("fibonacci fixed point matches the rotation coding") {
  const auto w = fib_prefix(5000);
  for (long n = 0; n < 5000; ++n) REQUIRE(w[n] == fibonacci_by_rotation(n));
}

TEST_CASE("fixed point is invariant under the substitution") {
  const auto w = fib_prefix(3000);
  const auto sw = substitute(fibonacci_rule(), w);
  for (std::size_t i = 0; i < w.size(); ++i) REQUIRE(sw[i] == w[i]);
}

TEST_CASE("substitution powers have Fibonacci lengths") {
  std::size_t a = 1, b = 2;
  CHECK(substitution_power(fibonacci_rule(), 1, 0).size() == 1);
  for (int n = 1; n < 20; ++n) {
    CHECK(substitution_power(fibonacci_rule(), 1, n).size() == b);
    const std::size_t c = a + b;
    a = b;
    b = c;
  }
}

TEST_CASE("constant and periodic words") {
  CHECK(generate_word(parse_subshift("periodic: 1"), 0, 4).data == std::vector<int>{1, 1, 1, 1});
  CHECK(generate_word(parse_subshift("constant:3"), -2, 3).data == std::vector<int>{3, 3, 3});
  const auto w = generate_word(parse_subshift("periodic: 1 2"), -3, 5);
  CHECK(w.origin == -3);
  CHECK(w.data == std::vector<int>{2, 1, 2, 1, 2});
}

TEST_CASE("sturmian coding against direct evaluation with the irrational break") {
  // breakpoint 1 - alpha is irrational; 41/70 is a convergent close enough that
  // no orbit point n alpha, n < 10, falls between the two
  const auto spec = parse_subshift("sturmian: alpha=silver; phase=0; breaks=0 41/70 1; values=1 2");
  const auto w = generate_word(spec, 0, 10);
  const long double alpha = std::sqrt(2.0L) - 1.0L;
  for (long n = 0; n < 10; ++n) {
    const long double x = n * alpha - std::floor(n * alpha);
    CHECK(w.data[n] == (x < 1.0L - alpha ? 1 : 2));
  }
}

TEST_CASE("sturmian validation") {
  CHECK_THROWS_AS(parse_subshift("sturmian: alpha=0.5; phase=0; breaks=0 1/2 1; values=1 2"), Error);
  CHECK_THROWS_AS(parse_subshift("sturmian: alpha=golden; phase=0; breaks=0 2/3 1/2 1; values=1 2 1"), Error);
  CHECK_THROWS_AS(parse_subshift("sturmian: alpha=golden; phase=0; breaks=0 1/2 1; values=1"), Error);
  CHECK_NOTHROW(parse_subshift("sturmian: alpha=golden; phase=0.25; breaks=0 1/2 1; values=1 2"));
}

TEST_CASE("parse errors carry invalid_argument") {
  for (const char* bad : {"nonsense", "substitution: 1 -> ; seed 1", "substitution: 1 -> 2 1; 2 -> 1; seed 1",
                          "periodic:", "periodic: 0 1", "constant:x", "explicit:/no/such/file"}) {
    try {
      (void)generate_word(parse_subshift(bad), 0, 4);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK((e.code() == ErrorCode::invalid_argument || e.code() == ErrorCode::io));
    }
  }
}

TEST_CASE("describe round-trips through the parser") {
  for (const char* text : {"fibonacci", "periodic: 1 2 2", "substitution: 1 -> 1 2; 2 -> 1 3; 3 -> 1; seed 1",
                           "sturmian: alpha=golden; phase=0.1; breaks=0 1/3 1; values=2 1"}) {
    const auto a = parse_subshift(text);
    const auto b = parse_subshift(describe(a));
    CHECK(generate_word(a, -20, 200).data == generate_word(b, -20, 200).data);
  }
}

TEST_CASE("two-sided extension of the Fibonacci word is legal") {
  const auto w = generate_word(fibonacci_rule(), -500, 1000);
  // factors of length 6 on the two-sided window are exactly those of the one-sided word
  const auto left = factor_statistics(w.slice(-500, 500), 6);
  const auto right = factor_statistics(generate_word(fibonacci_rule(), 0, 5000), 6);
  for (const auto& [f, _] : left.frequency) CHECK(right.frequency.count(f) == 1);
  // no "2 2" and no "1 1 1"
  for (std::size_t i = 0; i + 2 < w.size(); ++i) {
    REQUIRE(!(w.data[i] == 2 && w.data[i + 1] == 2));
    REQUIRE(!(w.data[i] == 1 && w.data[i + 1] == 1 && w.data[i + 2] == 1));
  }
}

TEST_CASE("one-sided substitutions refuse negative origins") {
  CHECK_THROWS_AS(generate_word(parse_subshift("substitution: 1 -> 1 2; 2 -> 1; seed 1; one-sided"), -1, 4), Error);
}

TEST_CASE("shift distance examples") {
  const SymbolWindow a(-10, std::vector<int>(21, 1));
  CHECK(shift_distance(a, a).value == 0.0);
  auto b = a;
  b.data[10] = 2;  // n = 0
  CHECK(shift_distance(a, b).value == doctest::Approx(0.5).epsilon(1e-15));
  auto c = a;
  c.data[9] = 2;   // n = -1
  c.data[11] = 2;  // n = 1
  CHECK(shift_distance(a, c).value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(shift_distance(a, c).tail_bound == doctest::Approx(std::ldexp(1.0, -11) * 2));
}

TEST_CASE("shift distance is a metric on random windows") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> sym(1, 3);
  auto random_window = [&] {
    std::vector<int> v(41);
    for (int& s : v) s = sym(rng);
    return SymbolWindow(-20, v);
  };
  for (int t = 0; t < 200; ++t) {
    const auto x = random_window(), y = random_window(), z = random_window();
    const double dxy = shift_distance(x, y).value, dyz = shift_distance(y, z).value, dxz = shift_distance(x, z).value;
    CHECK(dxy == shift_distance(y, x).value);
    CHECK(dxz <= dxy + dyz + 1e-15);
    CHECK(dxy >= 0.0);
    CHECK(dxy <= 1.5);
  }
}

TEST_CASE("factor statistics") {
  const auto f1 = factor_statistics(generate_word(fibonacci_rule(), 0, 1000), 1);
  CHECK(f1.complexity == 2);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(f1.frequency.at({1}) == doctest::Approx(g).epsilon(2e-3));
  CHECK(f1.frequency.at({2}) == doctest::Approx(1 - g).epsilon(3e-3));
  CHECK(factor_statistics(generate_word(fibonacci_rule(), 0, 2000), 4).complexity == 5);
  const auto c = factor_statistics(generate_word(parse_subshift("constant:1"), 0, 100), 3);
  CHECK(c.complexity == 1);
  CHECK(c.frequency.begin()->second == 1.0);
}

TEST_CASE("Sturmian complexity p(n) = n + 1 on the Fibonacci word") {
  const auto w = generate_word(fibonacci_rule(), 0, 20000);
  for (std::size_t n = 1; n <= 30; ++n) CHECK(factor_statistics(w, n).complexity == n + 1);
}

TEST_CASE("factor frequencies sum to one") {
  const auto w = generate_word(parse_subshift("sturmian: alpha=silver; phase=0.3; breaks=0 1/3 2/3 1; values=1 2 3"), 0, 5000);
  for (std::size_t n : {1u, 3u, 7u}) {
    double total = 0;
    for (const auto& [_, f] : factor_statistics(w, n).frequency) total += f;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("factor statistics needs a long enough window") {
  CHECK_THROWS_AS(factor_statistics(generate_word(fibonacci_rule(), 0, 50), 6), Error);
}

TEST_CASE("Boshernitzan profile examples") {
  const auto c = boshernitzan_profile(generate_word(parse_subshift("constant:1"), 0, 1000), 10);
  for (const auto& p : c) CHECK(p.scaled == doctest::Approx(static_cast<double>(p.n)));
  const auto per = boshernitzan_profile(generate_word(parse_subshift("periodic:1 2"), 0, 1000), 2);
  // 999 positions: 500 copies of 12, 499 of 21
  CHECK(per[1].min_frequency == doctest::Approx(499.0 / 999));
  CHECK(per[1].scaled == doctest::Approx(2 * 499.0 / 999));
}

TEST_CASE("Fibonacci Boshernitzan floor against brute-force counting") {
  const auto w = generate_word(fibonacci_rule(), 0, 20000);
  const auto prof = boshernitzan_profile(w, 12);
  for (const auto& p : prof) {
    std::map<std::vector<int>, long> counts;
    const std::size_t total = w.size() - p.n + 1;
    for (std::size_t i = 0; i < total; ++i) ++counts[std::vector<int>(w.data.begin() + i, w.data.begin() + i + p.n)];
    long lo = static_cast<long>(total);
    for (const auto& [_, c] : counts) lo = std::min(lo, c);
    CHECK(p.min_frequency == doctest::Approx(static_cast<double>(lo) / total).epsilon(1e-12));
    CHECK(p.scaled > 0.2);
  }
}

TEST_CASE("fibonacci letters are detected") {
  CHECK(fibonacci_letters(parse_subshift("fibonacci")) == std::pair<int, int>{1, 2});
  CHECK(fibonacci_letters(parse_subshift("substitution: 2 -> 2 5; 5 -> 2; seed 2")) == std::pair<int, int>{2, 5});
  CHECK(fibonacci_letters(parse_subshift("periodic:1 2")) == std::pair<int, int>{0, 0});
}
