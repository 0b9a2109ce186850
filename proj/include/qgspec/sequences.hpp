#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace qgs {

// Ordered set of distinct positive symbols (the admissible sphere numbers).
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<int> symbols);

  const std::vector<int>& symbols() const { return symbols_; }
  bool contains(int s) const;
  std::size_t size() const { return symbols_.size(); }

 private:
  std::vector<int> symbols_;
};

// A finite block s_origin, ..., s_{origin+len-1} of a symbol sequence.
struct SymbolWindow {
  long origin = 0;
  std::vector<int> data;

  SymbolWindow() = default;
  SymbolWindow(long origin_, std::vector<int> data_);

  std::size_t size() const { return data.size(); }
  long end() const { return origin + static_cast<long>(data.size()); }  // one past last index
  bool covers(long lo, long hi) const { return lo >= origin && hi < end(); }  // inclusive hi
  int at(long n) const;  // throws out_of_range
  SymbolWindow slice(long from, std::size_t length) const;
  Alphabet alphabet() const;
};

struct Rational {
  long num = 0;
  long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct SubstitutionRule {
  std::map<int, std::vector<int>> images;
  int seed = 1;
  bool two_sided = true;
};

struct SturmianCoding {
  double alpha = 0.0;
  double phase = 0.0;
  std::vector<Rational> breaks;  // 0 = a_0 < ... < a_N = 1
  std::vector<int> values;       // gamma_1 .. gamma_N
};

struct PeriodicWord {
  std::vector<int> word;
};

struct ExplicitWindow {
  SymbolWindow window;
};

using SubshiftSpec = std::variant<SubstitutionRule, SturmianCoding, PeriodicWord, ExplicitWindow>;

SubstitutionRule fibonacci_rule();

// Validates a spec; throws qgs::Error(invalid_argument) on violations.
void validate(const SubshiftSpec& spec);

// Parses the textual spec form used by the CLI and config files:
//   fibonacci | constant:<s> | periodic:<s s ...>
//   substitution:<a> -> <w...>; <b> -> <w...>; seed <a>[; one-sided]
//   sturmian:alpha=<x>; phase=<x>; breaks=<0 p/q ... 1>; values=<g1 ... gN>
//   explicit:<path to word file>
SubshiftSpec parse_subshift(const std::string& text);
std::string describe(const SubshiftSpec& spec);

// Two-letter substitution of Fibonacci type a -> ab, b -> a; returns {a, b} or
// {0, 0} when the spec is not of that type.
std::pair<int, int> fibonacci_letters(const SubshiftSpec& spec);

SymbolWindow generate_word(const SubshiftSpec& spec, long origin, std::size_t length);

// Applies the substitution to a word.
std::vector<int> substitute(const SubstitutionRule& rule, const std::vector<int>& word);

// Iterated image S^n(letter).
std::vector<int> substitution_power(const SubstitutionRule& rule, int letter, int n);

struct ShiftDistance {
  double value = 0.0;       // truncated metric over the common index range
  double tail_bound = 0.0;  // mass of indices outside the common range
};

ShiftDistance shift_distance(const SymbolWindow& a, const SymbolWindow& b);

struct FactorStatistics {
  std::size_t length = 0;
  std::map<std::vector<int>, double> frequency;
  std::size_t complexity = 0;  // p(n)
};

FactorStatistics factor_statistics(const SymbolWindow& window, std::size_t n);

struct BoshernitzanPoint {
  std::size_t n = 0;
  double min_frequency = 0.0;  // eta-hat(n)
  double scaled = 0.0;         // n * eta-hat(n)
};

std::vector<BoshernitzanPoint> boshernitzan_profile(const SymbolWindow& window, std::size_t n_max);

}  // namespace qgs
