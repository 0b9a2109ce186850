#include "qgspec/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "qgspec/error.hpp"
#include "qgspec/io.hpp"

namespace qgs {

Alphabet::Alphabet(std::vector<int> symbols) : symbols_(std::move(symbols)) {
  std::sort(symbols_.begin(), symbols_.end());
  require(std::adjacent_find(symbols_.begin(), symbols_.end()) == symbols_.end(),
          "alphabet has duplicate symbols");
  require(symbols_.empty() || symbols_.front() >= 1, "alphabet symbols must be >= 1");
}

bool Alphabet::contains(int s) const {
  return std::binary_search(symbols_.begin(), symbols_.end(), s);
}

SymbolWindow::SymbolWindow(long origin_, std::vector<int> data_) : origin(origin_), data(std::move(data_)) {
  require(!data.empty(), "symbol window must be nonempty");
  for (int s : data) require(s >= 1, "symbols must be positive integers");
}

int SymbolWindow::at(long n) const {
  if (n < origin || n >= end()) {
    fail(ErrorCode::out_of_range, "index " + std::to_string(n) + " outside window [" + std::to_string(origin) +
                                      ", " + std::to_string(end()) + ")");
  }
  return data[static_cast<std::size_t>(n - origin)];
}

SymbolWindow SymbolWindow::slice(long from, std::size_t length) const {
  if (length == 0 || !covers(from, from + static_cast<long>(length) - 1)) {
    fail(ErrorCode::out_of_range, "slice outside window");
  }
  auto first = data.begin() + (from - origin);
  return SymbolWindow(from, std::vector<int>(first, first + static_cast<long>(length)));
}

Alphabet SymbolWindow::alphabet() const {
  std::set<int> s(data.begin(), data.end());
  return Alphabet(std::vector<int>(s.begin(), s.end()));
}

SubstitutionRule fibonacci_rule() {
  SubstitutionRule r;
  r.images = {{1, {1, 2}}, {2, {1}}};
  r.seed = 1;
  return r;
}

namespace {

bool is_near_rational(double alpha) {
  constexpr long kMaxDen = 1000000;
  for (long q = 1; q <= kMaxDen; ++q) {
    const double p = std::nearbyint(alpha * static_cast<double>(q));
    if (std::abs(alpha - p / static_cast<double>(q)) <= 1e-15) return true;
  }
  return false;
}

void validate_rule(const SubstitutionRule& r) {
  require(!r.images.empty(), "substitution has no rules");
  for (const auto& [sym, img] : r.images) {
    require(sym >= 1, "substitution symbols must be >= 1");
    require(!img.empty(), "substitution image of " + std::to_string(sym) + " is empty");
    for (int t : img) require(r.images.count(t) == 1, "substitution image uses undefined symbol " + std::to_string(t));
  }
  auto it = r.images.find(r.seed);
  require(it != r.images.end(), "substitution seed has no rule");
  require(it->second.front() == r.seed, "image of seed does not start with seed; no fixed point");
  require(it->second.size() >= 2, "image of seed must be longer than the seed");
}

void validate_sturmian(const SturmianCoding& s) {
  require(s.alpha > 0.0 && s.alpha < 1.0, "sturmian alpha must lie in (0,1)");
  require(s.phase >= 0.0 && s.phase < 1.0, "sturmian phase must lie in [0,1)");
  require(s.breaks.size() >= 2, "sturmian partition needs at least two breakpoints");
  require(s.values.size() + 1 == s.breaks.size(), "sturmian needs one value per partition interval");
  for (const auto& b : s.breaks) require(b.den > 0, "partition breakpoint has nonpositive denominator");
  require(s.breaks.front().num == 0, "partition must start at 0");
  require(s.breaks.back().num == s.breaks.back().den, "partition must end at 1");
  for (std::size_t i = 1; i < s.breaks.size(); ++i) {
    // exact comparison of p1/q1 < p2/q2
    require(s.breaks[i - 1].num * s.breaks[i].den < s.breaks[i].num * s.breaks[i - 1].den,
            "partition breakpoints must be strictly increasing");
  }
  for (int v : s.values) require(v >= 1, "sturmian values must be >= 1");
  require(std::set<int>(s.values.begin(), s.values.end()).size() >= 2,
          "sturmian coding needs at least two distinct values");
  require(!is_near_rational(s.alpha), "alpha is rational within denominator bound 1e6");
}

}  // namespace

void validate(const SubshiftSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SubstitutionRule>) {
          validate_rule(s);
        } else if constexpr (std::is_same_v<T, SturmianCoding>) {
          validate_sturmian(s);
        } else if constexpr (std::is_same_v<T, PeriodicWord>) {
          require(!s.word.empty(), "periodic word is empty");
          for (int v : s.word) require(v >= 1, "symbols must be >= 1");
        } else {
          require(s.window.size() > 0, "explicit window is empty");
        }
      },
      spec);
}

std::vector<int> substitute(const SubstitutionRule& rule, const std::vector<int>& word) {
  std::vector<int> out;
  out.reserve(word.size() * 2);
  for (int s : word) {
    auto it = rule.images.find(s);
    if (it == rule.images.end()) fail(ErrorCode::invalid_argument, "no substitution rule for symbol " + std::to_string(s));
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

std::vector<int> substitution_power(const SubstitutionRule& rule, int letter, int n) {
  std::vector<int> w{letter};
  for (int i = 0; i < n; ++i) w = substitute(rule, w);
  return w;
}

namespace {

std::vector<int> one_sided_prefix(const SubstitutionRule& rule, std::size_t length) {
  std::vector<int> w{rule.seed};
  while (w.size() < length) {
    auto next = substitute(rule, w);
    require(next.size() > w.size(), "substitution does not grow from the seed");
    w = std::move(next);
  }
  w.resize(length);
  return w;
}

bool contains_factor(const std::vector<int>& hay, int x, int y) {
  for (std::size_t i = 0; i + 1 < hay.size(); ++i)
    if (hay[i] == x && hay[i + 1] == y) return true;
  return false;
}

// Left half of the two-sided extension: a letter b with "b seed" legal and a
// power p such that S^p(b) ends with b. The left half is then the limit of the
// suffixes S^{pk}(b). Returns the suffix of length >= length, or empty if no
// such b exists.
std::vector<int> left_extension(const SubstitutionRule& rule, std::size_t length) {
  const auto prefix = one_sided_prefix(rule, 20000);
  std::vector<int> candidates{rule.seed};
  for (const auto& [sym, img] : rule.images)
    if (sym != rule.seed) candidates.push_back(sym);
  for (int b : candidates) {
    if (!contains_factor(prefix, b, rule.seed)) continue;
    for (int p = 1; p <= 12; ++p) {
      const auto img = substitution_power(rule, b, p);
      if (img.back() != b || img.size() < 2) continue;
      std::vector<int> w{b};
      while (w.size() < length) {
        std::vector<int> next = w;
        for (int i = 0; i < p; ++i) next = substitute(rule, next);
        if (next.size() <= w.size()) break;
        w = std::move(next);
      }
      if (w.size() >= length) return w;
    }
  }
  return {};
}

int sturmian_symbol(const SturmianCoding& s, long n) {
  const long double x = static_cast<long double>(n) * static_cast<long double>(s.alpha) +
                        static_cast<long double>(s.phase);
  const long double frac = x - std::floor(x);
  for (std::size_t k = 1; k < s.breaks.size(); ++k) {
    const long double hi = static_cast<long double>(s.breaks[k].num) / static_cast<long double>(s.breaks[k].den);
    if (frac < hi) return s.values[k - 1];
  }
  return s.values.back();
}

}  // namespace

SymbolWindow generate_word(const SubshiftSpec& spec, long origin, std::size_t length) {
  require(length >= 1, "word length must be >= 1");
  validate(spec);
  std::vector<int> out(length);
  const long last = origin + static_cast<long>(length);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SubstitutionRule>) {
          if (origin < 0 && !s.two_sided) {
            fail(ErrorCode::invalid_argument, "negative origin requested for a one-sided substitution");
          }
          std::vector<int> right;
          if (last > 0) right = one_sided_prefix(s, static_cast<std::size_t>(last));
          std::vector<int> left;
          if (origin < 0) {
            left = left_extension(s, static_cast<std::size_t>(-origin));
            if (left.empty()) fail(ErrorCode::invalid_argument, "substitution admits no two-sided extension");
          }
          for (long n = origin; n < last; ++n) {
            out[static_cast<std::size_t>(n - origin)] =
                n >= 0 ? right[static_cast<std::size_t>(n)] : left[left.size() - static_cast<std::size_t>(-n)];
          }
        } else if constexpr (std::is_same_v<T, SturmianCoding>) {
          for (long n = origin; n < last; ++n) out[static_cast<std::size_t>(n - origin)] = sturmian_symbol(s, n);
        } else if constexpr (std::is_same_v<T, PeriodicWord>) {
          const long p = static_cast<long>(s.word.size());
          for (long n = origin; n < last; ++n) out[static_cast<std::size_t>(n - origin)] = s.word[static_cast<std::size_t>(((n % p) + p) % p)];
        } else {
          out = s.window.slice(origin, length).data;
        }
      },
      spec);
  return SymbolWindow(origin, std::move(out));
}

std::pair<int, int> fibonacci_letters(const SubshiftSpec& spec) {
  const auto* r = std::get_if<SubstitutionRule>(&spec);
  if (!r || r->images.size() != 2) return {0, 0};
  const int a = r->seed;
  auto ia = r->images.find(a);
  if (ia == r->images.end() || ia->second.size() != 2 || ia->second[0] != a) return {0, 0};
  const int b = ia->second[1];
  if (b == a) return {0, 0};
  auto ib = r->images.find(b);
  if (ib == r->images.end() || ib->second != std::vector<int>{a}) return {0, 0};
  return {a, b};
}

// ---------------------------------------------------------------- parsing

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  return parts;
}

int parse_symbol(const std::string& tok) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    fail(ErrorCode::invalid_argument, "bad symbol '" + tok + "'");
  }
  require(pos == tok.size(), "bad symbol '" + tok + "'");
  return v;
}

double parse_real(const std::string& tok) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    fail(ErrorCode::invalid_argument, "bad number '" + tok + "'");
  }
  require(pos == tok.size(), "bad number '" + tok + "'");
  return v;
}

std::vector<int> parse_symbols(const std::string& s) {
  std::vector<int> out;
  std::string tok;
  std::istringstream in(s);
  while (in >> tok) {
    // compact form "12" is accepted only for single-digit alphabets
    if (tok.size() > 1 && tok.find_first_not_of("123456789") == std::string::npos && s.find(' ') == std::string::npos &&
        s.find(',') == std::string::npos) {
      for (char c : tok) out.push_back(c - '0');
    } else {
      out.push_back(parse_symbol(tok));
    }
  }
  return out;
}

std::vector<int> parse_symbol_list(std::string s) {
  std::replace(s.begin(), s.end(), ',', ' ');
  return parse_symbols(s);
}

Rational parse_rational(const std::string& tok) {
  const auto slash = tok.find('/');
  if (slash == std::string::npos) return {static_cast<long>(parse_symbol(tok)), 1};
  return {static_cast<long>(std::stol(tok.substr(0, slash))), static_cast<long>(std::stol(tok.substr(slash + 1)))};
}

double parse_alpha(const std::string& tok) {
  if (tok == "golden") return (std::sqrt(5.0) - 1.0) / 2.0;
  if (tok == "silver" || tok == "sqrt2-1") return std::sqrt(2.0) - 1.0;
  return parse_real(tok);
}

}  // namespace

SubshiftSpec parse_subshift(const std::string& text_in) {
  const std::string text = trim(text_in);
  const auto colon = text.find(':');
  const std::string kind = trim(text.substr(0, colon));
  const std::string body = colon == std::string::npos ? std::string() : trim(text.substr(colon + 1));
  SubshiftSpec spec;
  if (kind == "fibonacci") {
    spec = fibonacci_rule();
  } else if (kind == "constant") {
    spec = PeriodicWord{{body.empty() ? 1 : parse_symbol(body)}};
  } else if (kind == "periodic") {
    spec = PeriodicWord{parse_symbol_list(body)};
  } else if (kind == "substitution") {
    SubstitutionRule r;
    r.images.clear();
    bool have_seed = false;
    for (const auto& part : split(body, ';')) {
      if (part.empty()) continue;
      if (part.rfind("seed", 0) == 0) {
        r.seed = parse_symbol(trim(part.substr(4)));
        have_seed = true;
      } else if (part == "one-sided") {
        r.two_sided = false;
      } else {
        const auto arrow = part.find("->");
        require(arrow != std::string::npos, "substitution rule '" + part + "' lacks '->'");
        r.images[parse_symbol(trim(part.substr(0, arrow)))] = parse_symbol_list(part.substr(arrow + 2));
      }
    }
    if (!have_seed && !r.images.empty()) r.seed = r.images.begin()->first;
    spec = r;
  } else if (kind == "sturmian") {
    SturmianCoding s;
    for (const auto& part : split(body, ';')) {
      if (part.empty()) continue;
      const auto eq = part.find('=');
      require(eq != std::string::npos, "sturmian field '" + part + "' lacks '='");
      const std::string key = trim(part.substr(0, eq));
      const std::string val = trim(part.substr(eq + 1));
      if (key == "alpha") {
        s.alpha = parse_alpha(val);
      } else if (key == "phase") {
        s.phase = parse_real(val);
      } else if (key == "breaks") {
        std::string v = val;
        std::replace(v.begin(), v.end(), ',', ' ');
        std::istringstream in(v);
        std::string tok;
        while (in >> tok) s.breaks.push_back(parse_rational(tok));
      } else if (key == "values") {
        s.values = parse_symbol_list(val);
      } else {
        fail(ErrorCode::invalid_argument, "unknown sturmian field '" + key + "'");
      }
    }
    spec = s;
  } else if (kind == "explicit") {
    require(!body.empty(), "explicit spec needs a word file path");
    spec = ExplicitWindow{read_word_file(body)};
  } else {
    fail(ErrorCode::invalid_argument, "unknown subshift kind '" + kind + "'");
  }
  validate(spec);
  return spec;
}

std::string describe(const SubshiftSpec& spec) {
  std::ostringstream os;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SubstitutionRule>) {
          os << "substitution:";
          for (const auto& [k, v] : s.images) {
            os << ' ' << k << " ->";
            for (int t : v) os << ' ' << t;
            os << ';';
          }
          os << " seed " << s.seed;
          if (!s.two_sided) os << "; one-sided";
        } else if constexpr (std::is_same_v<T, SturmianCoding>) {
          os.precision(17);
          os << "sturmian: alpha=" << s.alpha << "; phase=" << s.phase << "; breaks=";
          for (std::size_t i = 0; i < s.breaks.size(); ++i) os << (i ? " " : "") << s.breaks[i].num << '/' << s.breaks[i].den;
          os << "; values=";
          for (std::size_t i = 0; i < s.values.size(); ++i) os << (i ? " " : "") << s.values[i];
        } else if constexpr (std::is_same_v<T, PeriodicWord>) {
          os << "periodic:";
          for (int t : s.word) os << ' ' << t;
        } else {
          os << "explicit: origin=" << s.window.origin << " length=" << s.window.size();
        }
      },
      spec);
  return os.str();
}

// ---------------------------------------------------------------- analysis

ShiftDistance shift_distance(const SymbolWindow& a, const SymbolWindow& b) {
  const long lo = std::max(a.origin, b.origin);
  const long hi = std::min(a.end(), b.end()) - 1;
  if (lo > hi) fail(ErrorCode::invalid_argument, "windows have no common indices");
  require(lo <= 0 && hi >= 0, "common index range must contain 0");
  ShiftDistance d;
  for (long n = lo; n <= hi; ++n) {
    if (a.at(n) != b.at(n)) d.value += std::ldexp(1.0, -static_cast<int>(std::abs(n)) - 1);
  }
  d.tail_bound = std::ldexp(1.0, -static_cast<int>(hi) - 1) + std::ldexp(1.0, -static_cast<int>(-lo) - 1);
  return d;
}

FactorStatistics factor_statistics(const SymbolWindow& window, std::size_t n) {
  require(n >= 1, "factor length must be >= 1");
  if (window.size() < 10 * n) fail(ErrorCode::invalid_argument, "window too short for factor length");
  FactorStatistics st;
  st.length = n;
  std::map<std::vector<int>, std::size_t> counts;
  const std::size_t positions = window.size() - n + 1;
  for (std::size_t i = 0; i < positions; ++i) {
    counts[std::vector<int>(window.data.begin() + static_cast<long>(i), window.data.begin() + static_cast<long>(i + n))]++;
  }
  for (const auto& [w, c] : counts) st.frequency[w] = static_cast<double>(c) / static_cast<double>(positions);
  st.complexity = counts.size();
  return st;
}

std::vector<BoshernitzanPoint> boshernitzan_profile(const SymbolWindow& window, std::size_t n_max) {
  require(n_max >= 1, "n_max must be >= 1");
  if (window.size() < 10 * n_max) fail(ErrorCode::invalid_argument, "window too short for n_max");
  std::u32string text(window.data.begin(), window.data.end());
  std::vector<BoshernitzanPoint> out;
  out.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::size_t positions = text.size() - n + 1;
    std::unordered_map<std::u32string_view, std::size_t> counts;
    counts.reserve(4 * n + 16);
    const std::u32string_view view(text);
    for (std::size_t i = 0; i < positions; ++i) counts[view.substr(i, n)]++;
    std::size_t least = positions;
    for (const auto& [w, c] : counts) least = std::min(least, c);
    const double eta = static_cast<double>(least) / static_cast<double>(positions);
    out.push_back({n, eta, static_cast<double>(n) * eta});
  }
  return out;
}

}  // namespace qgs
