#include "qgspec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qgspec/error.hpp"

namespace qgs {

namespace {

// Pulls "key=value" header lines off the front of a token stream.
struct Header {
  long origin = 0;
  std::string mode;
  std::string body;
};

Header split_header(const std::string& text) {
  Header h;
  std::istringstream in(text);
  std::string line;
  std::ostringstream body;
  bool in_body = false;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (!in_body && first != std::string::npos && line[first] == '#') continue;
    if (!in_body && line.find('=') != std::string::npos) {
      const auto eq = line.find('=');
      std::string key = line.substr(0, eq);
      std::string val = line.substr(eq + 1);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t\r") + 1);
      val.erase(0, val.find_first_not_of(" \t"));
      val.erase(val.find_last_not_of(" \t\r") + 1);
      if (key == "origin") {
        try {
          std::size_t pos = 0;
          h.origin = std::stol(val, &pos);
          require(pos == val.size(), "bad origin '" + val + "'");
        } catch (const std::logic_error&) {
          fail(ErrorCode::invalid_argument, "bad origin '" + val + "'");
        }
      } else if (key == "mode") {
        h.mode = val;
      } else {
        fail(ErrorCode::invalid_argument, "unknown header key '" + key + "'");
      }
      continue;
    }
    in_body = true;
    body << line << '\n';
  }
  h.body = body.str();
  return h;
}

}  // namespace

SymbolWindow parse_word_text(const std::string& text) {
  const Header h = split_header(text);
  std::istringstream in(h.body);
  std::vector<int> data;
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::logic_error&) {
      fail(ErrorCode::invalid_argument, "bad symbol '" + tok + "' in word file");
    }
    require(pos == tok.size(), "bad symbol '" + tok + "' in word file");
    data.push_back(v);
  }
  require(!data.empty(), "word file has no symbols");
  return SymbolWindow(h.origin, std::move(data));
}

SymbolWindow read_word_file(const std::string& path) { return parse_word_text(read_text_file(path)); }

std::string format_word(const SymbolWindow& window) {
  std::ostringstream os;
  os << "origin=" << window.origin << '\n';
  for (std::size_t i = 0; i < window.size(); ++i) {
    os << window.data[i] << ((i + 1) % 40 == 0 || i + 1 == window.size() ? '\n' : ' ');
  }
  return os.str();
}

void write_word_file(const std::string& path, const SymbolWindow& window) { write_text_file(path, format_word(window)); }

WeightProfile parse_weight_text(const std::string& text) {
  const Header h = split_header(text);
  WeightProfile p;
  p.origin = h.origin;
  p.mode = parse_mode(h.mode.empty() ? "simplified" : h.mode);
  require(p.mode != Mode::verbatim, "weight files cannot use verbatim mode");
  std::istringstream in(h.body);
  std::string tok;
  while (in >> tok) {
    double v = 0.0;
    try {
      v = std::stod(tok);
    } catch (const std::logic_error&) {
      fail(ErrorCode::invalid_argument, "bad weight '" + tok + "'");
    }
    require(v >= 1.0, "weights must be >= 1");
    p.weights.push_back(v);
  }
  require(!p.weights.empty(), "weight file has no entries");
  return p;
}

std::string format_weights(const WeightProfile& profile) {
  std::ostringstream os;
  os << "origin=" << profile.origin << "\nmode=" << to_string(profile.mode) << '\n';
  for (std::size_t i = 0; i < profile.size(); ++i) {
    os << fmt(profile.weights[i]) << ((i + 1) % 40 == 0 || i + 1 == profile.size() ? '\n' : ' ');
  }
  return os.str();
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      out += '"';
      for (char c : f) {
        if (c == '"') out += '"';
        out += c;
      }
      out += '"';
    } else {
      out += f;
    }
  }
  out += '\n';
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail(ErrorCode::io, "write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qgs
