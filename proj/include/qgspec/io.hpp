#pragma once

#include <string>
#include <vector>

#include "qgspec/sequences.hpp"
#include "qgspec/sl_core.hpp"

namespace qgs {

// Word files: a header line "origin=<int>" followed by whitespace-separated symbols.
SymbolWindow read_word_file(const std::string& path);
SymbolWindow parse_word_text(const std::string& text);
std::string format_word(const SymbolWindow& window);
void write_word_file(const std::string& path, const SymbolWindow& window);

// Weight files: "origin=<int>", "mode=<graph|simplified>", then the weights.
WeightProfile parse_weight_text(const std::string& text);
std::string format_weights(const WeightProfile& profile);

// %.17g, round-trips doubles and never depends on locale.
std::string fmt(double x);

// One RFC-4180-style row; fields containing separators or quotes are quoted.
std::string csv_row(const std::vector<std::string>& fields);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace qgs
