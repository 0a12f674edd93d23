#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "quotnet/types.hpp"

namespace quotnet {

// Doubles are written with 17 significant digits throughout, which
// round-trips every finite value exactly.
std::string fmt17(double v);

// ---- draws file ------------------------------------------------------------
// Header "n r M", then M blocks of n lines with r whitespace-separated reals.

void write_draws(const std::string& path, const DrawSet& draws);

// Parses a draws file. Factors that are not centered within tolerance are
// centered on load (raw configuration draws are accepted this way); already
// centered factors are kept bit-exact. `recentered`, when given, reports
// whether any centering happened.
DrawSet read_draws(const std::string& path, bool* recentered = nullptr);

// One real per line, M lines.
void write_intercepts(const std::string& path, const std::vector<double>& intercepts);
std::vector<double> read_intercepts(const std::string& path);

// ---- adjacency file --------------------------------------------------------
// Dense form: header "n", then n lines of n space-separated 0/1 entries.
// Edge-list form: header "n", then lines "i j" with 0-based indices, i < j.

void write_adjacency(const std::string& path, const AdjacencyMatrix& graph,
                     bool edge_list = false);
AdjacencyMatrix read_adjacency(const std::string& path);

// ---- gram file -------------------------------------------------------------
// Header "n r" (dimension and rank bound), then n lines of n reals.

void write_gram(const std::string& path, const GramMatrix& gram);
GramMatrix read_gram(const std::string& path);

// ---- report ----------------------------------------------------------------
// Structured-text key-value object: one "key = value" line per entry, values
// are booleans, integers, 17-digit reals, quoted strings or bracketed lists.

class Report {
 public:
  using Value = std::variant<bool, long long, double, std::string,
                             std::vector<double>, std::vector<long long>>;

  void set(const std::string& key, Value value);
  bool contains(const std::string& key) const;
  const Value& at(const std::string& key) const;
  double number(const std::string& key) const;  // integer or real as double

  std::string to_string() const;
  void write(const std::string& path) const;
  static Report parse_string(const std::string& text);
  static Report read(const std::string& path);

  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, Value>> entries_;  // insertion order
};

// ---- csv tables ------------------------------------------------------------
// Comma-separated with one header row; cells carry preformatted text.

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column_index(const std::string& name) const;  // -1 when absent
};

void write_csv(const std::string& path, const Table& table);
Table read_csv(const std::string& path);

// ---- helpers ---------------------------------------------------------------

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace quotnet
