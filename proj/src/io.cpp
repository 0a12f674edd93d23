#include "quotnet/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "quotnet/quotient.hpp"

namespace quotnet {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw IoError(path + ": " + why);
}

std::vector<std::string> tokenize(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_real(const std::string& tok, const std::string& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size() || !std::isfinite(v)) fail(path, "bad real value '" + tok + "'");
    return v;
  } catch (const IoError&) {
    throw;
  } catch (const std::exception&) {
    fail(path, "bad real value '" + tok + "'");
  }
}

long long parse_int(const std::string& tok, const std::string& path) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size()) fail(path, "bad integer '" + tok + "'");
    return v;
  } catch (const IoError&) {
    throw;
  } catch (const std::exception&) {
    fail(path, "bad integer '" + tok + "'");
  }
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open for reading");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open for writing");
  out << content;
  if (!out) fail(path, "write failed");
}

// ---- draws file ------------------------------------------------------------

void write_draws(const std::string& path, const DrawSet& draws) {
  draws.validate();
  std::ostringstream out;
  out << draws.n() << ' ' << draws.r() << ' ' << draws.size() << '\n';
  for (const auto& f : draws.factors)
    for (Index i = 0; i < f.n(); ++i) {
      for (Index j = 0; j < f.r(); ++j) {
        if (j) out << ' ';
        out << fmt17(f.Y(i, j));
      }
      out << '\n';
    }
  write_file(path, out.str());
}

DrawSet read_draws(const std::string& path, bool* recentered) {
  const std::vector<std::string> tokens = tokenize(read_file(path));
  if (tokens.size() < 3) fail(path, "missing 'n r M' header");
  const long long n = parse_int(tokens[0], path);
  const long long r = parse_int(tokens[1], path);
  const long long m = parse_int(tokens[2], path);
  if (n < 2 || r < 1 || m < 1) fail(path, "header values out of range");
  const std::size_t expected = 3 + static_cast<std::size_t>(n * r * m);
  if (tokens.size() != expected)
    fail(path, "expected " + std::to_string(expected - 3) + " values, found " +
                   std::to_string(tokens.size() - 3));

  bool any_recentered = false;
  DrawSet draws;
  draws.factors.reserve(static_cast<std::size_t>(m));
  std::size_t t = 3;
  for (long long d = 0; d < m; ++d) {
    Matrix y(n, r);
    for (long long i = 0; i < n; ++i)
      for (long long j = 0; j < r; ++j) y(i, j) = parse_real(tokens[t++], path);
    if (is_centered(y)) {
      draws.factors.push_back(CenteredFactor{std::move(y)});
    } else {
      any_recentered = true;
      draws.factors.push_back(center_configuration(y));
    }
  }
  if (recentered) *recentered = any_recentered;
  draws.validate();
  return draws;
}

void write_intercepts(const std::string& path, const std::vector<double>& intercepts) {
  std::ostringstream out;
  for (double a : intercepts) out << fmt17(a) << '\n';
  write_file(path, out.str());
}

std::vector<double> read_intercepts(const std::string& path) {
  const std::vector<std::string> tokens = tokenize(read_file(path));
  if (tokens.empty()) fail(path, "empty intercepts file");
  std::vector<double> values;
  values.reserve(tokens.size());
  for (const auto& tok : tokens) values.push_back(parse_real(tok, path));
  return values;
}

// ---- adjacency file --------------------------------------------------------

void write_adjacency(const std::string& path, const AdjacencyMatrix& graph,
                     bool edge_list) {
  validate_adjacency(graph);
  const Index n = graph.rows();
  std::ostringstream out;
  out << n << '\n';
  if (edge_list) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (graph(i, j)) out << i << ' ' << j << '\n';
  } else {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (j) out << ' ';
        out << graph(i, j);
      }
      out << '\n';
    }
  }
  write_file(path, out.str());
}

AdjacencyMatrix read_adjacency(const std::string& path) {
  const std::vector<std::string> tokens = tokenize(read_file(path));
  if (tokens.empty()) fail(path, "missing 'n' header");
  const long long n = parse_int(tokens[0], path);
  if (n < 1) fail(path, "node count must be positive");
  AdjacencyMatrix a = AdjacencyMatrix::Zero(n, n);

  const std::size_t rest = tokens.size() - 1;
  if (rest == static_cast<std::size_t>(n * n)) {
    // Dense form.
    std::size_t t = 1;
    for (long long i = 0; i < n; ++i)
      for (long long j = 0; j < n; ++j) {
        const long long v = parse_int(tokens[t++], path);
        if (v != 0 && v != 1) fail(path, "adjacency entries must be 0 or 1");
        a(i, j) = static_cast<int>(v);
      }
    try {
      validate_adjacency(a);
    } catch (const InvalidInputError& e) {
      fail(path, e.what());
    }
    return a;
  }

  // Edge-list form.
  if (rest % 2 != 0) fail(path, "edge list must hold 'i j' pairs");
  for (std::size_t t = 1; t < tokens.size(); t += 2) {
    const long long i = parse_int(tokens[t], path);
    const long long j = parse_int(tokens[t + 1], path);
    if (i < 0 || j < 0 || i >= n || j >= n) fail(path, "edge index out of range");
    if (i == j) fail(path, "self-loops are not allowed");
    if (i >= j) fail(path, "edge list requires i < j");
    a(i, j) = 1;
    a(j, i) = 1;
  }
  return a;
}

// ---- gram file -------------------------------------------------------------

void write_gram(const std::string& path, const GramMatrix& gram) {
  const Index n = gram.n();
  std::ostringstream out;
  out << n << ' ' << gram.rank_bound << '\n';
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << fmt17(gram.B(i, j));
    }
    out << '\n';
  }
  write_file(path, out.str());
}

GramMatrix read_gram(const std::string& path) {
  const std::vector<std::string> tokens = tokenize(read_file(path));
  if (tokens.size() < 2) fail(path, "missing 'n r' header");
  const long long n = parse_int(tokens[0], path);
  const long long r = parse_int(tokens[1], path);
  if (n < 1 || r < 0) fail(path, "header values out of range");
  if (tokens.size() != 2 + static_cast<std::size_t>(n * n))
    fail(path, "expected " + std::to_string(n * n) + " matrix entries");
  Matrix b(n, n);
  std::size_t t = 2;
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) b(i, j) = parse_real(tokens[t++], path);
  return GramMatrix{std::move(b), static_cast<int>(r)};
}

// ---- report ----------------------------------------------------------------

namespace {

std::string value_to_string(const Report::Value& v) {
  struct Visitor {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(double d) const { return fmt17(d); }
    std::string operator()(const std::string& s) const { return '"' + s + '"'; }
    std::string operator()(const std::vector<double>& xs) const {
      std::string out = "[";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += fmt17(xs[i]);
      }
      return out + "]";
    }
    std::string operator()(const std::vector<long long>& xs) const {
      std::string out = "[";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(xs[i]);
      }
      return out + "]";
    }
  };
  return std::visit(Visitor{}, v);
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool looks_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Report::Value parse_value(const std::string& raw, const std::string& context) {
  const std::string s = trim(raw);
  if (s == "true") return true;
  if (s == "false") return false;
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    return s.substr(1, s.size() - 2);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    const std::string body = s.substr(1, s.size() - 2);
    std::vector<std::string> items;
    std::string cur;
    for (char c : body) {
      if (c == ',') {
        items.push_back(trim(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!trim(cur).empty()) items.push_back(trim(cur));
    bool all_int = true;
    for (const auto& it : items) all_int = all_int && looks_integer(it);
    if (all_int && !items.empty()) {
      std::vector<long long> xs;
      for (const auto& it : items) xs.push_back(parse_int(it, context));
      return xs;
    }
    std::vector<double> xs;
    for (const auto& it : items) xs.push_back(parse_real(it, context));
    return xs;
  }
  if (looks_integer(s)) return parse_int(s, context);
  return parse_real(s, context);
}

}  // namespace

void Report::set(const std::string& key, Value value) {
  for (auto& [k, v] : entries_)
    if (k == key) {
      v = std::move(value);
      return;
    }
  entries_.emplace_back(key, std::move(value));
}

bool Report::contains(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return true;
  return false;
}

const Report::Value& Report::at(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  throw IoError("report: missing key '" + key + "'");
}

double Report::number(const std::string& key) const {
  const Value& v = at(key);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<long long>(&v)) return static_cast<double>(*i);
  throw IoError("report: key '" + key + "' is not numeric");
}

std::string Report::to_string() const {
  std::ostringstream out;
  out << "# quotnet report v1\n";
  for (const auto& [k, v] : entries_) out << k << " = " << value_to_string(v) << '\n';
  return out.str();
}

void Report::write(const std::string& path) const { write_file(path, to_string()); }

Report Report::parse_string(const std::string& text) {
  Report rep;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) throw IoError("report: malformed line '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw IoError("report: empty key");
    rep.set(key, parse_value(t.substr(eq + 1), "report"));
  }
  return rep;
}

Report Report::read(const std::string& path) { return parse_string(read_file(path)); }

// ---- csv tables ------------------------------------------------------------

int Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

void write_csv(const std::string& path, const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw IoError(path + ": row width disagrees with header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  write_file(path, out.str());
}

Table read_csv(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  Table table;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    cells.push_back(cur);
    if (header) {
      table.columns = std::move(cells);
      header = false;
    } else {
      if (cells.size() != table.columns.size())
        fail(path, "row width disagrees with header");
      table.rows.push_back(std::move(cells));
    }
  }
  if (header) fail(path, "missing header row");
  return table;
}

}  // namespace quotnet
