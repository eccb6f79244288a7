#include "qf/io.hpp"

#include <charconv>
#include <cstdio>
#include <optional>

#include <json.hpp>

namespace qf {

namespace {

[[noreturn]] void parse_fail(std::size_t line, std::string const& reason) {
  throw Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": " + reason);
}

struct ContentLine {
  std::size_t number = 0;
  std::vector<std::string_view> tokens;
};

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {
    if (text.empty()) parse_fail(1, "empty input");
    if (text.back() != '\n') {
      std::size_t lines = 1;
      for (char c : text) lines += c == '\n';
      parse_fail(lines, "missing final newline");
    }
  }

  // Next line with at least one token after comment removal.
  std::optional<ContentLine> next() {
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++number_;
      if (std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      ContentLine out{number_, {}};
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.tokens.push_back(line.substr(start, i - start));
      }
      if (!out.tokens.empty()) return out;
    }
    return std::nullopt;
  }

  std::size_t line_count() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

std::uint64_t parse_number(std::string_view token, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    parse_fail(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return v;
}

// Reads one table; nullopt at the end of input.
std::optional<CayleyTable> read_table(LineReader& reader) {
  std::optional<ContentLine> header = reader.next();
  if (!header) return std::nullopt;
  if (header->tokens.size() != 1) parse_fail(header->number, "the first line must hold only the order");
  std::uint64_t n = parse_number(header->tokens[0], header->number);
  if (n == 0 || n > kMaxOrder) parse_fail(header->number, "order " + std::to_string(n) + " out of range");
  std::vector<Element> entries;
  entries.reserve(n * n);
  for (std::uint64_t x = 0; x < n; ++x) {
    std::optional<ContentLine> row = reader.next();
    if (!row) parse_fail(reader.line_count() + 1, "expected row " + std::to_string(x));
    if (row->tokens.size() != n) {
      parse_fail(row->number, "row " + std::to_string(x) + " has " + std::to_string(row->tokens.size()) +
                                  " entries, expected " + std::to_string(n));
    }
    for (std::string_view token : row->tokens) {
      std::uint64_t v = parse_number(token, row->number);
      if (v >= n) parse_fail(row->number, "entry " + std::to_string(v) + " out of range");
      entries.push_back(static_cast<Element>(v));
    }
  }
  return CayleyTable::from_table(n, entries);
}

}  // namespace

CayleyTable parse_table(std::string_view text) {
  LineReader reader(text);
  std::optional<CayleyTable> table = read_table(reader);
  if (!table) parse_fail(reader.line_count(), "no table");
  if (std::optional<ContentLine> extra = reader.next()) parse_fail(extra->number, "unexpected content after the table");
  return *table;
}

std::vector<CayleyTable> parse_table_stream(std::string_view text) {
  std::vector<CayleyTable> out;
  if (text.empty()) return out;
  LineReader reader(text);
  while (std::optional<CayleyTable> table = read_table(reader)) out.push_back(std::move(*table));
  return out;
}

std::string render_table(CayleyTable const& q) {
  std::string out = std::to_string(q.order()) + "\n";
  for (Element x = 0; x < q.order(); ++x) {
    for (Element y = 0; y < q.order(); ++y) {
      if (y != 0) out += ' ';
      out += std::to_string(q.mul(x, y));
    }
    out += '\n';
  }
  return out;
}

std::string table_digest(CayleyTable const& q) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : render_table(q)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string form_to_json(ArithmeticForm const& form) {
  nlohmann::json j;
  FiniteLoop const& l = form.loop;
  nlohmann::json rows = nlohmann::json::array();
  for (Element x = 0; x < l.order(); ++x) rows.push_back(l.table().row(x));
  j["e"] = form.e;
  j["f"] = std::vector<Element>(form.f.images().begin(), form.f.images().end());
  j["g"] = std::vector<Element>(form.g.images().begin(), form.g.images().end());
  j["loop_table"] = std::move(rows);
  j["order"] = l.order();
  j["strong"] = form.strong;
  j["zero"] = l.zero();
  return j.dump();
}

ArithmeticForm form_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (nlohmann::json::exception const& e) {
    throw Error(ErrorKind::parse_error, std::string("invalid JSON: ") + e.what());
  }
  try {
    auto n = j.at("order").get<std::size_t>();
    auto rows = j.at("loop_table").get<std::vector<std::vector<Element>>>();
    if (rows.size() != n) throw Error(ErrorKind::parse_error, "loop_table does not have order rows");
    FiniteLoop loop(CayleyTable::from_rows(rows), j.at("zero").get<Element>());
    Permutation f(j.at("f").get<std::vector<Element>>());
    Permutation g(j.at("g").get<std::vector<Element>>());
    auto e = j.at("e").get<Element>();
    if (f.size() != n || g.size() != n || e >= n) throw Error(ErrorKind::parse_error, "form components out of range");
    return ArithmeticForm{std::move(loop), std::move(f), std::move(g), e, j.at("strong").get<bool>()};
  } catch (nlohmann::json::exception const& e) {
    throw Error(ErrorKind::parse_error, std::string("malformed form: ") + e.what());
  }
}

}  // namespace qf
