#include "hierarchyrank/csv.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "hierarchyrank/errors.hpp"

namespace hierarchyrank::csv {

std::optional<Row> Reader::next() {
  if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;

  Row row;
  row.line = line_;
  std::string field;
  bool quoted = false;      // inside a quoted section
  bool was_quoted = false;  // current field began with a quote
  char c;
  while (in_.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty() || was_quoted) {
        throw FormatError("unexpected quote inside unquoted field", line_);
      }
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      row.fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '\r' && in_.peek() == '\n') {
      // CR of a CRLF pair; the LF ends the row.
    } else if (c == '\n') {
      ++line_;
      row.fields.push_back(std::move(field));
      return row;
    } else {
      if (was_quoted) {
        throw FormatError("characters after closing quote", line_);
      }
      field.push_back(c);
    }
  }
  if (quoted) throw FormatError("unterminated quoted field", row.line);
  row.fields.push_back(std::move(field));
  return row;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

std::string trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return std::string(s.substr(first, last - first + 1));
}

std::string format_fixed(double value, int decimals) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::fixed, decimals);
  if (ec != std::errc{}) return std::to_string(value);
  std::string out(buf, end);
  // "-0.0000" after rounding a tiny negative value
  if (out.front() == '-' &&
      out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

std::string format_real(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return std::to_string(value);
  return std::string(buf, end);
}

}  // namespace hierarchyrank::csv
