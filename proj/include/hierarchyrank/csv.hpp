#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hierarchyrank::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  ///< 1-based line on which the row starts.
};

/// Streaming RFC-4180 reader. Quoted fields may contain commas, doubled
/// quotes and line breaks. CRLF and LF line endings are both accepted.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Next row, or nullopt at end of input. Throws FormatError on an
  /// unterminated quoted field or stray quote.
  std::optional<Row> next();

 private:
  std::istream& in_;
  std::size_t line_ = 1;
};

/// Quotes `field` only when it contains a delimiter, quote or line break.
std::string escape(std::string_view field);

/// Writes one row terminated by '\n'.
void write_row(std::ostream& out, const std::vector<std::string>& fields);

std::string trim(std::string_view s);

/// Locale-independent fixed-point formatting.
std::string format_fixed(double value, int decimals);

/// Shortest round-tripping representation, locale-independent.
std::string format_real(double value);

}  // namespace hierarchyrank::csv
