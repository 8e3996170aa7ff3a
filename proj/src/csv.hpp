#pragma once

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF, UTF-8 BOM.

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace netpoint::csv {

class Reader {
public:
  Reader(std::istream& in, std::string name);

  /// Column index of a header name, if present (case-insensitive).
  std::optional<std::size_t> column(std::string_view name) const;
  /// Same, throwing ParseError when absent.
  std::size_t require_column(std::string_view name) const;

  /// Next data row; false at end of input. Blank lines are skipped.
  bool next(std::vector<std::string>& fields);
  /// 1-based data row number of the last row returned.
  std::size_t row() const noexcept { return row_; }
  const std::string& name() const noexcept { return name_; }

  [[noreturn]] void error(std::string_view column, const std::string& message) const;

  double number(const std::vector<std::string>& fields, std::size_t col) const;
  long long integer(const std::vector<std::string>& fields, std::size_t col) const;

private:
  bool read_record(std::vector<std::string>& fields);

  std::istream& in_;
  std::string name_;
  std::vector<std::string> header_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t row_ = 0;
};

}  // namespace netpoint::csv
