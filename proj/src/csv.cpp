#include "csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "netpoint/error.hpp"

namespace netpoint::csv {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Reader::Reader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {
  if (!read_record(header_)) {
    fail(ErrorCode::ParseError, name_ + ": missing header row");
  }
  if (!header_.empty() && header_[0].rfind("\xEF\xBB\xBF", 0) == 0) header_[0].erase(0, 3);
  for (std::size_t i = 0; i < header_.size(); ++i) {
    const std::string key = lower(trim(header_[i]));
    if (!index_.emplace(key, i).second) {
      fail(ErrorCode::ParseError, name_ + ": duplicate column '" + key + "'");
    }
  }
}

std::optional<std::size_t> Reader::column(std::string_view name) const {
  auto it = index_.find(lower(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Reader::require_column(std::string_view name) const {
  if (auto c = column(name)) return *c;
  fail(ErrorCode::ParseError, name_ + ": missing column '" + std::string(name) + "'");
}

bool Reader::read_record(std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  char c;
  while (in_.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) fail(ErrorCode::ParseError, name_ + ": unterminated quoted field");
  if (!any) return false;
  if (!field.empty() && field.back() == '\r') field.pop_back();
  fields.push_back(std::move(field));
  return true;
}

bool Reader::next(std::vector<std::string>& fields) {
  while (read_record(fields)) {
    const bool blank = fields.size() == 1 && trim(fields[0]).empty();
    if (blank) continue;
    ++row_;
    if (fields.size() != header_.size()) {
      fail(ErrorCode::ParseError, name_ + ": row " + std::to_string(row_) + " has " +
                                      std::to_string(fields.size()) + " fields, expected " +
                                      std::to_string(header_.size()));
    }
    return true;
  }
  return false;
}

void Reader::error(std::string_view column, const std::string& message) const {
  fail(ErrorCode::ParseError, name_ + ": row " + std::to_string(row_) + ", column '" +
                                  std::string(column) + "': " + message);
}

double Reader::number(const std::vector<std::string>& fields, std::size_t col) const {
  const std::string_view text = trim(fields[col]);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    error(header_[col], "expected a finite number, got '" + std::string(text) + "'");
  }
  return value;
}

long long Reader::integer(const std::vector<std::string>& fields, std::size_t col) const {
  const std::string_view text = trim(fields[col]);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    error(header_[col], "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace netpoint::csv
