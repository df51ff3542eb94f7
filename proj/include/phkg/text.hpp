#pragma once

// Small string utilities shared by the hand-written parsers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace phkg::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string utf8_encode(char32_t cp);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Character cursor over an input buffer that tracks 1-based line/column.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool at_end() const { return pos_ >= text_.size(); }
  /// Character `offset` positions ahead, or '\0' past the end.
  char peek(std::size_t offset = 0) const {
    return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
  }
  char get();
  void advance(std::size_t n = 1);

  /// Case-insensitive keyword match that also requires a word boundary.
  bool starts_with_keyword(std::string_view keyword) const;

  void skip_ws_and_comments(char comment_char);

  std::size_t position() const { return pos_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace phkg::text
