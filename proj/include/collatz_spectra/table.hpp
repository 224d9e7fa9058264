#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace collatz {

enum class Format { Csv, Tsv, Markdown, Dot };

std::optional<Format> parse_format(std::string_view s);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  /// Csv, Tsv or Markdown.
  std::string render(Format format) const;
};

}  // namespace collatz
