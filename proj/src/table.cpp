#include "collatz_spectra/table.hpp"

#include <sstream>
#include <stdexcept>

namespace collatz {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void join(std::ostringstream& os, const std::vector<std::string>& cells, Format f) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (f == Format::Markdown) {
      os << (i == 0 ? "| " : " | ") << cells[i];
    } else {
      if (i > 0) os << (f == Format::Csv ? ',' : '\t');
      os << (f == Format::Csv ? csv_field(cells[i]) : cells[i]);
    }
  }
  if (f == Format::Markdown) os << " |";
  os << '\n';
}

}  // namespace

std::optional<Format> parse_format(std::string_view s) {
  if (s == "csv") return Format::Csv;
  if (s == "tsv") return Format::Tsv;
  if (s == "markdown" || s == "md") return Format::Markdown;
  if (s == "dot") return Format::Dot;
  return std::nullopt;
}

std::string Table::render(Format format) const {
  if (format == Format::Dot) throw std::invalid_argument("dot output is only available for tree");
  std::ostringstream os;
  join(os, header, format);
  if (format == Format::Markdown) {
    std::vector<std::string> rule(header.size(), "---");
    join(os, rule, format);
  }
  for (const auto& r : rows) join(os, r, format);
  return os.str();
}

}  // namespace collatz
