#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace sarf::detail {

struct TsvRow {
  std::size_t line;
  std::vector<std::string_view> fields;
};

/// Splits text into tab-separated rows. Blank lines and lines starting with
/// '#' are skipped; a trailing '\r' is stripped.
inline std::vector<TsvRow> split_tsv(std::string_view text) {
  std::vector<TsvRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    if (line.front() == '#') continue;
    TsvRow row{line_no, {}};
    std::size_t start = 0;
    for (;;) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string_view::npos) {
        row.fields.push_back(line.substr(start));
        break;
      }
      row.fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sarf::detail
