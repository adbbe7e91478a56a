#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace scatter {

/// Selects the dialect of a CSV byte stream.
struct CsvFormat {
  char delimiter = ',';
  char decimal_point = '.';
  /// Cells equal to one of these (after trimming) are treated as missing.
  std::vector<std::string> missing_tokens = {"", "?", "NA", "N/A", "null", "NULL"};
};

struct CsvRecord {
  std::size_t line = 0;  // 1-based physical line the record starts on
  std::vector<std::string> fields;
};

/// RFC-4180 record splitter. Quoted fields may contain delimiters, doubled
/// quotes and line breaks. Completely blank lines are skipped; a leading
/// UTF-8 byte-order mark is dropped. Throws ParseError carrying the 1-based
/// line number for unbalanced quotes and stray characters after a
/// closing quote. Record length is not checked here.
std::vector<CsvRecord> split_csv(std::string_view text, char delimiter);

}  // namespace scatter
