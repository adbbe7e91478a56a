#include "scatter/csv.hpp"

#include "scatter/error.hpp"

namespace scatter {

std::vector<CsvRecord> split_csv(std::string_view text, char delimiter) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<CsvRecord> records;
  CsvRecord record;
  std::string field;
  std::size_t line = 1;
  std::size_t quote_opened_at = 0;
  bool in_quotes = false;
  bool after_quote = false;  // field was quoted and the closing quote was seen
  bool has_content = false;

  auto end_field = [&] {
    record.fields.push_back(std::move(field));
    field.clear();
    after_quote = false;
  };
  auto end_record = [&] {
    if (has_content) {
      end_field();
      records.push_back(std::move(record));
    }
    record = CsvRecord{};
    has_content = false;
  };
  auto touch = [&] {
    if (!has_content) record.line = line;
    has_content = true;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == delimiter) {
      touch();
      end_field();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_record();
      ++line;
    } else if (c == '"') {
      if (after_quote || !field.empty()) {
        throw ParseError(line, "unexpected quote inside unquoted field");
      }
      touch();
      in_quotes = true;
      quote_opened_at = line;
    } else {
      if (after_quote) throw ParseError(line, "characters after closing quote");
      touch();
      field.push_back(c);
    }
  }
  if (in_quotes) throw ParseError(quote_opened_at, "unbalanced quote");
  end_record();
  return records;
}

}  // namespace scatter
