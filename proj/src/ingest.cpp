#include "scatter/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_set>

#include "scatter/error.hpp"

namespace scatter {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool is_missing(std::string_view cell, const CsvFormat& format) {
  const auto t = trim(cell);
  return std::find(format.missing_tokens.begin(), format.missing_tokens.end(), t) !=
         format.missing_tokens.end();
}

std::optional<double> parse_number(std::string_view cell, char decimal_point) {
  auto t = trim(cell);
  std::string buffer;
  if (decimal_point != '.') {
    buffer.assign(t);
    if (buffer.find('.') != std::string::npos) return std::nullopt;
    std::replace(buffer.begin(), buffer.end(), decimal_point, '.');
    t = buffer;
  }
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double value = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || t.empty()) return std::nullopt;
  return value;
}

// Percent-escapes separator and control bytes in one id component.
void append_escaped(std::string& out, std::string_view component) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  for (const char c : component) {
    const auto u = static_cast<unsigned char>(c);
    if (c == '%' || c == '|' || c == '=' || c == '/' || u < 0x20 || u == 0x7F) {
      out.push_back('%');
      out.push_back(kHex[u >> 4]);
      out.push_back(kHex[u & 0xF]);
    } else {
      out.push_back(c);
    }
  }
}

}  // namespace

std::size_t Column::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, values);
}

Table::Table(std::string name, std::vector<Column> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& c : columns_) {
    if (!seen.insert(c.name).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate column name '" + c.name + "'");
    }
  }
  if (!columns_.empty()) row_count_ = columns_.front().size();
  for (const auto& c : columns_) {
    if (c.size() != row_count_) {
      throw Error(ErrorCode::InvalidArgument, "column '" + c.name + "' has inconsistent length");
    }
  }
}

const Column* Table::find(std::string_view column_name) const noexcept {
  const auto it = std::find_if(columns_.begin(), columns_.end(),
                               [&](const Column& c) { return c.name == column_name; });
  return it == columns_.end() ? nullptr : &*it;
}

const Column& Table::column(std::string_view column_name) const {
  if (const auto* c = find(column_name)) return *c;
  throw Error(ErrorCode::UnknownAttribute, "unknown attribute '" + std::string(column_name) + "'");
}

Table load_table(std::string_view source, const CsvFormat& format, std::string name) {
  auto records = split_csv(source, format.delimiter);
  if (records.empty()) throw Error(ErrorCode::EmptyTable, "input contains no header row");

  const auto& header = records.front();
  const std::size_t width = header.fields.size();
  std::set<std::string, std::less<>> names;
  for (const auto& field : header.fields) {
    const auto column_name = std::string(trim(field));
    if (column_name.empty()) throw ParseError(header.line, "empty column name");
    if (!names.insert(column_name).second) {
      throw ParseError(header.line, "duplicate column name '" + column_name + "'");
    }
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].fields.size() != width) {
      throw ParseError(records[r].line, "expected " + std::to_string(width) + " fields, found " +
                                            std::to_string(records[r].fields.size()));
    }
  }

  const std::size_t rows = records.size() - 1;
  std::vector<Column> columns;
  columns.reserve(width);
  for (std::size_t c = 0; c < width; ++c) {
    NumericValues numbers;
    numbers.reserve(rows);
    bool numeric = true;
    for (std::size_t r = 1; r <= rows && numeric; ++r) {
      const auto& cell = records[r].fields[c];
      if (is_missing(cell, format)) {
        numbers.push_back(std::numeric_limits<double>::quiet_NaN());
      } else if (const auto v = parse_number(cell, format.decimal_point)) {
        numbers.push_back(*v);
      } else {
        numeric = false;
      }
    }
    Column column{std::string(trim(header.fields[c])), {}};
    if (numeric) {
      column.values = std::move(numbers);
    } else {
      TextValues text;
      text.reserve(rows);
      for (std::size_t r = 1; r <= rows; ++r) {
        const auto& cell = records[r].fields[c];
        text.push_back(is_missing(cell, format) ? std::string() : cell);
      }
      column.values = std::move(text);
    }
    columns.push_back(std::move(column));
  }
  return Table(std::move(name), std::move(columns));
}

std::string canonical_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

bool AttributeCatalog::is_measure(std::string_view name) const noexcept {
  return std::any_of(measures.begin(), measures.end(), [&](const auto& m) { return m.name == name; });
}

const CategoryInfo* AttributeCatalog::category(std::string_view name) const noexcept {
  const auto it = std::find_if(categories.begin(), categories.end(),
                               [&](const auto& c) { return c.name == name; });
  return it == categories.end() ? nullptr : &*it;
}

std::vector<std::string> AttributeCatalog::measure_names() const {
  std::vector<std::string> names;
  names.reserve(measures.size());
  for (const auto& m : measures) names.push_back(m.name);
  return names;
}

AttributeCatalog classify_attributes(const Table& table, const ClassifyOptions& options) {
  if (table.row_count() == 0 || table.columns().empty()) {
    throw Error(ErrorCode::EmptyTable, "table '" + table.name() + "' has no rows");
  }
  for (const auto& [name, kind] : options.overrides) {
    if (table.find(name) == nullptr) {
      throw Error(ErrorCode::UnknownAttribute, "override names unknown attribute '" + name + "'");
    }
  }

  AttributeCatalog catalog;
  for (const auto& column : table.columns()) {
    const auto override_it = options.overrides.find(column.name);
    if (!column.is_numeric()) {
      if (override_it != options.overrides.end() && override_it->second == AttributeKind::Measure) {
        throw Error(ErrorCode::InvalidArgument,
                    "text column '" + column.name + "' cannot be used as a measure");
      }
      std::set<std::string> distinct;
      for (const auto& v : column.text()) {
        if (!v.empty()) distinct.insert(v);
      }
      catalog.categories.push_back({column.name, false, {distinct.begin(), distinct.end()}});
      continue;
    }

    std::set<double> distinct;
    MeasureStats stats{column.name, std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity(), 0};
    for (const double v : column.numeric()) {
      if (!std::isfinite(v)) {
        ++stats.missing;
        continue;
      }
      distinct.insert(v == 0.0 ? 0.0 : v);  // fold -0 into 0
      stats.min = std::min(stats.min, v);
      stats.max = std::max(stats.max, v);
    }
    if (distinct.empty()) stats.min = stats.max = 0.0;

    AttributeKind kind = distinct.size() <= options.categorical_threshold ? AttributeKind::Category
                                                                          : AttributeKind::Measure;
    if (override_it != options.overrides.end()) kind = override_it->second;

    if (kind == AttributeKind::Measure) {
      catalog.measures.push_back(stats);
    } else {
      CategoryInfo info{column.name, true, {}};
      for (const double v : distinct) info.values.push_back(canonical_number(v));
      catalog.categories.push_back(std::move(info));
    }
  }
  return catalog;
}

ScatterplotSpec make_spec(std::string x_attr, std::string y_attr, std::optional<CategoryFilter> filter) {
  if (x_attr == y_attr) {
    throw Error(ErrorCode::InvalidArgument, "x and y attributes must differ ('" + x_attr + "')");
  }
  std::string id;
  append_escaped(id, x_attr);
  id.push_back('|');
  append_escaped(id, y_attr);
  if (filter) {
    id.push_back('|');
    append_escaped(id, filter->attribute);
    id.push_back('=');
    append_escaped(id, filter->value);
  }
  return {std::move(x_attr), std::move(y_attr), std::move(filter), std::move(id)};
}

namespace {

void require_known(const AttributeCatalog& catalog, std::string_view name) {
  if (!catalog.is_measure(name) && catalog.category(name) == nullptr) {
    throw Error(ErrorCode::UnknownAttribute, "no attribute named '" + std::string(name) + "'");
  }
}

}  // namespace

std::vector<ScatterplotSpec> enumerate_pairwise(const AttributeCatalog& catalog) {
  return enumerate_pairwise(catalog, catalog.measure_names());
}

std::vector<ScatterplotSpec> enumerate_pairwise(const AttributeCatalog& catalog,
                                                const std::vector<std::string>& measures) {
  // Catalog (table column) order decides the axes.
  std::vector<std::string> selected;
  for (const auto& m : catalog.measures) {
    if (std::find(measures.begin(), measures.end(), m.name) != measures.end()) {
      selected.push_back(m.name);
    }
  }
  for (const auto& name : measures) {
    require_known(catalog, name);
    if (!catalog.is_measure(name)) {
      throw Error(ErrorCode::InvalidArgument, "'" + name + "' is not a measure");
    }
  }

  std::vector<ScatterplotSpec> specs;
  if (selected.size() >= 2) specs.reserve(selected.size() * (selected.size() - 1) / 2);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    for (std::size_t j = i + 1; j < selected.size(); ++j) {
      specs.push_back(make_spec(selected[i], selected[j]));
    }
  }
  std::sort(specs.begin(), specs.end(), [](const auto& a, const auto& b) {
    return std::tie(a.x_attr, a.y_attr) < std::tie(b.x_attr, b.y_attr);
  });
  return specs;
}

std::vector<ScatterplotSpec> enumerate_by_category(std::string_view x_attr, std::string_view y_attr,
                                                   std::string_view cat_attr,
                                                   const AttributeCatalog& catalog,
                                                   std::size_t max_values) {
  for (const auto attr : {x_attr, y_attr, cat_attr}) require_known(catalog, attr);
  for (const auto attr : {x_attr, y_attr}) {
    if (!catalog.is_measure(attr)) {
      throw Error(ErrorCode::InvalidArgument, "'" + std::string(attr) + "' is not a measure");
    }
  }
  const auto* category = catalog.category(cat_attr);
  if (category == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "'" + std::string(cat_attr) + "' is not a category");
  }
  if (category->values.size() > max_values) {
    throw Error(ErrorCode::CardinalityExceeded,
                "category '" + category->name + "' has " + std::to_string(category->values.size()) +
                    " distinct values (limit " + std::to_string(max_values) + ")");
  }
  std::vector<ScatterplotSpec> specs;
  specs.reserve(category->values.size());
  for (const auto& value : category->values) {
    specs.push_back(make_spec(std::string(x_attr), std::string(y_attr),
                              CategoryFilter{category->name, value}));
  }
  return specs;
}

RawPointSet materialize(const Table& table, const ScatterplotSpec& spec) {
  const auto& xs = table.column(spec.x_attr);
  const auto& ys = table.column(spec.y_attr);
  if (!xs.is_numeric() || !ys.is_numeric()) {
    throw Error(ErrorCode::InvalidArgument, "plot '" + spec.id + "' uses a non-numeric attribute");
  }
  const Column* filter_column = spec.filter ? &table.column(spec.filter->attribute) : nullptr;

  auto matches = [&](std::size_t row) {
    if (filter_column == nullptr) return true;
    if (filter_column->is_numeric()) {
      const double v = filter_column->numeric()[row];
      return std::isfinite(v) && canonical_number(v == 0.0 ? 0.0 : v) == spec.filter->value;
    }
    const auto& cell = filter_column->text()[row];
    return !cell.empty() && cell == spec.filter->value;
  };

  RawPointSet raw{spec, {}, 0};
  const auto& xv = xs.numeric();
  const auto& yv = ys.numeric();
  for (std::size_t row = 0; row < table.row_count(); ++row) {
    if (!matches(row)) continue;
    if (std::isfinite(xv[row]) && std::isfinite(yv[row])) {
      raw.points.push_back({xv[row], yv[row]});
    } else {
      ++raw.dropped_rows;
    }
  }
  return raw;
}

}  // namespace scatter
