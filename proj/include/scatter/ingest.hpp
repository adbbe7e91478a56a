#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scatter/csv.hpp"
#include "scatter/point.hpp"

namespace scatter {

/// Numeric column cells; missing cells are NaN.
using NumericValues = std::vector<double>;
/// Text column cells; missing cells are empty strings.
using TextValues = std::vector<std::string>;

struct Column {
  std::string name;
  std::variant<NumericValues, TextValues> values;

  bool is_numeric() const noexcept { return std::holds_alternative<NumericValues>(values); }
  std::size_t size() const noexcept;
  const NumericValues& numeric() const { return std::get<NumericValues>(values); }
  const TextValues& text() const { return std::get<TextValues>(values); }
};

/// Read-only tabular data. Construction enforces equal column lengths and
/// unique column names.
class Table {
 public:
  Table(std::string name, std::vector<Column> columns);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Column>& columns() const noexcept { return columns_; }
  std::size_t row_count() const noexcept { return row_count_; }

  const Column* find(std::string_view column_name) const noexcept;
  /// Throws UnknownAttribute when absent.
  const Column& column(std::string_view column_name) const;

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::size_t row_count_ = 0;
};

/// Parses CSV with a mandatory header row. A column is numeric when every
/// non-missing cell parses as a number, text otherwise.
Table load_table(std::string_view source, const CsvFormat& format = {}, std::string name = "table");

enum class AttributeKind { Measure, Category };

struct MeasureStats {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  std::size_t missing = 0;  // missing or non-finite cells
};

struct CategoryInfo {
  std::string name;
  bool numeric = false;
  /// Distinct non-missing values in canonical text form, sorted numerically
  /// for numeric columns and bytewise for text columns.
  std::vector<std::string> values;
};

struct AttributeCatalog {
  std::vector<MeasureStats> measures;  // table column order
  std::vector<CategoryInfo> categories;

  bool is_measure(std::string_view name) const noexcept;
  const CategoryInfo* category(std::string_view name) const noexcept;
  std::vector<std::string> measure_names() const;
};

struct ClassifyOptions {
  /// Numeric columns with at most this many distinct finite values are categorical.
  std::size_t categorical_threshold = 20;
  std::map<std::string, AttributeKind, std::less<>> overrides;
};

AttributeCatalog classify_attributes(const Table& table, const ClassifyOptions& options = {});

/// Canonical text for a numeric category value (shortest round-trip form).
std::string canonical_number(double value);

struct CategoryFilter {
  std::string attribute;
  std::string value;

  friend bool operator==(const CategoryFilter&, const CategoryFilter&) = default;
};

/// One candidate scatterplot. The id is derived from the fields and is
/// injective over (x_attr, y_attr, filter).
struct ScatterplotSpec {
  std::string x_attr;
  std::string y_attr;
  std::optional<CategoryFilter> filter;
  std::string id;

  friend bool operator==(const ScatterplotSpec&, const ScatterplotSpec&) = default;
};

/// Builds a spec and its id. Throws InvalidArgument when x_attr == y_attr.
ScatterplotSpec make_spec(std::string x_attr, std::string y_attr,
                          std::optional<CategoryFilter> filter = std::nullopt);

/// All unordered measure pairs. Within a pair the column that comes first in
/// the table is the x axis; the list is sorted by (x_attr, y_attr).
std::vector<ScatterplotSpec> enumerate_pairwise(const AttributeCatalog& catalog);

/// Same as enumerate_pairwise restricted to the named measures.
std::vector<ScatterplotSpec> enumerate_pairwise(const AttributeCatalog& catalog,
                                                const std::vector<std::string>& measures);

inline constexpr std::size_t kDefaultMaxCategoryValues = 100;

/// One spec per distinct value of cat_attr, in catalog value order.
std::vector<ScatterplotSpec> enumerate_by_category(std::string_view x_attr, std::string_view y_attr,
                                                   std::string_view cat_attr,
                                                   const AttributeCatalog& catalog,
                                                   std::size_t max_values = kDefaultMaxCategoryValues);

struct RawPointSet {
  ScatterplotSpec spec;
  std::vector<Point> points;  // original data units, row order
  std::size_t dropped_rows = 0;

  bool empty() const noexcept { return points.empty(); }
};

/// Rows whose coordinates are both finite and whose filter (if any) matches.
/// A result with no points is the empty-plot signal, not an error.
RawPointSet materialize(const Table& table, const ScatterplotSpec& spec);

}  // namespace scatter
