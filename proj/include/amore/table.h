/*
 * Copyright 2026 The amore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AMORE_TABLE_H_
#define AMORE_TABLE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amore {

enum class ColumnKind { kNumeric, kCategorical };

// One byte per row; non-zero means the row is selected.
using RowMask = std::vector<uint8_t>;

inline constexpr int32_t kMissingCode = -1;

// A named column holding either finite doubles or category codes. Missing
// numeric cells are stored as NaN, missing categorical cells as kMissingCode.
class FeatureColumn {
 public:
  // Throws DomainError when a value is infinite.
  static FeatureColumn Numeric(std::string name, std::vector<double> values);
  // Categories are sorted lexicographically so codes are independent of row
  // order.
  static FeatureColumn Categorical(
      std::string name, const std::vector<std::optional<std::string>>& tokens);

  const std::string& name() const { return name_; }
  ColumnKind kind() const { return kind_; }
  bool is_numeric() const { return kind_ == ColumnKind::kNumeric; }
  size_t size() const;

  bool is_missing(size_t row) const;

  // Numeric columns only.
  std::span<const double> numeric_values() const { return numeric_; }
  double numeric(size_t row) const { return numeric_[row]; }

  // Categorical columns only.
  std::span<const int32_t> codes() const { return codes_; }
  int32_t code(size_t row) const { return codes_[row]; }
  const std::vector<std::string>& categories() const { return categories_; }
  std::optional<int32_t> code_of(std::string_view token) const;

  // Cell rendered as text; empty for missing.
  std::string cell_text(size_t row) const;

 private:
  FeatureColumn() = default;

  std::string name_;
  ColumnKind kind_ = ColumnKind::kNumeric;
  std::vector<double> numeric_;
  std::vector<int32_t> codes_;
  std::vector<std::string> categories_;
};

// Immutable column-typed dataset.
class DataTable {
 public:
  DataTable() = default;
  // Throws ShapeError on ragged columns and SchemaError on duplicate names.
  explicit DataTable(std::vector<FeatureColumn> columns);

  size_t n_rows() const { return n_rows_; }
  size_t n_columns() const { return columns_.size(); }
  const FeatureColumn& column(size_t index) const { return columns_[index]; }
  std::span<const FeatureColumn> columns() const { return columns_; }
  std::vector<std::string> feature_names() const;

  std::optional<size_t> index_of(std::string_view name) const;
  // Like index_of but throws SchemaError for unknown names.
  size_t require_index(std::string_view name) const;

  // New table without the named columns. Unknown names are ignored.
  DataTable WithoutColumns(std::span<const std::string> names) const;

 private:
  std::vector<FeatureColumn> columns_;
  size_t n_rows_ = 0;
};

// Per-column kinds. Columns absent from `kinds` take `default_kind`; when that
// is unset every header name must be declared.
struct CsvSchema {
  std::map<std::string, ColumnKind, std::less<>> kinds;
  std::optional<ColumnKind> default_kind;
};

DataTable ParseCsv(std::istream& input, const CsvSchema& schema,
                   std::string_view missing_token = "");
DataTable LoadCsv(const std::filesystem::path& path, const CsvSchema& schema,
                  std::string_view missing_token = "");

// Writes a header line plus one line per row. Numbers use the shortest
// round-trip representation.
void WriteCsv(std::ostream& output, const DataTable& table,
              std::string_view missing_token = "");

// Splits one CSV record. Supports double-quoted fields with "" escapes.
std::vector<std::string> SplitCsvRecord(std::string_view line);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

}  // namespace amore

#endif  // AMORE_TABLE_H_
