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

#include "amore/table.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <unordered_set>

#include "amore/error.h"

namespace amore {
namespace {

std::string_view Trim(std::string_view text) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

std::optional<double> ParseFiniteDouble(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

bool NeedsQuoting(std::string_view text) {
  return text.find_first_of(",\"\n\r") != std::string_view::npos;
}

void WriteField(std::ostream& output, std::string_view text) {
  if (!NeedsQuoting(text)) {
    output << text;
    return;
  }
  output << '"';
  for (char c : text) {
    if (c == '"') output << '"';
    output << c;
  }
  output << '"';
}

}  // namespace

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

FeatureColumn FeatureColumn::Numeric(std::string name,
                                     std::vector<double> values) {
  for (double v : values) {
    if (std::isinf(v)) {
      throw Error(ErrorKind::kDomain,
                  "numeric column '" + name + "' contains an infinite value");
    }
  }
  FeatureColumn column;
  column.name_ = std::move(name);
  column.kind_ = ColumnKind::kNumeric;
  column.numeric_ = std::move(values);
  return column;
}

FeatureColumn FeatureColumn::Categorical(
    std::string name, const std::vector<std::optional<std::string>>& tokens) {
  std::set<std::string, std::less<>> alphabet;
  for (const auto& token : tokens) {
    if (token) alphabet.insert(*token);
  }
  FeatureColumn column;
  column.name_ = std::move(name);
  column.kind_ = ColumnKind::kCategorical;
  column.categories_.assign(alphabet.begin(), alphabet.end());
  column.codes_.reserve(tokens.size());
  for (const auto& token : tokens) {
    column.codes_.push_back(token ? *column.code_of(*token) : kMissingCode);
  }
  return column;
}

size_t FeatureColumn::size() const {
  return is_numeric() ? numeric_.size() : codes_.size();
}

bool FeatureColumn::is_missing(size_t row) const {
  return is_numeric() ? std::isnan(numeric_[row]) : codes_[row] == kMissingCode;
}

std::optional<int32_t> FeatureColumn::code_of(std::string_view token) const {
  const auto it = std::lower_bound(categories_.begin(), categories_.end(), token);
  if (it == categories_.end() || *it != token) return std::nullopt;
  return static_cast<int32_t>(it - categories_.begin());
}

std::string FeatureColumn::cell_text(size_t row) const {
  if (is_missing(row)) return "";
  return is_numeric() ? FormatDouble(numeric_[row]) : categories_[codes_[row]];
}

DataTable::DataTable(std::vector<FeatureColumn> columns)
    : columns_(std::move(columns)) {
  std::unordered_set<std::string> names;
  for (const auto& column : columns_) {
    if (!names.insert(column.name()).second) {
      throw Error(ErrorKind::kSchema,
                  "duplicate column name '" + column.name() + "'");
    }
  }
  if (!columns_.empty()) n_rows_ = columns_.front().size();
  for (const auto& column : columns_) {
    if (column.size() != n_rows_) {
      throw Error(ErrorKind::kShape, "column '" + column.name() + "' has " +
                                         std::to_string(column.size()) +
                                         " rows, expected " +
                                         std::to_string(n_rows_));
    }
  }
}

std::vector<std::string> DataTable::feature_names() const {
  std::vector<std::string> names;
  names.reserve(columns_.size());
  for (const auto& column : columns_) names.push_back(column.name());
  return names;
}

std::optional<size_t> DataTable::index_of(std::string_view name) const {
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name() == name) return i;
  }
  return std::nullopt;
}

size_t DataTable::require_index(std::string_view name) const {
  if (auto index = index_of(name)) return *index;
  throw Error(ErrorKind::kSchema, "unknown column '" + std::string(name) + "'");
}

DataTable DataTable::WithoutColumns(std::span<const std::string> names) const {
  std::vector<FeatureColumn> kept;
  for (const auto& column : columns_) {
    if (std::find(names.begin(), names.end(), column.name()) == names.end()) {
      kept.push_back(column);
    }
  }
  DataTable table(std::move(kept));
  // Preserve the row count even when every column is dropped.
  table.n_rows_ = n_rows_;
  return table;
}

std::vector<std::string> SplitCsvRecord(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
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
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

DataTable ParseCsv(std::istream& input, const CsvSchema& schema,
                   std::string_view missing_token) {
  std::string line;
  if (!std::getline(input, line)) {
    throw Error(ErrorKind::kParse, "missing header row");
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  std::vector<std::string> header = SplitCsvRecord(line);
  for (auto& name : header) name = std::string(Trim(name));

  std::unordered_set<std::string> seen;
  std::vector<ColumnKind> kinds;
  for (const auto& name : header) {
    if (!seen.insert(name).second) {
      throw Error(ErrorKind::kSchema, "duplicate header '" + name + "'");
    }
    const auto it = schema.kinds.find(name);
    if (it != schema.kinds.end()) {
      kinds.push_back(it->second);
    } else if (schema.default_kind) {
      kinds.push_back(*schema.default_kind);
    } else {
      throw Error(ErrorKind::kSchema,
                  "schema does not declare column '" + name + "'");
    }
  }

  const size_t width = header.size();
  std::vector<std::vector<double>> numeric(width);
  std::vector<std::vector<std::optional<std::string>>> tokens(width);
  size_t row = 0;
  while (std::getline(input, line)) {
    if (Trim(line).empty()) continue;
    ++row;
    std::vector<std::string> fields = SplitCsvRecord(line);
    if (fields.size() != width) {
      throw ParseError(row, "",
                       "row " + std::to_string(row) + " has " +
                           std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(width));
    }
    for (size_t c = 0; c < width; ++c) {
      const bool missing = fields[c] == missing_token ||
                           Trim(fields[c]) == Trim(missing_token);
      if (kinds[c] == ColumnKind::kNumeric) {
        if (missing) {
          numeric[c].push_back(std::numeric_limits<double>::quiet_NaN());
          continue;
        }
        const auto value = ParseFiniteDouble(fields[c]);
        if (!value) {
          throw ParseError(row, header[c],
                           "row " + std::to_string(row) + ", column '" +
                               header[c] + "': cannot parse '" + fields[c] +
                               "' as a finite number");
        }
        numeric[c].push_back(*value);
      } else if (missing) {
        tokens[c].push_back(std::nullopt);
      } else {
        tokens[c].push_back(std::string(Trim(fields[c])));
      }
    }
  }

  std::vector<FeatureColumn> columns;
  columns.reserve(width);
  for (size_t c = 0; c < width; ++c) {
    if (kinds[c] == ColumnKind::kNumeric) {
      columns.push_back(FeatureColumn::Numeric(header[c], std::move(numeric[c])));
    } else {
      columns.push_back(FeatureColumn::Categorical(header[c], tokens[c]));
    }
  }
  return DataTable(std::move(columns));
}

DataTable LoadCsv(const std::filesystem::path& path, const CsvSchema& schema,
                  std::string_view missing_token) {
  std::ifstream input(path);
  if (!input) {
    throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  }
  return ParseCsv(input, schema, missing_token);
}

void WriteCsv(std::ostream& output, const DataTable& table,
              std::string_view missing_token) {
  for (size_t c = 0; c < table.n_columns(); ++c) {
    if (c > 0) output << ',';
    WriteField(output, table.column(c).name());
  }
  output << '\n';
  for (size_t row = 0; row < table.n_rows(); ++row) {
    for (size_t c = 0; c < table.n_columns(); ++c) {
      if (c > 0) output << ',';
      const auto& column = table.column(c);
      WriteField(output, column.is_missing(row) ? std::string(missing_token)
                                                : column.cell_text(row));
    }
    output << '\n';
  }
}

}  // namespace amore
