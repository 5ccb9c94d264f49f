/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The rsri Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "rsri/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/core.h>
#include <fmt/os.h>

namespace rsri {

namespace {

using Kind = MatrixMarketError::Kind;

struct Header {
  bool coordinate = true;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : path_(path), in_(path) {
    if (!in_) throw MatrixMarketError(Kind::Io, fmt::format("cannot open '{}'", path.string()));
  }

  Header header() {
    std::string line;
    if (!std::getline(in_, line)) fail(Kind::MalformedHeader, "empty file");
    ++line_no_;
    std::istringstream ss(line);
    std::string banner, object, format, field, symmetry;
    ss >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || symmetry.empty()) {
      fail(Kind::MalformedHeader, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
    }
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix") fail(Kind::Unsupported, fmt::format("object '{}' is not supported", object));
    Header h;
    if (format == "coordinate") {
      h.coordinate = true;
    } else if (format == "array") {
      h.coordinate = false;
    } else {
      fail(Kind::MalformedHeader, fmt::format("unknown format '{}'", format));
    }
    if (field == "pattern") fail(Kind::ValuesRequired, "values required: pattern matrices are not supported");
    if (field != "real" && field != "double" && field != "integer") {
      fail(Kind::Unsupported, fmt::format("field '{}' is not supported", field));
    }
    if (symmetry != "general") fail(Kind::Unsupported, fmt::format("symmetry '{}' is not supported", symmetry));
    return h;
  }

  // Next non-comment, non-blank line; false at end of file.
  bool next_data_line(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line[0] == '%') continue;
      if (blank(line)) continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(Kind kind, const std::string& msg) const {
    throw MatrixMarketError(kind, fmt::format("{}:{}: {}", path_.string(), line_no_, msg));
  }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

struct Coordinate {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

struct RawMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Coordinate> entries;  // 0-based
};

std::size_t parse_index(Reader& reader, long long raw, std::size_t limit, const char* what) {
  if (raw < 1 || static_cast<unsigned long long>(raw) > limit) {
    reader.fail(Kind::IndexOutOfRange, fmt::format("{} index {} outside 1..{}", what, raw, limit));
  }
  return static_cast<std::size_t>(raw - 1);
}

RawMatrix read_raw(const std::filesystem::path& path, bool require_square) {
  Reader reader(path);
  const Header h = reader.header();
  std::string line;
  if (!reader.next_data_line(line)) reader.fail(Kind::MalformedHeader, "missing size line");

  RawMatrix raw;
  long long m = 0, n = 0, count = 0;
  {
    std::istringstream ss(line);
    if (h.coordinate) {
      if (!(ss >> m >> n >> count) || m < 1 || n < 1 || count < 0) {
        reader.fail(Kind::MalformedHeader, "size line must be 'rows cols entries'");
      }
    } else {
      if (!(ss >> m >> n) || m < 1 || n < 1) reader.fail(Kind::MalformedHeader, "size line must be 'rows cols'");
      count = m * n;
    }
  }
  raw.rows = static_cast<std::size_t>(m);
  raw.cols = static_cast<std::size_t>(n);
  if (require_square && raw.rows != raw.cols) {
    reader.fail(Kind::NonSquare, fmt::format("matrix is {} x {}, expected square", m, n));
  }

  raw.entries.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    if (!reader.next_data_line(line)) {
      reader.fail(Kind::MalformedEntry, fmt::format("expected {} entries, found {}", count, k));
    }
    std::istringstream ss(line);
    Coordinate c;
    if (h.coordinate) {
      long long i = 0, j = 0;
      if (!(ss >> i >> j)) reader.fail(Kind::MalformedEntry, "expected 'row col value'");
      if (!(ss >> c.value)) reader.fail(Kind::ValuesRequired, "values required: entry has no value");
      c.row = parse_index(reader, i, raw.rows, "row");
      c.col = parse_index(reader, j, raw.cols, "column");
    } else {
      if (!(ss >> c.value)) reader.fail(Kind::MalformedEntry, "expected a value");
      c.row = static_cast<std::size_t>(k) % raw.rows;
      c.col = static_cast<std::size_t>(k) / raw.rows;
    }
    std::string extra;
    if (ss >> extra) reader.fail(Kind::MalformedEntry, fmt::format("unexpected token '{}'", extra));
    raw.entries.push_back(c);
  }
  if (reader.next_data_line(line)) reader.fail(Kind::MalformedEntry, "data after the declared entries");
  return raw;
}

}  // namespace

ColumnMatrix load_matrix_market(const std::filesystem::path& path) {
  RawMatrix raw = read_raw(path, true);
  std::vector<std::vector<Entry>> cols(raw.cols);
  for (const Coordinate& c : raw.entries) cols[c.col].push_back({c.row, c.value});
  std::vector<SparseVector> columns;
  columns.reserve(raw.cols);
  for (auto& c : cols) columns.push_back(SparseVector::from_unsorted(raw.rows, std::move(c)));
  return ColumnMatrix::from_columns(columns);
}

SparseVector load_matrix_market_vector(const std::filesystem::path& path) {
  RawMatrix raw = read_raw(path, false);
  if (raw.cols != 1) {
    throw MatrixMarketError(Kind::Unsupported,
                            fmt::format("{}: expected an N x 1 vector, got {} columns", path.string(), raw.cols));
  }
  std::vector<Entry> entries;
  entries.reserve(raw.entries.size());
  for (const Coordinate& c : raw.entries) entries.push_back({c.row, c.value});
  return SparseVector::from_unsorted(raw.rows, std::move(entries));
}

void save_matrix_market(const std::filesystem::path& path, const ColumnMatrix& a) {
  std::vector<SparseVector> columns;
  std::size_t total = 0;
  columns.reserve(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    columns.push_back(a.column(j));
    total += columns.back().nnz();
  }
  auto out = fmt::output_file(path.string());
  out.print("%%MatrixMarket matrix coordinate real general\n");
  out.print("{} {} {}\n", a.dim(), a.dim(), total);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (const Entry& e : columns[j]) out.print("{} {} {:.17g}\n", e.index + 1, j + 1, e.value);
  }
}

void save_matrix_market_vector(const std::filesystem::path& path, const SparseVector& v) {
  auto out = fmt::output_file(path.string());
  out.print("%%MatrixMarket matrix coordinate real general\n");
  out.print("{} 1 {}\n", v.dim(), v.nnz());
  for (const Entry& e : v) out.print("{} 1 {:.17g}\n", e.index + 1, e.value);
}

}  // namespace rsri
