// Copyright 2026 The signseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "signseg/core.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace signseg {

DataMatrix::DataMatrix(std::size_t n, std::size_t p, std::vector<double> values)
    : n_(n), p_(p), values_(std::move(values)) {
  if (n_ == 0 || p_ == 0) throw EmptyInput("data matrix must have n >= 1 and p >= 1");
  if (values_.size() != n_ * p_)
    throw DomainError("data matrix value count does not match n * p");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("non-finite value at row " + std::to_string(i / p_ + 1) +
                        ", column " + std::to_string(i % p_ + 1));
    }
  }
}

DataMatrix DataMatrix::reversed() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < n_; ++i) {
    std::copy_n(values_.data() + (n_ - 1 - i) * p_, p_, out.data() + i * p_);
  }
  return DataMatrix(n_, p_, std::move(out));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() ||
      !std::isfinite(v)) {
    throw ParseError(line, "non-numeric cell '" + std::string(cell) + "' at row " +
                               std::to_string(line) + ", column " +
                               std::to_string(column));
  }
  return v;
}

}  // namespace

DataMatrix parse_csv(const std::string& text, bool has_header) {
  std::vector<std::string_view> lines;
  std::string_view rest(text);
  while (!rest.empty()) {
    auto pos = rest.find('\n');
    lines.push_back(rest.substr(0, pos));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (!lines.empty() && lines.front().starts_with("\xEF\xBB\xBF"))
    lines.front().remove_prefix(3);

  std::size_t first = has_header ? 1 : 0;
  if (lines.size() <= first) throw EmptyInput("no data rows in CSV input");

  std::vector<double> values;
  std::size_t p = 0;
  for (std::size_t li = first; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    std::string_view line = trim(lines[li]);
    std::size_t cols = 0;
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      auto cell = line.substr(start, comma == std::string_view::npos
                                         ? std::string_view::npos
                                         : comma - start);
      values.push_back(parse_cell(cell, line_no, cols + 1));
      ++cols;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (li == first) {
      p = cols;
    } else if (cols != p) {
      throw ParseError(line_no, "ragged row " + std::to_string(line_no) + ": expected " +
                                    std::to_string(p) + " columns, found " +
                                    std::to_string(cols));
    }
  }
  const std::size_t n = lines.size() - first;
  return DataMatrix(n, p, std::move(values));
}

DataMatrix load_csv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), has_header);
}

void write_csv(const DataMatrix& d, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  char buf[64];
  for (std::size_t i = 1; i <= d.n(); ++i) {
    auto row = d.row(i);
    for (std::size_t j = 0; j < d.p(); ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, row[j]);
      (void)ec;
      if (j) out.put(',');
      out.write(buf, ptr - buf);
    }
    out.put('\n');
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::optional<std::string> transpose_guard(const DataMatrix& d,
                                           bool expect_n_less_than_p) {
  if (expect_n_less_than_p && d.n() > d.p()) {
    return "data has n=" + std::to_string(d.n()) + " rows and p=" +
           std::to_string(d.p()) +
           " columns; rows are time points, check the file is not transposed";
  }
  return std::nullopt;
}

void validate_triple(const SegmentTriple& t, std::size_t n) {
  if (t.l < 1 || t.m > static_cast<long long>(n) || t.k - t.l + 1 < 2 ||
      t.m - t.k < 2) {
    throw DomainError("invalid triple (k=" + std::to_string(t.k) + "; l=" +
                      std::to_string(t.l) + ", m=" + std::to_string(t.m) +
                      ") for n=" + std::to_string(n));
  }
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::mt19937_64 keyed_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::uint64_t h1 = mix_seed(seed, stream_id);
  std::uint64_t h2 = mix_seed(stream_id ^ 0xD1B54A32D192ED03ULL, seed);
  std::seed_seq seq{static_cast<std::uint32_t>(h1), static_cast<std::uint32_t>(h1 >> 32),
                    static_cast<std::uint32_t>(h2), static_cast<std::uint32_t>(h2 >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(keyed_engine(seed, stream_id)) {}

double RandomStream::chi_squared(double dof) {
  std::gamma_distribution<double> g(dof / 2.0, 2.0);
  return g(engine_);
}

double RandomStream::student_t(double dof) {
  const double z = normal();
  return z / std::sqrt(chi_squared(dof) / dof);
}

double pairwise_sum(std::span<const double> xs) noexcept {
  if (xs.size() <= 16) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace signseg
