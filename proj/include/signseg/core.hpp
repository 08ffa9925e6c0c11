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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace signseg {

enum class ErrorCode {
  parse,
  empty_input,
  domain,
  interval_too_short,
  version,
  format,
  io,
};

/// Base of every exception thrown by the library. The code maps one-to-one
/// onto the status values of the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t row, const std::string& what)
      : Error(ErrorCode::parse, what), row_(row) {}
  /// 1-based line number in the source file.
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& what)
      : Error(ErrorCode::empty_input, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::domain, what) {}
};

class IntervalTooShort : public Error {
 public:
  explicit IntervalTooShort(const std::string& what)
      : Error(ErrorCode::interval_too_short, what) {}
};

class VersionError : public Error {
 public:
  explicit VersionError(const std::string& what)
      : Error(ErrorCode::version, what) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what)
      : Error(ErrorCode::format, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

/// Observed panel: n time points (rows) by p coordinates (columns), stored
/// row-major. Time indices in the public API are 1-based.
class DataMatrix {
 public:
  DataMatrix(std::size_t n, std::size_t p, std::vector<double> values);

  std::size_t n() const noexcept { return n_; }
  std::size_t p() const noexcept { return p_; }

  /// Observation Y_i, 1 <= i <= n.
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + (i - 1) * p_, p_};
  }
  double at(std::size_t i, std::size_t j) const {
    return values_[(i - 1) * p_ + j];
  }
  std::span<const double> values() const noexcept { return values_; }

  /// Rows in reverse time order.
  DataMatrix reversed() const;

 private:
  std::size_t n_;
  std::size_t p_;
  std::vector<double> values_;
};

DataMatrix load_csv(const std::filesystem::path& path, bool has_header);
DataMatrix parse_csv(const std::string& text, bool has_header);
/// Writes shortest round-trip representations, so load_csv(write_csv(d))
/// reproduces d bit for bit.
void write_csv(const DataMatrix& d, const std::filesystem::path& path);

/// Returns a warning message when the panel looks transposed (n > p while the
/// caller expects n < p). The matrix is never modified.
std::optional<std::string> transpose_guard(const DataMatrix& d,
                                           bool expect_n_less_than_p);

/// Split k of the segment [l, m]; left block [l, k], right block [k+1, m].
struct SegmentTriple {
  int k;
  int l;
  int m;
};

/// Throws DomainError unless both blocks have at least two points and
/// 1 <= l, m <= n.
void validate_triple(const SegmentTriple& t, std::size_t n);

/// Deterministic random stream keyed by (seed, stream_id). Two instances with
/// the same key produce the same draws regardless of which thread owns them.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  double exponential() { return exponential_(engine_); }
  double chi_squared(double dof);
  double student_t(double dof);
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
};

/// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> xs) noexcept;

}  // namespace signseg
