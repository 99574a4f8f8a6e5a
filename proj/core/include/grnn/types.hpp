#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace grnn {

using Vector = std::vector<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (vector lengths, row widths, model arity).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Prediction or inspection on a model that holds no patterns.
class EmptyModelError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Backpropagation training produced a non-finite loss or parameter.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t epoch) : Error(what), epoch_(epoch) {}
  std::size_t epoch() const noexcept { return epoch_; }

 private:
  std::size_t epoch_;
};

/// A simulated state left the finite / bounded region.
class SimulationError : public Error {
 public:
  SimulationError(const std::string& what, std::size_t step) : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Dense row-major matrix. Rows are exposed as spans so callers never
/// index the flat buffer directly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  /// Appends a row; the first row fixes the column count of an empty 0x0 matrix.
  void append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) {
      throw DimensionError("row has " + std::to_string(values.size()) + " columns, expected " +
                           std::to_string(cols_));
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  void erase_row(std::size_t r) {
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
    data_.erase(first, first + static_cast<std::ptrdiff_t>(cols_));
    --rows_;
  }

  std::span<const double> flat() const noexcept { return data_; }
  std::span<double> flat() noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline Vector to_vector(std::span<const double> s) { return Vector(s.begin(), s.end()); }

}  // namespace grnn
