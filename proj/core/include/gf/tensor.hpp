#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gf/rng.hpp"

namespace gf {

// Dense 2-D array of doubles, row-major, batch-first: shape (n, d) where
// the first dimension is the batch. Immutable by convention once built
// (training mutates parameter tensors through explicit in-place helpers).
class Tensor {
 public:
  Tensor() : rows_(0), cols_(0) {}
  Tensor(std::size_t rows, std::size_t cols, double fill = 0.0);
  Tensor(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Tensor zeros(std::size_t rows, std::size_t cols);
  static Tensor ones(std::size_t rows, std::size_t cols);
  static Tensor full(std::size_t rows, std::size_t cols, double v);
  static Tensor identity(std::size_t n);
  // i.i.d. uniform on [lo, hi). Throws std::invalid_argument when lo >= hi.
  static Tensor uniform(Rng& rng, std::size_t rows, std::size_t cols,
                        double lo, double hi);
  // i.i.d. N(mean, var). Throws std::invalid_argument when var <= 0.
  static Tensor normal(Rng& rng, std::size_t rows, std::size_t cols,
                       double mean, double var);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool same_shape(const Tensor& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }
  std::string shape_str() const;

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool all_finite() const;

  // Elementwise arithmetic. Binary ops accept an operand whose row count
  // is 1 with matching cols; it broadcasts over the batch dimension.
  Tensor add(const Tensor& o) const;
  Tensor sub(const Tensor& o) const;
  Tensor mul(const Tensor& o) const;
  Tensor div(const Tensor& o) const;
  Tensor add_scalar(double c) const;
  Tensor mul_scalar(double c) const;
  Tensor neg() const;
  Tensor map(const std::function<double(double)>& f) const;

  Tensor matmul(const Tensor& o) const;  // shape error on inner mismatch
  Tensor transpose() const;

  double sum() const;
  double mean() const;
  double max_abs() const;
  Tensor col_sum() const;   // (n,d) -> (1,d)
  Tensor col_mean() const;  // (n,d) -> (1,d)

  Tensor slice_cols(std::size_t c0, std::size_t c1) const;  // [c0, c1)
  static Tensor concat_cols(const std::vector<Tensor>& parts);
  Tensor tile_rows(std::size_t n) const;  // (1,d) -> (n,d)

  bool operator==(const Tensor& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

// Thrown on any shape contract violation; names both shapes.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace gf
