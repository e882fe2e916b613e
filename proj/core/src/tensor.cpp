#include "gf/tensor.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace gf {

namespace {

using MatMap = Eigen::Map<
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using ConstMatMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                                   Eigen::Dynamic,
                                                   Eigen::RowMajor>>;

[[noreturn]] void shape_fail(const std::string& op, const Tensor& a,
                             const Tensor& b) {
  std::ostringstream os;
  os << op << ": incompatible shapes " << a.shape_str() << " and "
     << b.shape_str();
  throw ShapeError(os.str());
}

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1) {
    throw ShapeError("Tensor: rows and cols must be >= 1");
  }
}

}  // namespace

Tensor::Tensor(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  check_dims(rows, cols);
  if (!std::isfinite(fill)) throw std::invalid_argument("Tensor: non-finite fill");
}

Tensor::Tensor(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  check_dims(rows, cols);
  if (data_.size() != rows * cols) {
    throw ShapeError("Tensor: data length " + std::to_string(data_.size()) +
                     " != " + std::to_string(rows * cols));
  }
  if (!all_finite()) throw std::invalid_argument("Tensor: non-finite entries");
}

Tensor Tensor::zeros(std::size_t rows, std::size_t cols) {
  return Tensor(rows, cols, 0.0);
}

Tensor Tensor::ones(std::size_t rows, std::size_t cols) {
  return Tensor(rows, cols, 1.0);
}

Tensor Tensor::full(std::size_t rows, std::size_t cols, double v) {
  return Tensor(rows, cols, v);
}

Tensor Tensor::identity(std::size_t n) {
  Tensor t(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) t(i, i) = 1.0;
  return t;
}

Tensor Tensor::uniform(Rng& rng, std::size_t rows, std::size_t cols,
                       double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("Tensor::uniform: lo >= hi");
  Tensor t(rows, cols, 0.0);
  for (auto i = 0u; i < rows * cols; ++i) t.data_[i] = rng.uniform(lo, hi);
  return t;
}

Tensor Tensor::normal(Rng& rng, std::size_t rows, std::size_t cols,
                      double mean, double var) {
  if (!(var > 0.0)) throw std::invalid_argument("Tensor::normal: var <= 0");
  Tensor t(rows, cols, 0.0);
  for (auto i = 0u; i < rows * cols; ++i) t.data_[i] = rng.normal(mean, var);
  return t;
}

std::string Tensor::shape_str() const {
  return "(" + std::to_string(rows_) + "," + std::to_string(cols_) + ")";
}

bool Tensor::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

namespace {

template <typename F>
Tensor binary(const char* name, const Tensor& a, const Tensor& b, F f) {
  if (a.same_shape(b)) {
    Tensor out(a.rows(), a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        out(i, j) = f(a(i, j), b(i, j));
    return out;
  }
  // row broadcast: (n,d) op (1,d) or (1,d) op (n,d)
  if (a.cols() == b.cols() && b.rows() == 1) {
    Tensor out(a.rows(), a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        out(i, j) = f(a(i, j), b(0, j));
    return out;
  }
  if (a.cols() == b.cols() && a.rows() == 1) {
    Tensor out(b.rows(), b.cols(), 0.0);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        out(i, j) = f(a(0, j), b(i, j));
    return out;
  }
  shape_fail(name, a, b);
}

}  // namespace

Tensor Tensor::add(const Tensor& o) const {
  return binary("add", *this, o, [](double x, double y) { return x + y; });
}

Tensor Tensor::sub(const Tensor& o) const {
  return binary("sub", *this, o, [](double x, double y) { return x - y; });
}

Tensor Tensor::mul(const Tensor& o) const {
  return binary("mul", *this, o, [](double x, double y) { return x * y; });
}

Tensor Tensor::div(const Tensor& o) const {
  return binary("div", *this, o, [](double x, double y) { return x / y; });
}

Tensor Tensor::add_scalar(double c) const {
  Tensor out = *this;
  for (auto& v : out.data_) v += c;
  return out;
}

Tensor Tensor::mul_scalar(double c) const {
  Tensor out = *this;
  for (auto& v : out.data_) v *= c;
  return out;
}

Tensor Tensor::neg() const { return mul_scalar(-1.0); }

Tensor Tensor::map(const std::function<double(double)>& f) const {
  Tensor out = *this;
  for (auto& v : out.data_) v = f(v);
  return out;
}

Tensor Tensor::matmul(const Tensor& o) const {
  if (cols_ != o.rows_) shape_fail("matmul", *this, o);
  Tensor out(rows_, o.cols_, 0.0);
  ConstMatMap a(data(), rows_, cols_);
  ConstMatMap b(o.data(), o.rows_, o.cols_);
  MatMap c(out.data(), rows_, o.cols_);
  c.noalias() = a * b;
  return out;
}

Tensor Tensor::transpose() const {
  Tensor out(cols_, rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

double Tensor::sum() const {
  double s = 0.0;
  for (double v : data_) s += v;
  return s;
}

double Tensor::mean() const { return sum() / static_cast<double>(size()); }

double Tensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

Tensor Tensor::col_sum() const {
  Tensor out(1, cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(0, j) += (*this)(i, j);
  return out;
}

Tensor Tensor::col_mean() const {
  return col_sum().mul_scalar(1.0 / static_cast<double>(rows_));
}

Tensor Tensor::slice_cols(std::size_t c0, std::size_t c1) const {
  if (c0 >= c1 || c1 > cols_) {
    throw ShapeError("slice_cols: bad range [" + std::to_string(c0) + "," +
                     std::to_string(c1) + ") for " + shape_str());
  }
  Tensor out(rows_, c1 - c0, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = c0; j < c1; ++j) out(i, j - c0) = (*this)(i, j);
  return out;
}

Tensor Tensor::concat_cols(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw ShapeError("concat_cols: no parts");
  std::size_t rows = parts[0].rows();
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) shape_fail("concat_cols", parts[0], p);
    cols += p.cols();
  }
  Tensor out(rows, cols, 0.0);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) out(i, off + j) = p(i, j);
    off += p.cols();
  }
  return out;
}

Tensor Tensor::tile_rows(std::size_t n) const {
  if (rows_ != 1) throw ShapeError("tile_rows: expects a (1,d) tensor, got " +
                                   shape_str());
  Tensor out(n, cols_, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(0, j);
  return out;
}

}  // namespace gf
