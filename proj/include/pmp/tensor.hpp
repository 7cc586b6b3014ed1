#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmp {

[[noreturn]] inline void fail(const std::string& msg) { throw std::runtime_error(msg); }

inline void check(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

// Dense row-major matrix of real scalars. Vectors are 1xN, scalars 1x1.
// Real is float (training) or double (verification).
template <class Real>
class Tensor {
 public:
  Tensor() = default;
  Tensor(std::size_t rows, std::size_t cols, Real init = Real(0))
      : rows_(rows), cols_(cols), data_(rows * cols, init) {}

  static Tensor scalar(Real v) {
    Tensor t(1, 1);
    t.data_[0] = v;
    return t;
  }
  static Tensor row(std::vector<Real> v) {
    Tensor t;
    t.rows_ = 1;
    t.cols_ = v.size();
    t.data_ = std::move(v);
    return t;
  }
  static Tensor from_rows(std::size_t rows, std::size_t cols, std::vector<Real> v) {
    check(v.size() == rows * cols, "Tensor::from_rows: data size mismatch");
    Tensor t;
    t.rows_ = rows;
    t.cols_ = cols;
    t.data_ = std::move(v);
    return t;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool same_shape(const Tensor& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  Real& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Real operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Real& operator[](std::size_t i) { return data_[i]; }
  Real operator[](std::size_t i) const { return data_[i]; }

  Real* data() { return data_.data(); }
  const Real* data() const { return data_.data(); }
  std::vector<Real>& values() { return data_; }
  const std::vector<Real>& values() const { return data_; }

  Real item() const {
    check(size() == 1, "Tensor::item: tensor is not scalar, shape " + shape_str());
    return data_[0];
  }

  void zero() { std::fill(data_.begin(), data_.end(), Real(0)); }

  bool all_finite() const {
    for (Real v : data_)
      if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
  }

  std::string shape_str() const {
    std::ostringstream os;
    os << "[" << rows_ << "x" << cols_ << "]";
    return os.str();
  }

  template <class Other>
  Tensor<Other> cast() const {
    Tensor<Other> out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out[i] = static_cast<Other>(data_[i]);
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Real> data_;
};

}  // namespace pmp
