#include "pmp/tape.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

namespace pmp {

namespace {

template <class Real>
using EMat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class Real>
using EMap = Eigen::Map<EMat<Real>>;
template <class Real>
using ECMap = Eigen::Map<const EMat<Real>>;

template <class Real>
ECMap<Real> cmap(const Tensor<Real>& t) {
  return ECMap<Real>(t.data(), t.rows(), t.cols());
}
template <class Real>
EMap<Real> map(Tensor<Real>& t) {
  return EMap<Real>(t.data(), t.rows(), t.cols());
}

std::string shapes2(const char* op, const std::string& a, const std::string& b) {
  return std::string(op) + ": incompatible shapes " + a + " and " + b;
}

}  // namespace

template <class Real>
typename Tape<Real>::Id Tape<Real>::push(Tensor<Real> value, bool needs_grad,
                                         std::function<void(Tape&)> back) {
  check(!backward_done_, "Tape: cannot record ops after backward()");
  Node n;
  n.value = std::move(value);
  n.needs_grad = needs_grad;
  n.back = std::move(back);
  nodes_.push_back(std::move(n));
  return static_cast<Id>(nodes_.size() - 1);
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::constant(Tensor<Real> v) {
  return push(std::move(v), false, nullptr);
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::leaf(Tensor<Real> v) {
  return push(std::move(v), true, nullptr);
}

template <class Real>
Tensor<Real>& Tape<Real>::grad_buf(Id id) {
  Node& n = nodes_[id];
  if (!n.grad_touched) {
    n.grad = Tensor<Real>(n.value.rows(), n.value.cols());
    n.grad_touched = true;
  }
  return n.grad;
}

template <class Real>
void Tape<Real>::accumulate(Id id, const Tensor<Real>& g) {
  if (!nodes_[id].needs_grad) return;
  Tensor<Real>& buf = grad_buf(id);
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] += g[i];
}

template <class Real>
const Tensor<Real>& Tape<Real>::grad(Id id) const {
  const Node& n = nodes_[id];
  if (n.grad_touched) return n.grad;
  // gradient never reached this node: report zeros of the right shape
  auto& self = const_cast<Tape&>(*this);
  self.zero_like_ = Tensor<Real>(n.value.rows(), n.value.cols());
  return zero_like_;
}

template <class Real>
void Tape<Real>::backward(Id loss) {
  check(!backward_done_, "Tape::backward called twice on one record");
  check(nodes_[loss].value.size() == 1,
        "Tape::backward: loss must be scalar, got shape " + nodes_[loss].value.shape_str());
  backward_done_ = true;
  grad_buf(loss)[0] = Real(1);
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    Node& n = nodes_[i];
    if (n.grad_touched && n.back && n.needs_grad) n.back(*this);
  }
}

// --- primitives --------------------------------------------------------------

template <class Real>
typename Tape<Real>::Id Tape<Real>::matmul(Id a, Id b) {
  const Tensor<Real>& A = value(a);
  const Tensor<Real>& B = value(b);
  check(A.cols() == B.rows(), shapes2("matmul", A.shape_str(), B.shape_str()));
  Tensor<Real> out(A.rows(), B.cols());
  map(out).noalias() = cmap(A) * cmap(B);
  bool ng = requires_grad(a) || requires_grad(b);
  return push(std::move(out), ng, [a, b](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    const Tensor<Real>& A = t.value(a);
    const Tensor<Real>& B = t.value(b);
    if (t.requires_grad(a)) {
      EMap<Real>(t.grad_buf(a).data(), A.rows(), A.cols()).noalias() +=
          cmap(g) * cmap(B).transpose();
    }
    if (t.requires_grad(b)) {
      EMap<Real>(t.grad_buf(b).data(), B.rows(), B.cols()).noalias() +=
          cmap(A).transpose() * cmap(g);
    }
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::add(Id a, Id b) {
  const Tensor<Real>& A = value(a);
  const Tensor<Real>& B = value(b);
  bool bcast = B.rows() == 1 && A.rows() != 1 && A.cols() == B.cols();
  check(A.same_shape(B) || bcast, shapes2("add", A.shape_str(), B.shape_str()));
  Tensor<Real> out(A.rows(), A.cols());
  if (bcast) {
    for (std::size_t r = 0; r < A.rows(); ++r)
      for (std::size_t c = 0; c < A.cols(); ++c) out(r, c) = A(r, c) + B(0, c);
  } else {
    for (std::size_t i = 0; i < A.size(); ++i) out[i] = A[i] + B[i];
  }
  bool ng = requires_grad(a) || requires_grad(b);
  return push(std::move(out), ng, [a, b, bcast](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    if (t.requires_grad(a)) t.accumulate(a, g);
    if (t.requires_grad(b)) {
      if (bcast) {
        Tensor<Real>& gb = t.grad_buf(b);
        for (std::size_t r = 0; r < g.rows(); ++r)
          for (std::size_t c = 0; c < g.cols(); ++c) gb(0, c) += g(r, c);
      } else {
        t.accumulate(b, g);
      }
    }
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::sub(Id a, Id b) {
  const Tensor<Real>& A = value(a);
  const Tensor<Real>& B = value(b);
  check(A.same_shape(B), shapes2("sub", A.shape_str(), B.shape_str()));
  Tensor<Real> out(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.size(); ++i) out[i] = A[i] - B[i];
  bool ng = requires_grad(a) || requires_grad(b);
  return push(std::move(out), ng, [a, b](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    if (t.requires_grad(a)) t.accumulate(a, g);
    if (t.requires_grad(b)) {
      Tensor<Real>& gb = t.grad_buf(b);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] -= g[i];
    }
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::mul(Id a, Id b) {
  const Tensor<Real>& A = value(a);
  const Tensor<Real>& B = value(b);
  check(A.same_shape(B), shapes2("mul", A.shape_str(), B.shape_str()));
  Tensor<Real> out(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.size(); ++i) out[i] = A[i] * B[i];
  bool ng = requires_grad(a) || requires_grad(b);
  return push(std::move(out), ng, [a, b](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    const Tensor<Real>& A = t.value(a);
    const Tensor<Real>& B = t.value(b);
    if (t.requires_grad(a)) {
      Tensor<Real>& ga = t.grad_buf(a);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * B[i];
    }
    if (t.requires_grad(b)) {
      Tensor<Real>& gb = t.grad_buf(b);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * A[i];
    }
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::scale(Id a, double c) {
  const Tensor<Real>& A = value(a);
  Tensor<Real> out(A.rows(), A.cols());
  const Real rc = static_cast<Real>(c);
  for (std::size_t i = 0; i < A.size(); ++i) out[i] = A[i] * rc;
  return push(std::move(out), requires_grad(a), [a, rc](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * rc;
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::scale_rows(Id a, Id s) {
  const Tensor<Real>& A = value(a);
  const Tensor<Real>& S = value(s);
  check(S.cols() == 1 && S.rows() == A.rows(),
        shapes2("scale_rows", A.shape_str(), S.shape_str()));
  Tensor<Real> out(A.rows(), A.cols());
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) out(r, c) = A(r, c) * S(r, 0);
  bool ng = requires_grad(a) || requires_grad(s);
  return push(std::move(out), ng, [a, s](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    const Tensor<Real>& A = t.value(a);
    const Tensor<Real>& S = t.value(s);
    if (t.requires_grad(a)) {
      Tensor<Real>& ga = t.grad_buf(a);
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) ga(r, c) += g(r, c) * S(r, 0);
    }
    if (t.requires_grad(s)) {
      Tensor<Real>& gs = t.grad_buf(s);
      for (std::size_t r = 0; r < g.rows(); ++r) {
        Real acc = 0;
        for (std::size_t c = 0; c < g.cols(); ++c) acc += g(r, c) * A(r, c);
        gs(r, 0) += acc;
      }
    }
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::concat_cols(const std::vector<Id>& parts) {
  check(!parts.empty(), "concat_cols: no inputs");
  std::size_t rows = value(parts[0]).rows();
  std::size_t cols = 0;
  bool ng = false;
  for (Id p : parts) {
    check(value(p).rows() == rows,
          shapes2("concat_cols", value(parts[0]).shape_str(), value(p).shape_str()));
    cols += value(p).cols();
    ng = ng || requires_grad(p);
  }
  Tensor<Real> out(rows, cols);
  std::size_t off = 0;
  for (Id p : parts) {
    const Tensor<Real>& P = value(p);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < P.cols(); ++c) out(r, off + c) = P(r, c);
    off += P.cols();
  }
  return push(std::move(out), ng, [parts](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    std::size_t off = 0;
    for (Id p : parts) {
      const std::size_t pc = t.value(p).cols();
      if (t.requires_grad(p)) {
        Tensor<Real>& gp = t.grad_buf(p);
        for (std::size_t r = 0; r < g.rows(); ++r)
          for (std::size_t c = 0; c < pc; ++c) gp(r, c) += g(r, off + c);
      }
      off += pc;
    }
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::slice_cols(Id a, std::size_t start, std::size_t n) {
  const Tensor<Real>& A = value(a);
  check(start + n <= A.cols(), "slice_cols: range [" + std::to_string(start) + ", " +
                                   std::to_string(start + n) + ") out of " + A.shape_str());
  Tensor<Real> out(A.rows(), n);
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = A(r, start + c);
  return push(std::move(out), requires_grad(a), [a, start, n](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < n; ++c) ga(r, start + c) += g(r, c);
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::sum_all(Id a) {
  const Tensor<Real>& A = value(a);
  Real acc = 0;
  for (std::size_t i = 0; i < A.size(); ++i) acc += A[i];
  return push(Tensor<Real>::scalar(acc), requires_grad(a), [a](Tape& t) {
    Id self = t.last_id_();
    const Real g = t.nodes_[self].grad[0];
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g;
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::mean_all(Id a) {
  const Tensor<Real>& A = value(a);
  check(A.size() > 0, "mean_all: empty tensor");
  Real acc = 0;
  for (std::size_t i = 0; i < A.size(); ++i) acc += A[i];
  const Real inv = Real(1) / static_cast<Real>(A.size());
  return push(Tensor<Real>::scalar(acc * inv), requires_grad(a), [a, inv](Tape& t) {
    Id self = t.last_id_();
    const Real g = t.nodes_[self].grad[0] * inv;
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g;
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::sum_rows(Id a) {
  const Tensor<Real>& A = value(a);
  Tensor<Real> out(1, A.cols());
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) out(0, c) += A(r, c);
  return push(std::move(out), requires_grad(a), [a](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t r = 0; r < ga.rows(); ++r)
      for (std::size_t c = 0; c < ga.cols(); ++c) ga(r, c) += g(0, c);
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::mean_over_rows(Id a) {
  const Tensor<Real>& A = value(a);
  check(A.rows() > 0, "mean_over_rows: empty tensor");
  const Real inv = Real(1) / static_cast<Real>(A.rows());
  Tensor<Real> out(1, A.cols());
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) out(0, c) += A(r, c);
  for (std::size_t c = 0; c < A.cols(); ++c) out(0, c) *= inv;
  return push(std::move(out), requires_grad(a), [a, inv](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t r = 0; r < ga.rows(); ++r)
      for (std::size_t c = 0; c < ga.cols(); ++c) ga(r, c) += g(0, c) * inv;
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::broadcast_rows(Id a, std::size_t n) {
  const Tensor<Real>& A = value(a);
  check(A.rows() == 1, "broadcast_rows: input must be 1xC, got " + A.shape_str());
  Tensor<Real> out(n, A.cols());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) out(r, c) = A(0, c);
  return push(std::move(out), requires_grad(a), [a](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) ga(0, c) += g(r, c);
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::elu(Id a) {
  const Tensor<Real>& A = value(a);
  Tensor<Real> out(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.size(); ++i)
    out[i] = A[i] > Real(0) ? A[i] : std::expm1(A[i]);
  return push(std::move(out), requires_grad(a), [a](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    const Tensor<Real>& y = t.value(self);
    const Tensor<Real>& x = t.value(a);
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t i = 0; i < g.size(); ++i)
      ga[i] += g[i] * (x[i] > Real(0) ? Real(1) : y[i] + Real(1));
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::sigmoid(Id a) {
  const Tensor<Real>& A = value(a);
  Tensor<Real> out(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.size(); ++i)
    out[i] = Real(1) / (Real(1) + std::exp(-A[i]));
  return push(std::move(out), requires_grad(a), [a](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    const Tensor<Real>& y = t.value(self);
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * y[i] * (Real(1) - y[i]);
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::tanh(Id a) {
  const Tensor<Real>& A = value(a);
  Tensor<Real> out(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.size(); ++i) out[i] = std::tanh(A[i]);
  return push(std::move(out), requires_grad(a), [a](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    const Tensor<Real>& y = t.value(self);
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * (Real(1) - y[i] * y[i]);
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::log(Id a) {
  const Tensor<Real>& A = value(a);
  Tensor<Real> out(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.size(); ++i) {
    check(A[i] > Real(0), "log: non-positive input " + std::to_string(A[i]));
    out[i] = std::log(A[i]);
  }
  return push(std::move(out), requires_grad(a), [a](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    const Tensor<Real>& x = t.value(a);
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] / x[i];
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::softmax_rows(Id a) {
  const Tensor<Real>& A = value(a);
  Tensor<Real> out(A.rows(), A.cols());
  for (std::size_t r = 0; r < A.rows(); ++r) {
    Real mx = A(r, 0);
    for (std::size_t c = 1; c < A.cols(); ++c) mx = std::max(mx, A(r, c));
    Real z = 0;
    for (std::size_t c = 0; c < A.cols(); ++c) {
      out(r, c) = std::exp(A(r, c) - mx);
      z += out(r, c);
    }
    for (std::size_t c = 0; c < A.cols(); ++c) out(r, c) /= z;
  }
  return push(std::move(out), requires_grad(a), [a](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    const Tensor<Real>& y = t.value(self);
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      Real dot = 0;
      for (std::size_t c = 0; c < g.cols(); ++c) dot += g(r, c) * y(r, c);
      for (std::size_t c = 0; c < g.cols(); ++c)
        ga(r, c) += y(r, c) * (g(r, c) - dot);
    }
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::log_softmax_rows(Id a) {
  const Tensor<Real>& A = value(a);
  Tensor<Real> out(A.rows(), A.cols());
  for (std::size_t r = 0; r < A.rows(); ++r) {
    Real mx = A(r, 0);
    for (std::size_t c = 1; c < A.cols(); ++c) mx = std::max(mx, A(r, c));
    Real z = 0;
    for (std::size_t c = 0; c < A.cols(); ++c) z += std::exp(A(r, c) - mx);
    const Real lse = mx + std::log(z);
    for (std::size_t c = 0; c < A.cols(); ++c) out(r, c) = A(r, c) - lse;
  }
  return push(std::move(out), requires_grad(a), [a](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    const Tensor<Real>& y = t.value(self);  // log-probs
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      Real gsum = 0;
      for (std::size_t c = 0; c < g.cols(); ++c) gsum += g(r, c);
      for (std::size_t c = 0; c < g.cols(); ++c)
        ga(r, c) += g(r, c) - std::exp(y(r, c)) * gsum;
    }
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::gather_rows(Id a, const std::vector<std::uint32_t>& idx) {
  const Tensor<Real>& A = value(a);
  for (std::uint32_t i : idx)
    check(i < A.rows(), "gather_rows: index " + std::to_string(i) + " out of " + A.shape_str());
  Tensor<Real> out(idx.size(), A.cols());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) out(r, c) = A(idx[r], c);
  return push(std::move(out), requires_grad(a), [a, idx](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) ga(idx[r], c) += g(r, c);
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::scatter_add_rows(Id a, const std::vector<std::uint32_t>& idx,
                                                     std::size_t n_out) {
  const Tensor<Real>& A = value(a);
  check(idx.size() == A.rows(), "scatter_add_rows: " + std::to_string(idx.size()) +
                                    " indices for " + A.shape_str());
  for (std::uint32_t i : idx)
    check(i < n_out, "scatter_add_rows: index " + std::to_string(i) + " out of range");
  Tensor<Real> out(n_out, A.cols());
  // ascending source-row order keeps accumulation bit-reproducible
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) out(idx[r], c) += A(r, c);
  return push(std::move(out), requires_grad(a), [a, idx](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) ga(r, c) += g(idx[r], c);
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::gather_items(Id a, const std::vector<std::uint32_t>& rows,
                                                 const std::vector<std::uint32_t>& cols) {
  const Tensor<Real>& A = value(a);
  check(rows.size() == cols.size(), "gather_items: index count mismatch");
  for (std::size_t i = 0; i < rows.size(); ++i)
    check(rows[i] < A.rows() && cols[i] < A.cols(),
          "gather_items: index (" + std::to_string(rows[i]) + "," + std::to_string(cols[i]) +
              ") out of " + A.shape_str());
  Tensor<Real> out(rows.size(), 1);
  for (std::size_t i = 0; i < rows.size(); ++i) out(i, 0) = A(rows[i], cols[i]);
  return push(std::move(out), requires_grad(a), [a, rows, cols](Tape& t) {
    Id self = t.last_id_();
    const Tensor<Real>& g = t.nodes_[self].grad;
    Tensor<Real>& ga = t.grad_buf(a);
    for (std::size_t i = 0; i < rows.size(); ++i) ga(rows[i], cols[i]) += g(i, 0);
  });
}

template <class Real>
typename Tape<Real>::Id Tape<Real>::straight_through_onehot(Id a) {
  const Tensor<Real>& A = value(a);
  Tensor<Real> out(A.rows(), A.cols());
  for (std::size_t r = 0; r < A.rows(); ++r) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < A.cols(); ++c)
      if (A(r, c) > A(r, best)) best = c;
    out(r, best) = Real(1);
  }
  return push(std::move(out), requires_grad(a), [a](Tape& t) {
    Id self = t.last_id_();
    t.accumulate(a, t.nodes_[self].grad);
  });
}

template class Tape<float>;
template class Tape<double>;

}  // namespace pmp
