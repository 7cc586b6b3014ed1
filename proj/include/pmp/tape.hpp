#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "pmp/tensor.hpp"

namespace pmp {

// Reverse-mode autodiff over dense 2-D tensors. Ops append nodes to an
// execution record; backward() walks the record once in reverse. Records are
// not thread-safe; use one Tape per in-flight computation.
template <class Real>
class Tape {
 public:
  using Id = std::uint32_t;
  static constexpr Id npos = std::numeric_limits<Id>::max();

  // --- node creation -------------------------------------------------------
  Id constant(Tensor<Real> v);  // no gradient tracked
  Id leaf(Tensor<Real> v);      // gradient tracked (parameters, probe inputs)

  const Tensor<Real>& value(Id id) const { return nodes_[id].value; }
  const Tensor<Real>& grad(Id id) const;
  bool requires_grad(Id id) const { return nodes_[id].needs_grad; }
  std::size_t num_nodes() const { return nodes_.size(); }

  // --- primitives ----------------------------------------------------------
  Id matmul(Id a, Id b);
  Id add(Id a, Id b);        // same shape, or b is a 1xC row broadcast over rows
  Id sub(Id a, Id b);        // same shape
  Id mul(Id a, Id b);        // elementwise, same shape
  Id scale(Id a, double c);  // multiply by plain (non-differentiated) scalar
  Id scale_rows(Id a, Id s); // row i of a scaled by s(i,0); s is Nx1
  Id concat_cols(const std::vector<Id>& parts);
  Id slice_cols(Id a, std::size_t start, std::size_t n);
  Id sum_all(Id a);                      // -> 1x1
  Id mean_all(Id a);                     // -> 1x1
  Id sum_rows(Id a);                     // column-wise sum over rows -> 1xC
  Id mean_over_rows(Id a);               // column-wise mean over rows -> 1xC
  Id broadcast_rows(Id a, std::size_t n);  // 1xC -> NxC
  Id elu(Id a);
  Id sigmoid(Id a);
  Id tanh(Id a);
  Id log(Id a);  // domain error on any entry <= 0
  Id softmax_rows(Id a);
  Id log_softmax_rows(Id a);
  Id gather_rows(Id a, const std::vector<std::uint32_t>& idx);
  Id scatter_add_rows(Id a, const std::vector<std::uint32_t>& idx, std::size_t n_out);
  // picks a(rows[i], cols[i]) for each i -> Nx1
  Id gather_items(Id a, const std::vector<std::uint32_t>& rows,
                  const std::vector<std::uint32_t>& cols);
  // forward: row-wise one-hot of argmax; backward: identity (straight-through)
  Id straight_through_onehot(Id a);

  // --- backward ------------------------------------------------------------
  // Seeds d(loss)/d(loss) = 1 and accumulates gradients for every node that
  // loss depends on. loss must be scalar. May be called once per record.
  void backward(Id loss);

 private:
  struct Node {
    Tensor<Real> value;
    Tensor<Real> grad;
    bool needs_grad = false;
    bool grad_touched = false;
    std::function<void(Tape&)> back;  // empty for leaves/constants
  };

  Id push(Tensor<Real> value, bool needs_grad, std::function<void(Tape&)> back);
  Tensor<Real>& grad_buf(Id id);
  void accumulate(Id id, const Tensor<Real>& g);

  std::vector<Node> nodes_;
  bool backward_done_ = false;
  Tensor<Real> zero_like_;  // scratch for grad() on untouched nodes
};

extern template class Tape<float>;
extern template class Tape<double>;

}  // namespace pmp
