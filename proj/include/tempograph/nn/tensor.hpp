// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_NN_TENSOR_HPP
#define TEMPOGRAPH_NN_TENSOR_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace tempograph::nn {

/// Dense row-major matrix of doubles. Every tensor in the library is 2-D;
/// a vector is a 1 x n or n x 1 matrix and a scalar is 1 x 1.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A named learnable array with its accumulated gradient.
class Parameter {
 public:
  Parameter(std::string name, Matrix value);

  const std::string& name() const noexcept { return name_; }
  Matrix& value() noexcept { return value_; }
  const Matrix& value() const noexcept { return value_; }
  Matrix& grad() noexcept { return grad_; }
  const Matrix& grad() const noexcept { return grad_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(value_.size()); }
  void zero_grad() { grad_.setZero(); }

 private:
  std::string name_;
  Matrix value_;
  Matrix grad_;
};

/// Owns the parameters of a model. Addresses are stable for the lifetime of
/// the set, so modules may keep Parameter pointers.
class ParamSet {
 public:
  Parameter& add(std::string name, Matrix init);

  Parameter* find(const std::string& name) noexcept;
  const Parameter* find(const std::string& name) const noexcept;

  std::size_t size() const noexcept { return params_.size(); }
  /// Total number of scalars across all parameters.
  std::size_t count() const noexcept;

  Parameter& operator[](std::size_t i) noexcept { return *params_[i]; }
  const Parameter& operator[](std::size_t i) const noexcept { return *params_[i]; }

  void zero_grad();

  /// Value snapshot, in insertion order.
  std::vector<Matrix> snapshot() const;
  void restore(const std::vector<Matrix>& values);

 private:
  std::vector<std::unique_ptr<Parameter>> params_;
};

class Tape;

/// Handle to a tensor recorded on a Tape. Cheap to copy; valid until the
/// tape is cleared.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, std::uint32_t id) : tape_(tape), id_(id) {}

  const Matrix& value() const;
  /// Gradient after Tape::backward; empty when nothing flowed here.
  const Matrix& grad() const;
  bool requires_grad() const;

  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }

  Tape* tape() const noexcept { return tape_; }
  std::uint32_t id() const noexcept { return id_; }
  bool valid() const noexcept { return tape_ != nullptr; }

 private:
  Tape* tape_ = nullptr;
  std::uint32_t id_ = 0;
};

/// Records forward ops and replays them in reverse for backward.
///
/// With recording off the tape still evaluates every op but keeps no
/// backward closures and hands out parameters as constants.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, const Matrix& out_grad)>;
  /// Backward that also reads the op's own output (sigmoid, tanh, softmax).
  using OutputBackwardFn =
      std::function<void(Tape&, const Matrix& out_grad, const Matrix& out_value)>;

  explicit Tape(bool recording = true) : recording_(recording) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  bool recording() const noexcept { return recording_; }

  Var constant(Matrix value);
  /// Leaf for a parameter. Repeated calls within one tape return the same
  /// leaf so gradients from every use meet there.
  Var param(Parameter& p);

  /// Records an op output. `backward` receives the output gradient and must
  /// accumulate into the inputs via accumulate(); it is dropped when no input
  /// requires a gradient.
  Var record(Matrix value, bool requires_grad, BackwardFn backward);
  Var record_with_output(Matrix value, bool requires_grad, OutputBackwardFn backward);

  /// Adds `g` into the gradient of `v` if it requires one.
  void accumulate(Var v, const Matrix& g);
  template <class Expr>
  void accumulate_expr(Var v, const Expr& g);

  /// Reverse pass from a 1 x 1 loss. Parameter gradients are added to
  /// Parameter::grad(). Throws ContractViolation for a non-scalar loss.
  void backward(Var loss);

  void clear();
  std::size_t size() const noexcept { return nodes_.size(); }

  const Matrix& value(std::uint32_t id) const;
  const Matrix& grad(std::uint32_t id) const;
  bool requires_grad(std::uint32_t id) const { return nodes_[id].requires_grad; }

 private:
  struct Node {
    Matrix value;
    const Matrix* external = nullptr;
    Matrix grad;
    bool requires_grad = false;
    Parameter* param = nullptr;
    OutputBackwardFn backward;
  };

  Matrix& grad_slot(std::uint32_t id);

  bool recording_;
  std::deque<Node> nodes_;
  std::unordered_map<const Parameter*, std::uint32_t> param_leaves_;
};

template <class Expr>
void Tape::accumulate_expr(Var v, const Expr& g) {
  if (!nodes_[v.id()].requires_grad) return;
  grad_slot(v.id()) += g;
}

}  // namespace tempograph::nn

#endif  // TEMPOGRAPH_NN_TENSOR_HPP
