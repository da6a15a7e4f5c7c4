// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/nn/tensor.hpp"

#include <utility>

#include "tempograph/errors.hpp"

namespace tempograph::nn {

Parameter::Parameter(std::string name, Matrix value)
    : name_(std::move(name)), value_(std::move(value)) {
  grad_ = Matrix::Zero(value_.rows(), value_.cols());
}

Parameter& ParamSet::add(std::string name, Matrix init) {
  if (find(name) != nullptr) throw ConfigError("duplicate parameter name: " + name);
  params_.push_back(std::make_unique<Parameter>(std::move(name), std::move(init)));
  return *params_.back();
}

Parameter* ParamSet::find(const std::string& name) noexcept {
  for (auto& p : params_)
    if (p->name() == name) return p.get();
  return nullptr;
}

const Parameter* ParamSet::find(const std::string& name) const noexcept {
  for (const auto& p : params_)
    if (p->name() == name) return p.get();
  return nullptr;
}

std::size_t ParamSet::count() const noexcept {
  std::size_t n = 0;
  for (const auto& p : params_) n += p->size();
  return n;
}

void ParamSet::zero_grad() {
  for (auto& p : params_) p->zero_grad();
}

std::vector<Matrix> ParamSet::snapshot() const {
  std::vector<Matrix> out;
  out.reserve(params_.size());
  for (const auto& p : params_) out.push_back(p->value());
  return out;
}

void ParamSet::restore(const std::vector<Matrix>& values) {
  if (values.size() != params_.size()) throw ContractViolation("ParamSet::restore: size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].rows() != params_[i]->value().rows() ||
        values[i].cols() != params_[i]->value().cols())
      throw DimensionError("ParamSet::restore: shape mismatch for " + params_[i]->name());
    params_[i]->value() = values[i];
  }
}

const Matrix& Var::value() const { return tape_->value(id_); }
const Matrix& Var::grad() const { return tape_->grad(id_); }
bool Var::requires_grad() const { return tape_->requires_grad(id_); }

Var Tape::constant(Matrix value) {
  Node& n = nodes_.emplace_back();
  n.value = std::move(value);
  return {this, static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Var Tape::param(Parameter& p) {
  if (auto it = param_leaves_.find(&p); it != param_leaves_.end()) return {this, it->second};
  Node& n = nodes_.emplace_back();
  n.external = &p.value();
  if (recording_) {
    n.requires_grad = true;
    n.param = &p;
  }
  const auto id = static_cast<std::uint32_t>(nodes_.size() - 1);
  param_leaves_.emplace(&p, id);
  return {this, id};
}

Var Tape::record(Matrix value, bool requires_grad, BackwardFn backward) {
  if (!(recording_ && requires_grad)) return record_with_output(std::move(value), false, nullptr);
  return record_with_output(std::move(value), true,
                            [fn = std::move(backward)](Tape& t, const Matrix& g, const Matrix&) {
                              fn(t, g);
                            });
}

Var Tape::record_with_output(Matrix value, bool requires_grad, OutputBackwardFn backward) {
  Node& n = nodes_.emplace_back();
  n.value = std::move(value);
  if (recording_ && requires_grad) {
    n.requires_grad = true;
    n.backward = std::move(backward);
  }
  return {this, static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Matrix& Tape::grad_slot(std::uint32_t id) {
  Node& n = nodes_[id];
  if (n.grad.size() == 0) {
    const Matrix& v = n.external ? *n.external : n.value;
    n.grad = Matrix::Zero(v.rows(), v.cols());
  }
  return n.grad;
}

void Tape::accumulate(Var v, const Matrix& g) {
  if (!nodes_[v.id()].requires_grad) return;
  grad_slot(v.id()) += g;
}

void Tape::backward(Var loss) {
  const Matrix& lv = value(loss.id());
  if (lv.rows() != 1 || lv.cols() != 1)
    throw ContractViolation("backward: loss must be 1 x 1, got " + std::to_string(lv.rows()) +
                            " x " + std::to_string(lv.cols()));
  if (!nodes_[loss.id()].requires_grad) return;
  grad_slot(loss.id())(0, 0) += 1.0;
  for (std::uint32_t i = loss.id() + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.requires_grad || n.grad.size() == 0) continue;
    if (n.backward) n.backward(*this, n.grad, n.external ? *n.external : n.value);
    if (n.param != nullptr) n.param->grad() += n.grad;
  }
}

void Tape::clear() {
  nodes_.clear();
  param_leaves_.clear();
}

const Matrix& Tape::value(std::uint32_t id) const {
  const Node& n = nodes_[id];
  return n.external ? *n.external : n.value;
}

const Matrix& Tape::grad(std::uint32_t id) const { return nodes_[id].grad; }

}  // namespace tempograph::nn
