// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/nn/ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tempograph/errors.hpp"

namespace tempograph::nn {
namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

[[noreturn]] void mismatch(const char* op, const Matrix& a, const Matrix& b) {
  throw DimensionError(std::string(op) + ": incompatible shapes " + shape(a) + " and " + shape(b));
}

void same_shape(const char* op, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) mismatch(op, a, b);
}

void same_tape(const char* op, Var a, Var b) {
  if (a.tape() != b.tape()) throw ContractViolation(std::string(op) + ": inputs on different tapes");
}

void check_offsets(const char* op, std::span<const std::size_t> offsets, Eigen::Index rows) {
  if (offsets.empty() || offsets.front() != 0 ||
      offsets.back() != static_cast<std::size_t>(rows))
    throw DimensionError(std::string(op) + ": segment offsets do not cover " +
                         std::to_string(rows) + " rows");
  for (std::size_t s = 1; s < offsets.size(); ++s)
    if (offsets[s] < offsets[s - 1])
      throw DimensionError(std::string(op) + ": segment offsets must be non-decreasing");
}

template <class F, class DF>
Var unary(Var x, F f, DF df) {
  Tape& tape = *x.tape();
  Matrix out = x.value().unaryExpr(f);
  return tape.record(std::move(out), x.requires_grad(), [x, df](Tape& t, const Matrix& g) {
    const Matrix& xv = x.value();
    t.accumulate_expr(x, g.cwiseProduct(xv.unaryExpr(df)));
  });
}

}  // namespace

Var matmul(Var x, Var w) {
  same_tape("matmul", x, w);
  const Matrix& xv = x.value();
  const Matrix& wv = w.value();
  if (xv.cols() != wv.rows()) mismatch("matmul", xv, wv);
  Matrix out = xv * wv;
  return x.tape()->record(std::move(out), x.requires_grad() || w.requires_grad(),
                          [x, w](Tape& t, const Matrix& g) {
                            if (x.requires_grad()) t.accumulate_expr(x, g * w.value().transpose());
                            if (w.requires_grad()) t.accumulate_expr(w, x.value().transpose() * g);
                          });
}

Var linear(Var x, Var w, Var b) {
  same_tape("linear", x, w);
  same_tape("linear", x, b);
  const Matrix& xv = x.value();
  const Matrix& wv = w.value();
  const Matrix& bv = b.value();
  if (xv.cols() != wv.rows()) mismatch("linear", xv, wv);
  if (bv.rows() != 1 || bv.cols() != wv.cols()) mismatch("linear", wv, bv);
  Matrix out = xv * wv;
  out.rowwise() += bv.row(0);
  const bool rg = x.requires_grad() || w.requires_grad() || b.requires_grad();
  return x.tape()->record(std::move(out), rg, [x, w, b](Tape& t, const Matrix& g) {
    if (x.requires_grad()) t.accumulate_expr(x, g * w.value().transpose());
    if (w.requires_grad()) t.accumulate_expr(w, x.value().transpose() * g);
    if (b.requires_grad()) t.accumulate_expr(b, g.colwise().sum());
  });
}

Var add(Var a, Var b) {
  same_tape("add", a, b);
  same_shape("add", a.value(), b.value());
  Matrix out = a.value() + b.value();
  return a.tape()->record(std::move(out), a.requires_grad() || b.requires_grad(),
                          [a, b](Tape& t, const Matrix& g) {
                            t.accumulate(a, g);
                            t.accumulate(b, g);
                          });
}

Var sub(Var a, Var b) {
  same_tape("sub", a, b);
  same_shape("sub", a.value(), b.value());
  Matrix out = a.value() - b.value();
  return a.tape()->record(std::move(out), a.requires_grad() || b.requires_grad(),
                          [a, b](Tape& t, const Matrix& g) {
                            t.accumulate(a, g);
                            t.accumulate_expr(b, -g);
                          });
}

Var mul(Var a, Var b) {
  same_tape("mul", a, b);
  same_shape("mul", a.value(), b.value());
  Matrix out = a.value().cwiseProduct(b.value());
  return a.tape()->record(std::move(out), a.requires_grad() || b.requires_grad(),
                          [a, b](Tape& t, const Matrix& g) {
                            if (a.requires_grad()) t.accumulate_expr(a, g.cwiseProduct(b.value()));
                            if (b.requires_grad()) t.accumulate_expr(b, g.cwiseProduct(a.value()));
                          });
}

Var scale(Var a, double factor) {
  Matrix out = a.value() * factor;
  return a.tape()->record(std::move(out), a.requires_grad(), [a, factor](Tape& t, const Matrix& g) {
    t.accumulate_expr(a, g * factor);
  });
}

Var one_minus(Var a) {
  Matrix out = (1.0 - a.value().array()).matrix();
  return a.tape()->record(std::move(out), a.requires_grad(),
                          [a](Tape& t, const Matrix& g) { t.accumulate_expr(a, -g); });
}

Var relu(Var x) {
  return unary(
      x, [](double v) { return v > 0.0 ? v : 0.0; }, [](double v) { return v > 0.0 ? 1.0 : 0.0; });
}

Var leaky_relu(Var x, double slope) {
  return unary(
      x, [slope](double v) { return v > 0.0 ? v : slope * v; },
      [slope](double v) { return v > 0.0 ? 1.0 : slope; });
}

Var sigmoid(Var x) {
  Matrix out = x.value().unaryExpr([](double v) {
    // Split by sign so exp never overflows.
    if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
    const double e = std::exp(v);
    return e / (1.0 + e);
  });
  return x.tape()->record_with_output(
      std::move(out), x.requires_grad(), [x](Tape& t, const Matrix& g, const Matrix& s) {
        t.accumulate_expr(x, g.cwiseProduct(s.cwiseProduct((1.0 - s.array()).matrix())));
      });
}

Var tanh(Var x) {
  Matrix out = x.value().array().tanh().matrix();
  return x.tape()->record_with_output(
      std::move(out), x.requires_grad(), [x](Tape& t, const Matrix& g, const Matrix& s) {
        t.accumulate_expr(x, g.cwiseProduct((1.0 - s.array().square()).matrix()));
      });
}

Var cosine(Var x) {
  return unary(
      x, [](double v) { return std::cos(v); }, [](double v) { return -std::sin(v); });
}

Var concat(std::initializer_list<Var> xs) { return concat(std::span<const Var>(xs.begin(), xs.size())); }

Var concat(std::span<const Var> xs) {
  if (xs.empty()) throw DimensionError("concat: no inputs");
  const Eigen::Index rows = xs[0].rows();
  Eigen::Index cols = 0;
  bool rg = false;
  for (const Var& v : xs) {
    same_tape("concat", xs[0], v);
    if (v.rows() != rows) mismatch("concat", xs[0].value(), v.value());
    cols += v.cols();
    rg = rg || v.requires_grad();
  }
  Matrix out(rows, cols);
  Eigen::Index at = 0;
  for (const Var& v : xs) {
    out.middleCols(at, v.cols()) = v.value();
    at += v.cols();
  }
  std::vector<Var> inputs(xs.begin(), xs.end());
  return xs[0].tape()->record(std::move(out), rg, [inputs](Tape& t, const Matrix& g) {
    Eigen::Index at = 0;
    for (const Var& v : inputs) {
      const Eigen::Index c = v.cols();
      if (v.requires_grad()) t.accumulate_expr(v, g.middleCols(at, c));
      at += c;
    }
  });
}

Var concat_rows(std::span<const Var> xs) {
  if (xs.empty()) throw DimensionError("concat_rows: no inputs");
  const Eigen::Index cols = xs[0].cols();
  Eigen::Index rows = 0;
  bool rg = false;
  for (const Var& v : xs) {
    same_tape("concat_rows", xs[0], v);
    if (v.cols() != cols) mismatch("concat_rows", xs[0].value(), v.value());
    rows += v.rows();
    rg = rg || v.requires_grad();
  }
  Matrix out(rows, cols);
  Eigen::Index at = 0;
  for (const Var& v : xs) {
    out.middleRows(at, v.rows()) = v.value();
    at += v.rows();
  }
  std::vector<Var> inputs(xs.begin(), xs.end());
  return xs[0].tape()->record(std::move(out), rg, [inputs](Tape& t, const Matrix& g) {
    Eigen::Index at = 0;
    for (const Var& v : inputs) {
      const Eigen::Index r = v.rows();
      if (v.requires_grad()) t.accumulate_expr(v, g.middleRows(at, r));
      at += r;
    }
  });
}

Var slice_cols(Var x, Eigen::Index begin, Eigen::Index end) {
  if (begin < 0 || end < begin || end > x.cols())
    throw DimensionError("slice_cols: range [" + std::to_string(begin) + ", " +
                         std::to_string(end) + ") outside " + shape(x.value()));
  Matrix out = x.value().middleCols(begin, end - begin);
  return x.tape()->record(std::move(out), x.requires_grad(),
                          [x, begin, end](Tape& t, const Matrix& g) {
                            Matrix full = Matrix::Zero(x.rows(), x.cols());
                            full.middleCols(begin, end - begin) = g;
                            t.accumulate(x, full);
                          });
}

Var gather_rows(Var x, std::span<const std::uint32_t> index) {
  const Matrix& xv = x.value();
  Matrix out(static_cast<Eigen::Index>(index.size()), xv.cols());
  for (std::size_t r = 0; r < index.size(); ++r) {
    if (index[r] >= xv.rows())
      throw DimensionError("gather_rows: row " + std::to_string(index[r]) + " outside " +
                           shape(xv));
    out.row(static_cast<Eigen::Index>(r)) = xv.row(index[r]);
  }
  std::vector<std::uint32_t> idx(index.begin(), index.end());
  return x.tape()->record(std::move(out), x.requires_grad(),
                          [x, idx = std::move(idx)](Tape& t, const Matrix& g) {
                            Matrix full = Matrix::Zero(x.rows(), x.cols());
                            for (std::size_t r = 0; r < idx.size(); ++r)
                              full.row(idx[r]) += g.row(static_cast<Eigen::Index>(r));
                            t.accumulate(x, full);
                          });
}

Var sum_rows(Var x) {
  Matrix out = x.value().colwise().sum();
  return x.tape()->record(std::move(out), x.requires_grad(), [x](Tape& t, const Matrix& g) {
    t.accumulate_expr(x, g.replicate(x.rows(), 1));
  });
}

Var mean(Var x) {
  const double n = static_cast<double>(x.value().size());
  if (n == 0) throw DimensionError("mean: empty input");
  Matrix out(1, 1);
  out(0, 0) = x.value().sum() / n;
  return x.tape()->record(std::move(out), x.requires_grad(), [x, n](Tape& t, const Matrix& g) {
    t.accumulate_expr(x, Matrix::Constant(x.rows(), x.cols(), g(0, 0) / n));
  });
}

Var softmax(Var logits) {
  const std::size_t offsets[2] = {0, static_cast<std::size_t>(logits.rows())};
  return softmax(logits, offsets);
}

Var softmax(Var logits, std::span<const std::size_t> offsets) {
  const Matrix& lv = logits.value();
  if (lv.cols() != 1) throw DimensionError("softmax: expected a column vector, got " + shape(lv));
  check_offsets("softmax", offsets, lv.rows());
  Matrix out(lv.rows(), 1);
  for (std::size_t s = 0; s + 1 < offsets.size(); ++s) {
    const auto b = static_cast<Eigen::Index>(offsets[s]);
    const auto n = static_cast<Eigen::Index>(offsets[s + 1] - offsets[s]);
    if (n == 0) continue;
    const double mx = lv.middleRows(b, n).maxCoeff();
    auto seg = out.middleRows(b, n);
    seg = (lv.middleRows(b, n).array() - mx).exp().matrix();
    seg /= seg.sum();
  }
  std::vector<std::size_t> off(offsets.begin(), offsets.end());
  return logits.tape()->record_with_output(
      std::move(out), logits.requires_grad(),
      [logits, off = std::move(off)](Tape& t, const Matrix& g, const Matrix& p) {
        Matrix dx(p.rows(), 1);
        for (std::size_t s = 0; s + 1 < off.size(); ++s) {
          const auto b = static_cast<Eigen::Index>(off[s]);
          const auto n = static_cast<Eigen::Index>(off[s + 1] - off[s]);
          if (n == 0) continue;
          const double dot = p.middleRows(b, n).cwiseProduct(g.middleRows(b, n)).sum();
          dx.middleRows(b, n) =
              p.middleRows(b, n).cwiseProduct((g.middleRows(b, n).array() - dot).matrix());
        }
        t.accumulate(logits, dx);
      });
}

Var weighted_sum(Var xs, Var weights, std::span<const std::size_t> offsets) {
  same_tape("weighted_sum", xs, weights);
  const Matrix& xv = xs.value();
  const Matrix& wv = weights.value();
  if (wv.cols() != 1 || wv.rows() != xv.rows()) mismatch("weighted_sum", xv, wv);
  check_offsets("weighted_sum", offsets, xv.rows());
  const auto segments = static_cast<Eigen::Index>(offsets.size() - 1);
  Matrix out = Matrix::Zero(segments, xv.cols());
  for (Eigen::Index s = 0; s < segments; ++s)
    for (auto r = static_cast<Eigen::Index>(offsets[s]);
         r < static_cast<Eigen::Index>(offsets[s + 1]); ++r)
      out.row(s) += wv(r, 0) * xv.row(r);
  std::vector<std::size_t> off(offsets.begin(), offsets.end());
  return xs.tape()->record(
      std::move(out), xs.requires_grad() || weights.requires_grad(),
      [xs, weights, off = std::move(off)](Tape& t, const Matrix& g) {
        const Matrix& xv = xs.value();
        const Matrix& wv = weights.value();
        Matrix dx, dw;
        if (xs.requires_grad()) dx.resize(xv.rows(), xv.cols());
        if (weights.requires_grad()) dw.resize(wv.rows(), 1);
        for (std::size_t s = 0; s + 1 < off.size(); ++s)
          for (auto r = static_cast<Eigen::Index>(off[s]);
               r < static_cast<Eigen::Index>(off[s + 1]); ++r) {
            const auto si = static_cast<Eigen::Index>(s);
            if (xs.requires_grad()) dx.row(r) = wv(r, 0) * g.row(si);
            if (weights.requires_grad()) dw(r, 0) = g.row(si).dot(xv.row(r));
          }
        if (xs.requires_grad()) t.accumulate(xs, dx);
        if (weights.requires_grad()) t.accumulate(weights, dw);
      });
}

double bce(double p, double y) {
  const double q = std::clamp(p, kBceEpsilon, 1.0 - kBceEpsilon);
  return -(y * std::log(q) + (1.0 - y) * std::log(1.0 - q));
}

Var bce_loss(Var p, std::span<const double> labels) {
  const Matrix& pv = p.value();
  if (pv.cols() != 1 || static_cast<std::size_t>(pv.rows()) != labels.size())
    throw DimensionError("bce_loss: probabilities " + shape(pv) + " vs " +
                         std::to_string(labels.size()) + " labels");
  if (labels.empty()) throw DimensionError("bce_loss: empty batch");
  const double n = static_cast<double>(labels.size());
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    total += bce(pv(static_cast<Eigen::Index>(i), 0), labels[i]);
  Matrix out(1, 1);
  out(0, 0) = total / n;
  std::vector<double> y(labels.begin(), labels.end());
  return p.tape()->record(std::move(out), p.requires_grad(),
                          [p, y = std::move(y), n](Tape& t, const Matrix& g) {
                            const Matrix& pv = p.value();
                            Matrix dp(pv.rows(), 1);
                            for (Eigen::Index i = 0; i < pv.rows(); ++i) {
                              const double q = pv(i, 0);
                              const double yi = y[static_cast<std::size_t>(i)];
                              // The clamp is flat outside [eps, 1 - eps].
                              dp(i, 0) = (q < kBceEpsilon || q > 1.0 - kBceEpsilon)
                                             ? 0.0
                                             : (-yi / q + (1.0 - yi) / (1.0 - q)) / n;
                            }
                            t.accumulate_expr(p, g(0, 0) * dp);
                          });
}

}  // namespace tempograph::nn
