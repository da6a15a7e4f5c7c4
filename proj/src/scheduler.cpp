// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/scheduler.hpp"

#include <chrono>
#include <string>

#include "tempograph/errors.hpp"

namespace tempograph {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void DecoupledConfig::validate() const {
  if (memory_batch_size < 1) throw ConfigError("memory batch size must be at least 1");
  if (prediction_batch_size < memory_batch_size)
    throw ConfigError("memory batch size " + std::to_string(memory_batch_size) +
                      " exceeds prediction batch size " + std::to_string(prediction_batch_size));
}

TimingBreakdown& TimingBreakdown::operator+=(const TimingBreakdown& o) noexcept {
  t_memory += o.t_memory;
  t_prediction += o.t_prediction;
  events_processed += o.events_processed;
  return *this;
}

std::vector<std::span<const Event>> split_into_memory_batches(std::span<const Event> batch,
                                                              std::size_t m) {
  if (m < 1) throw ConfigError("memory batch size must be at least 1");
  std::vector<std::span<const Event>> chunks;
  std::size_t begin = 0;
  std::size_t updates = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (!is_update(batch[i].kind)) continue;
    if (++updates == m) {
      chunks.push_back(batch.subspan(begin, i + 1 - begin));
      begin = i + 1;
      updates = 0;
    }
  }
  if (begin < batch.size()) chunks.push_back(batch.subspan(begin));
  return chunks;
}

nn::Var run_batch(LinkModel& model, std::span<const Event> batch, const DecoupledConfig& cfg,
                  nn::Tape& tape, TimingBreakdown* timing) {
  cfg.validate();
  model.begin_batch(tape);
  std::vector<ViewedQuery> viewed;
  std::vector<Event> queries, updates;

  const auto memory_start = Clock::now();
  for (std::span<const Event> chunk : split_into_memory_batches(batch, cfg.memory_batch_size)) {
    queries.clear();
    updates.clear();
    for (const Event& e : chunk) (is_update(e.kind) ? updates : queries).push_back(e);
    if (!queries.empty()) {
      const std::size_t view = model.extract_view(queries);
      for (const Event& q : queries) viewed.push_back({q, view});
    }
    if (!updates.empty()) model.process_memory_batch(updates);
  }
  const double t_memory = seconds_since(memory_start);

  const auto prediction_start = Clock::now();
  nn::Var scores = viewed.empty() ? tape.constant(nn::Matrix(0, 1)) : model.predict(viewed);
  const double t_prediction = seconds_since(prediction_start);

  if (timing != nullptr) {
    timing->t_memory += t_memory;
    timing->t_prediction += t_prediction;
    timing->events_processed += batch.size();
  }
  return scores;
}

std::vector<double> run_stream(LinkModel& model, std::span<const Event> events,
                               const DecoupledConfig& cfg, TimingBreakdown* timing) {
  cfg.validate();
  std::vector<double> out;
  nn::Tape tape(false);
  for (std::span<const Event> batch : split_into_memory_batches(events, cfg.prediction_batch_size)) {
    tape.clear();
    const nn::Var scores = run_batch(model, batch, cfg, tape, timing);
    const nn::Matrix& v = scores.value();
    out.insert(out.end(), v.data(), v.data() + v.size());
  }
  model.end_batch();
  return out;
}

std::vector<double> sequential_oracle(LinkModel& model, std::span<const Event> events) {
  std::vector<double> out;
  nn::Tape tape(false);
  for (const Event& e : events) {
    tape.clear();
    model.begin_batch(tape);
    const std::span<const Event> one(&e, 1);
    if (is_update(e.kind)) {
      model.process_memory_batch(one);
      continue;
    }
    const ViewedQuery q{e, model.extract_view(one)};
    out.push_back(model.predict(std::span<const ViewedQuery>(&q, 1)).value()(0, 0));
  }
  model.end_batch();
  return out;
}

double speedup_estimate(const TimingBreakdown& t, std::size_t bs_old, std::size_t bs_new) {
  if (bs_old < 1 || bs_new < 1) throw ConfigError("speedup_estimate: batch sizes must be positive");
  const double n = static_cast<double>(bs_new);
  const double o = static_cast<double>(bs_old);
  const double denom = o * t.t_prediction + n * t.t_memory;
  if (!(denom > 0.0)) throw ConfigError("speedup_estimate: timings must be positive");
  return (n * t.t_prediction + n * t.t_memory) / denom;
}

ThroughputResult bench_throughput(LinkModel& model, std::span<const Event> events,
                                  const DecoupledConfig& cfg, std::size_t warmup) {
  if (events.empty()) throw ConfigError("bench_throughput: empty stream");
  model.reset();
  std::size_t split = 0;
  for (std::size_t seen = 0; split < events.size() && seen < warmup; ++split)
    if (is_update(events[split].kind)) ++seen;
  if (split > 0) run_stream(model, events.first(split), cfg);

  const std::span<const Event> timed = events.subspan(split);
  std::size_t updates = 0;
  for (const Event& e : timed) updates += is_update(e.kind) ? 1 : 0;

  ThroughputResult r;
  const auto start = Clock::now();
  run_stream(model, timed, cfg, &r.timing);
  r.wall_seconds = seconds_since(start);
  r.edges_per_sec = r.wall_seconds > 0.0 ? static_cast<double>(updates) / r.wall_seconds : 0.0;
  return r;
}

}  // namespace tempograph
