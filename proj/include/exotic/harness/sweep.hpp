#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "exotic/bundle.hpp"
#include "exotic/harness/report.hpp"
#include "exotic/orbit.hpp"
#include "exotic/random.hpp"
#include "exotic/symmetry.hpp"

namespace exotic::harness {

/// Samples per shard. Shard s of a check always draws from
/// CounterRng(seed, stream_id(check), s), so a worst case can be replayed
/// from (shard, index) alone.
inline constexpr std::size_t kShardSize = 256;

namespace detail {

inline void flatten(std::vector<double>& out, double x) { out.push_back(x); }
inline void flatten(std::vector<double>& out, int x) { out.push_back(x); }
inline void flatten(std::vector<double>& out, const OrbitPoint& p) {
  out.insert(out.end(), {p.x, p.y, p.z});
}
template <std::size_t N>
void flatten(std::vector<double>& out, const Element<N>& x) {
  out.insert(out.end(), x.coeffs().begin(), x.coeffs().end());
}
template <std::size_t N>
void flatten(std::vector<double>& out, const ChartPoint<N>& p) {
  out.push_back(p.chart == Chart::One ? 1.0 : 2.0);
  flatten(out, p.first);
  flatten(out, p.second);
}
template <std::size_t N>
void flatten(std::vector<double>& out, const EquatorPoint<N>& p) {
  flatten(out, p.point());
}
template <std::size_t N>
void flatten(std::vector<double>& out, const SpherePoint<N>& p) {
  flatten(out, p.a());
  flatten(out, p.c());
}

}  // namespace detail

/// Running maximum of one residual with the inputs that produced it.
/// NaN counts as +inf so it can never hide behind a finite value.
class Tracker {
 public:
  template <class... Parts>
  void observe(double residual, const Parts&... inputs) {
    ++count_;
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    if (has_ && !(residual > worst_)) return;
    has_ = true;
    worst_ = residual;
    where_.shard = shard_;
    where_.index = index_;
    where_.inputs.clear();
    (detail::flatten(where_.inputs, inputs), ...);
  }

  void at(std::uint64_t shard, std::uint64_t index) noexcept {
    shard_ = shard;
    index_ = index;
  }

  /// Keeps the other maximum only when strictly larger, so ties resolve to
  /// the earliest shard whatever the thread schedule was.
  void merge(const Tracker& other) {
    count_ += other.count_;
    if (!other.has_) return;
    if (!has_ || other.worst_ > worst_) {
      has_ = true;
      worst_ = other.worst_;
      where_ = other.where_;
    }
  }

  double worst() const noexcept { return has_ ? worst_ : 0.0; }
  std::size_t count() const noexcept { return count_; }
  const Counterexample& where() const noexcept { return where_; }
  bool seen() const noexcept { return has_; }

 private:
  bool has_ = false;
  double worst_ = 0.0;
  std::size_t count_ = 0;
  std::uint64_t shard_ = 0;
  std::uint64_t index_ = 0;
  Counterexample where_;
};

/// Runs body(rng, trackers) once per sample over n samples split into
/// fixed shards, optionally on worker threads, and merges per-shard
/// trackers in shard order.
template <std::size_t K, class Body>
std::array<Tracker, K> sweep(std::uint64_t seed, std::string_view stream, std::size_t n,
                             unsigned threads, Body&& body) {
  const std::size_t shards = (n + kShardSize - 1) / kShardSize;
  const std::uint64_t sid = stream_id(stream);
  std::vector<std::array<Tracker, K>> partial(shards);
  std::vector<std::exception_ptr> failures(shards);

  auto run_one = [&](std::size_t s) {
    CounterRng rng(seed, sid, s);
    auto& t = partial[s];
    const std::size_t begin = s * kShardSize;
    const std::size_t end = std::min(n, begin + kShardSize);
    for (std::size_t i = begin; i < end; ++i) {
      for (auto& tr : t) tr.at(s, i);
      body(rng, t);
    }
  };

  auto run_shard = [&](std::size_t s) noexcept {
    try {
      run_one(s);
    } catch (...) {
      failures[s] = std::current_exception();
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(shards)));
  if (workers <= 1) {
    for (std::size_t s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t s = next++; s < shards; s = next++) run_shard(s);
      });
  }

  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::array<Tracker, K> total;
  for (const auto& p : partial)
    for (std::size_t c = 0; c < K; ++c) total[c].merge(p[c]);
  return total;
}

}  // namespace exotic::harness
