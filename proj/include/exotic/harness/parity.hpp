#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "exotic/errors.hpp"

namespace exotic::harness {

/// Whether the 15-dimensional sphere Sigma_{2h-1} is odd in bP_16, which
/// happens exactly when h(h-1)/2 is odd. Computed both from that closed
/// form and from h mod 4 in {2, 3}; the two must agree.
inline bool is_odd_bP16(std::int64_t h) {
  const std::int64_t m = ((h % 4) + 4) % 4;
  const bool by_residue = m == 2 || m == 3;
  const std::int64_t t = h * (h - 1) / 2;
  const bool by_binomial = (t % 2) != 0;
  if (by_residue != by_binomial)
    throw std::logic_error("is_odd_bP16: parity formulas disagree at h = " + std::to_string(h));
  return by_residue;
}

struct ParityRow {
  std::int64_t h;
  std::int64_t k;
  bool odd;
};

/// One row per h in [lo, hi], with k = 2h - 1.
inline std::vector<ParityRow> classify_range(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw UsageError("classify_range: empty range " + std::to_string(lo) + ".." + std::to_string(hi));
  if (hi - lo > 10'000'000) throw UsageError("classify_range: range too large");
  std::vector<ParityRow> rows;
  rows.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t h = lo; h <= hi; ++h) rows.push_back({h, 2 * h - 1, is_odd_bP16(h)});
  return rows;
}

}  // namespace exotic::harness
