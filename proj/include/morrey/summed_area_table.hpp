#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "morrey/core_types.hpp"

namespace morrey {

/// d-dimensional prefix sums over the grid spanned by the distinct support
/// coordinates of each axis. Cells between support coordinates hold zero, so
/// the table is the bounding-box table with empty rows and columns removed.
/// Box queries take lattice bounds and use 2^d-corner inclusion-exclusion.
template <typename T>
class SummedAreaTable {
 public:
  SummedAreaTable(int d, std::span<const std::pair<LatticePoint, T>> cells,
                  std::size_t max_cells = std::numeric_limits<std::size_t>::max())
      : d_(d), axes_(static_cast<std::size_t>(d)) {
    if (d_ < 1 || d_ > kMaxDim) throw ValidationError("summed-area table dimension out of range");
    for (const auto& [k, v] : cells) {
      for (int a = 0; a < d_; ++a) axes_[a].push_back(k[a]);
    }
    for (auto& axis : axes_) {
      std::sort(axis.begin(), axis.end());
      axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    }
    strides_.assign(static_cast<std::size_t>(d_), 1);
    std::size_t total = 1;
    for (int a = d_ - 1; a >= 0; --a) {
      strides_[a] = total;
      if (total > max_cells / (axes_[a].size() + 1)) throw ValidationError("summed-area table exceeds the cell limit");
      total *= axes_[a].size() + 1;
    }
    cumulative_.assign(total, T(0));

    for (const auto& [k, v] : cells) {
      std::size_t flat = 0;
      for (int a = 0; a < d_; ++a) flat += rank(a, k[a]) * strides_[a];
      cumulative_[flat] += v;
    }
    // One running-sum pass per axis turns point masses into prefix sums.
    for (int a = 0; a < d_; ++a) {
      const std::size_t step = strides_[a];
      const std::size_t extent = axes_[a].size() + 1;
      for (std::size_t flat = 0; flat < total; ++flat) {
        if ((flat / step) % extent != 0) cumulative_[flat] += cumulative_[flat - step];
      }
    }
  }

  int dim() const { return d_; }
  const std::vector<std::int64_t>& axis(int a) const { return axes_[a]; }
  std::size_t cell_count() const { return cumulative_.size(); }

  /// Sum over the closed box [lo, hi].
  T box_sum(std::span<const std::int64_t> lo, std::span<const std::int64_t> hi) const {
    // Per axis, prefix indices: entries with coordinate < lo and <= hi.
    std::size_t below[kMaxDim];
    std::size_t upto[kMaxDim];
    for (int a = 0; a < d_; ++a) {
      const auto& axis = axes_[a];
      below[a] = static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), lo[a]) - axis.begin());
      upto[a] = static_cast<std::size_t>(std::upper_bound(axis.begin(), axis.end(), hi[a]) - axis.begin());
      if (upto[a] <= below[a]) return T(0);
    }
    T sum(0);
    const unsigned corners = 1u << d_;
    for (unsigned mask = 0; mask < corners; ++mask) {
      std::size_t flat = 0;
      bool negative = false;
      bool empty = false;
      for (int a = 0; a < d_; ++a) {
        const bool low = (mask >> a) & 1u;
        const std::size_t idx = low ? below[a] : upto[a];
        if (idx == 0) {
          empty = true;
          break;
        }
        negative ^= low;
        flat += idx * strides_[a];
      }
      if (empty) continue;
      if (negative) {
        sum -= cumulative_[flat];
      } else {
        sum += cumulative_[flat];
      }
    }
    return sum;
  }

  static constexpr int kMaxDim = 16;

 private:
  std::size_t rank(int a, std::int64_t c) const {
    const auto& axis = axes_[a];
    return static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), c) - axis.begin()) + 1;
  }

  int d_;
  std::vector<std::vector<std::int64_t>> axes_;
  std::vector<std::size_t> strides_;
  std::vector<T> cumulative_;
};

}  // namespace morrey
