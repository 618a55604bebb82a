#pragma once

#include <cstdint>
#include <vector>

#include "morrey/core_types.hpp"

namespace morrey {

enum class ConstantKind { kNj, kJames };

struct SearchOptions {
  ConstantKind kind = ConstantKind::kJames;
  int n = 2;
  /// Side length of the sampling box [0, support_cap)^d.
  int support_cap = 8;
  /// Total objective evaluations across all restarts.
  std::int64_t budget = 1000;
  std::uint64_t seed = 0;
  /// Start the first restart from the witness family (requires p < q).
  bool include_witness = false;
  int threads = 1;
};

struct SearchResult {
  std::vector<Sequence> best_tuple;  // unit-norm members, float entries
  double best_value = 0.0;
  std::int64_t evaluations = 0;
};

/// Multi-start hill climbing over tuples of sparse sequences. Members live on
/// an integer grid in the sampling box and are normalized to unit norm before
/// each evaluation; a move changes one grid value of one member by +-1 and is
/// kept only if the objective improves. A restart begins after 50 consecutive
/// rejected moves. The budget is split over fixed restart slots, each with its
/// own random stream derived from (seed, slot), so the result is the same for
/// any thread count. The objective is evaluated in float arithmetic.
SearchResult search_lower_bound(const SearchOptions& options, const SpaceParams& params);

inline constexpr std::int64_t kEvaluationsPerSlot = 1000;
inline constexpr int kStagnationLimit = 50;

}  // namespace morrey
