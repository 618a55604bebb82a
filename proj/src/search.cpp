#include "morrey/search.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <random>
#include <string>

#include "morrey/constants.hpp"
#include "morrey/norm.hpp"
#include "morrey/parallel.hpp"
#include "morrey/witness.hpp"

namespace morrey {

namespace {

using GridMember = std::map<LatticePoint, std::int64_t>;
using GridTuple = std::vector<GridMember>;

constexpr double kRoundingSlack = 1e-12;

struct SlotOutcome {
  GridTuple tuple;
  double value = -1.0;
  std::int64_t evaluations = 0;
};

class Objective {
 public:
  Objective(ConstantKind kind, SpaceParams params) : kind_(kind), params_(std::move(params)) {}

  std::vector<Sequence> normalized(const GridTuple& tuple) const {
    std::vector<Sequence> unit;
    unit.reserve(tuple.size());
    for (const auto& member : tuple) {
      Sequence s(params_.d());
      for (const auto& [k, c] : member) s.accumulate(k, Scalar(static_cast<double>(c)));
      const double norm = morrey_norm(s, params_).float_value;
      unit.push_back(s.scaled(Scalar(1.0 / norm)));
    }
    return unit;
  }

  double operator()(const GridTuple& tuple) const {
    const std::vector<Sequence> unit = normalized(tuple);
    const double value =
        kind_ == ConstantKind::kNj ? nj_ratio(unit, params_).squared.value : james_min(unit, params_).value;
    // Both constants are at most n. Overshoot within rounding is clamped;
    // anything larger means a broken norm.
    const auto n = static_cast<double>(tuple.size());
    if (value > n * (1.0 + kRoundingSlack)) throw std::logic_error("objective exceeds n: " + std::to_string(value));
    return std::min(value, n);
  }

 private:
  ConstantKind kind_;
  SpaceParams params_;
};

class Sampler {
 public:
  Sampler(const SearchOptions& options, int d, std::uint64_t slot)
      : n_(options.n), d_(d), cap_(options.support_cap) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(slot), static_cast<std::uint32_t>(slot >> 32)};
    rng_.seed(seq);
  }

  LatticePoint point() {
    std::uniform_int_distribution<std::int64_t> coord(0, cap_ - 1);
    std::vector<std::int64_t> c(static_cast<std::size_t>(d_));
    for (auto& v : c) v = coord(rng_);
    return LatticePoint(std::move(c));
  }

  GridTuple start() {
    std::uniform_int_distribution<int> size(1, cap_);
    std::uniform_int_distribution<std::int64_t> magnitude(1, kStartMagnitude);
    std::bernoulli_distribution negative(0.5);
    GridTuple tuple(static_cast<std::size_t>(n_));
    for (auto& member : tuple) {
      const int points = size(rng_);
      for (int s = 0; s < points; ++s) {
        const std::int64_t m = magnitude(rng_);
        member[point()] = negative(rng_) ? -m : m;
      }
    }
    return tuple;
  }

  // Changes one grid value of one member by +-1; returns false if that would
  // zero out the member.
  bool perturb(GridTuple& tuple) {
    std::uniform_int_distribution<int> member_index(0, n_ - 1);
    std::bernoulli_distribution up(0.5);
    auto& member = tuple[static_cast<std::size_t>(member_index(rng_))];
    const LatticePoint k = point();
    const std::int64_t delta = up(rng_) ? 1 : -1;
    auto it = member.find(k);
    if (it == member.end()) {
      member.emplace(k, delta);
      return true;
    }
    if (it->second + delta == 0) {
      if (member.size() == 1) return false;
      member.erase(it);
      return true;
    }
    it->second += delta;
    return true;
  }

 private:
  static constexpr std::int64_t kStartMagnitude = 4;

  int n_;
  int d_;
  int cap_;
  std::mt19937_64 rng_;
};

GridTuple witness_tuple(int n, const SpaceParams& params) {
  const WitnessFamily family = build_witness(n, params);
  GridTuple tuple;
  for (const auto& member : family.members) {
    GridMember grid;
    for (const auto& [k, v] : member.entries()) grid[k] = static_cast<std::int64_t>(v.approx());
    tuple.push_back(std::move(grid));
  }
  return tuple;
}

SlotOutcome run_slot(const SearchOptions& options, const SpaceParams& params, const Objective& objective,
                     std::size_t slot, std::int64_t budget) {
  Sampler sampler(options, params.d(), slot);
  SlotOutcome best;
  GridTuple current = (slot == 0 && options.include_witness) ? witness_tuple(options.n, params) : sampler.start();
  double current_value = objective(current);
  best.evaluations = 1;
  best.tuple = current;
  best.value = current_value;

  int stagnant = 0;
  while (best.evaluations < budget) {
    if (stagnant >= kStagnationLimit) {
      current = sampler.start();
      current_value = objective(current);
      ++best.evaluations;
      stagnant = 0;
    } else {
      GridTuple candidate = current;
      if (!sampler.perturb(candidate)) {
        ++stagnant;
        continue;
      }
      const double value = objective(candidate);
      ++best.evaluations;
      if (value > current_value) {
        current = std::move(candidate);
        current_value = value;
        stagnant = 0;
      } else {
        ++stagnant;
      }
    }
    if (current_value > best.value) {
      best.value = current_value;
      best.tuple = current;
    }
  }
  return best;
}

}  // namespace

SearchResult search_lower_bound(const SearchOptions& options, const SpaceParams& params) {
  if (options.budget < 1) throw ValidationError("budget must be at least 1");
  if (options.support_cap < 1) throw ValidationError("support cap must be at least 1");
  if (options.n < 2 || options.n > 8) throw ValidationError("search supports 2 <= n <= 8");
  std::int64_t cells = 1;
  for (int a = 0; a < params.d(); ++a) {
    cells *= options.support_cap;
    if (cells > 4096) throw ValidationError("sampling box exceeds 4096 lattice points");
  }
  const SpaceParams float_params = params.with_mode(Mode::kFloat);
  const Objective objective(options.kind, float_params);

  const std::int64_t slots = (options.budget + kEvaluationsPerSlot - 1) / kEvaluationsPerSlot;
  std::vector<SlotOutcome> outcomes(static_cast<std::size_t>(slots));
  parallel_for(outcomes.size(), options.threads, [&](std::size_t slot) {
    const std::int64_t share = options.budget / slots + (static_cast<std::int64_t>(slot) < options.budget % slots ? 1 : 0);
    outcomes[slot] = run_slot(options, float_params, objective, slot, share);
  });

  std::size_t winner = 0;
  SearchResult result;
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    result.evaluations += outcomes[s].evaluations;
    if (outcomes[s].value > outcomes[winner].value) winner = s;
  }
  result.best_value = outcomes[winner].value;
  result.best_tuple = objective.normalized(outcomes[winner].tuple);
  return result;
}

}  // namespace morrey
