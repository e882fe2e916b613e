#pragma once

#include <cstdint>
#include <vector>

#include "gf/problems.hpp"
#include "gf/training.hpp"

namespace gf::tuner {

// Random search over batch size, iteration count, and learning rate
// (log-uniform). Trials are independent trainings with derived seeds;
// the concurrency limit bounds how many run at once and never affects
// the results.
struct SearchSpace {
  std::size_t batch_lo = 1, batch_hi = 512;        // inclusive
  long iters_lo = 1000, iters_hi = 50000;          // inclusive
  double lrate_lo = 1e-4, lrate_hi = 1e-1;         // log-uniform
  int trials = 10;
  int concurrency = 5;

  void validate() const;
};

enum class Objective { FinalLoss, FinalMae };

struct TrialResult {
  int trial_id = 0;
  std::size_t batch_size = 0;
  long iterations = 0;
  double lrate = 0.0;
  double objective = 0.0;
  bool failed = false;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
};

// Hyperparameter draws for a whole study, taken from the master stream
// before any training starts (scheduling can never change what runs).
std::vector<TrialResult> sample_trials(const SearchSpace& space,
                                       std::uint64_t master_seed);

// Returns all trials sorted ascending by objective; failed trials sort
// last. Fully reproducible from the master seed.
std::vector<TrialResult> random_search(const SearchSpace& space,
                                       const problems::ProblemSpec& problem,
                                       const training::TrainConfig& base,
                                       std::uint64_t master_seed,
                                       Objective objective = Objective::FinalLoss);

}  // namespace gf::tuner
