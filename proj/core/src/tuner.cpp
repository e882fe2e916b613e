#include "gf/tuner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace gf::tuner {

void SearchSpace::validate() const {
  if (batch_lo < 1 || batch_lo > batch_hi) {
    throw std::invalid_argument("SearchSpace: bad batch range");
  }
  if (iters_lo < 1 || iters_lo > iters_hi) {
    throw std::invalid_argument("SearchSpace: bad iteration range");
  }
  if (!(lrate_lo > 0.0) || !(lrate_lo <= lrate_hi)) {
    throw std::invalid_argument("SearchSpace: bad lrate range");
  }
  if (trials < 1) throw std::invalid_argument("SearchSpace: trials < 1");
  if (concurrency < 1) throw std::invalid_argument("SearchSpace: concurrency < 1");
}

std::vector<TrialResult> sample_trials(const SearchSpace& space,
                                       std::uint64_t master_seed) {
  space.validate();
  std::vector<TrialResult> results(static_cast<std::size_t>(space.trials));
  Rng master(master_seed);
  for (int i = 0; i < space.trials; ++i) {
    auto& r = results[static_cast<std::size_t>(i)];
    r.trial_id = i;
    r.batch_size = space.batch_lo +
                   master.next_u64() % (space.batch_hi - space.batch_lo + 1);
    r.iterations =
        space.iters_lo +
        static_cast<long>(master.next_u64() %
                          static_cast<std::uint64_t>(space.iters_hi -
                                                     space.iters_lo + 1));
    if (space.lrate_lo == space.lrate_hi) {
      r.lrate = space.lrate_lo;
    } else {
      r.lrate = std::exp(master.uniform(std::log(space.lrate_lo),
                                        std::log(space.lrate_hi)));
    }
    r.seed = Rng::derive_seed(master_seed, static_cast<std::uint64_t>(i));
  }
  return results;
}

std::vector<TrialResult> random_search(const SearchSpace& space,
                                       const problems::ProblemSpec& problem,
                                       const training::TrainConfig& base,
                                       std::uint64_t master_seed,
                                       Objective objective) {
  space.validate();
  std::vector<TrialResult> results = sample_trials(space, master_seed);

  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= space.trials) return;
      auto& r = results[static_cast<std::size_t>(i)];
      training::TrainConfig cfg = base;
      cfg.iterations = r.iterations;
      cfg.batch_size = r.batch_size;
      cfg.lrate = r.lrate;
      cfg.seed = r.seed;
      try {
        auto res = training::train(problem, cfg);
        r.objective = objective == Objective::FinalLoss
                          ? res.history.loss.back()
                          : res.history.final_mae;
        r.wall_time_s = res.history.wall_time_s;
        r.failed = !std::isfinite(r.objective);
      } catch (const training::TrainingError&) {
        r.failed = true;
        r.objective = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };

  const int nthreads = std::min(space.concurrency, space.trials);
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(nthreads));
  for (int i = 0; i < nthreads; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  std::stable_sort(results.begin(), results.end(),
                   [](const TrialResult& a, const TrialResult& b) {
                     if (a.failed != b.failed) return !a.failed;
                     return a.objective < b.objective;
                   });
  return results;
}

}  // namespace gf::tuner
