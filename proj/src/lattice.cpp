#include "llpmatch/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "llpmatch/errors.hpp"

namespace llpmatch {

namespace {

void validate(const LatticeProblem& problem) {
  if (problem.top.size() != problem.initial.size()) {
    throw MalformedProblem("top and initial vectors differ in length");
  }
  if (!problem.forbidden || !problem.advance) {
    throw MalformedProblem("forbidden and advance must both be set");
  }
}

// Computes the advanced value for j and checks strict progress.
Value checked_advance(const LatticeProblem& problem, StateView view, std::size_t j) {
  const Value next = problem.advance(view, j);
  if (!beyond(problem.order, next, view[j])) {
    throw MalformedProblem("advance for index " + std::to_string(j) + " did not move past " +
                           std::to_string(view[j]));
  }
  return next;
}

std::optional<std::size_t> initial_overflow(const LatticeProblem& problem) {
  for (std::size_t j = 0; j < problem.size(); ++j) {
    if (beyond(problem.order, problem.initial[j], problem.top[j])) return j;
  }
  return std::nullopt;
}

LatticeResult run_sequential(const LatticeProblem& problem, const StepObserver& observer) {
  LatticeResult result{problem.initial, std::nullopt, 0};
  StateVector& g = result.state;
  for (std::size_t step = 1;; ++step) {
    auto forbidden = forbidden_indices(problem, g);
    if (forbidden.empty()) return result;

    std::size_t chosen = forbidden.front();
    if (problem.priority) {
      int best = problem.priority(g, chosen);
      for (std::size_t j : forbidden) {
        const int p = problem.priority(g, j);
        if (p < best) {
          best = p;
          chosen = j;
        }
      }
    }
    const Value next = checked_advance(problem, g, chosen);
    if (beyond(problem.order, next, problem.top[chosen])) {
      result.exhausted = chosen;
      return result;
    }
    StepRecord record;
    if (observer) {
      record.step = step;
      record.forbidden = std::move(forbidden);
      record.advanced = {chosen};
      record.before = g;
    }
    g[chosen] = next;
    ++result.advances;
    if (observer) {
      record.after = g;
      observer(record);
    }
  }
}

LatticeResult run_parallel(const LatticeProblem& problem, std::uint64_t seed,
                           const StepObserver& observer) {
  std::mt19937_64 rng(seed);
  LatticeResult result{problem.initial, std::nullopt, 0};
  StateVector& g = result.state;
  for (std::size_t step = 1;; ++step) {
    auto forbidden = forbidden_indices(problem, g);
    if (forbidden.empty()) return result;

    std::vector<std::size_t> chosen = forbidden;
    std::shuffle(chosen.begin(), chosen.end(), rng);
    std::uniform_int_distribution<std::size_t> count(1, chosen.size());
    chosen.resize(count(rng));
    std::sort(chosen.begin(), chosen.end());

    // All advances of a round are computed against the same snapshot.
    StateVector next = g;
    for (std::size_t j : chosen) {
      next[j] = checked_advance(problem, g, j);
      if (beyond(problem.order, next[j], problem.top[j])) {
        result.exhausted = j;
        return result;
      }
    }
    StepRecord record;
    if (observer) {
      record.step = step;
      record.forbidden = std::move(forbidden);
      record.advanced = chosen;
      record.before = g;
      record.after = next;
    }
    g = std::move(next);
    result.advances += chosen.size();
    if (observer) observer(record);
  }
}

LatticeResult run_stale(const LatticeProblem& problem, std::uint64_t seed, std::size_t staleness,
                        const StepObserver& observer) {
  std::mt19937_64 rng(seed);
  LatticeResult result{problem.initial, std::nullopt, 0};
  StateVector& g = result.state;
  // history[d] is the state d updates ago; history[0] == g.
  std::deque<StateVector> history{g};
  for (std::size_t step = 1;; ++step) {
    auto forbidden = forbidden_indices(problem, g);
    if (forbidden.empty()) return result;

    const std::size_t j =
        forbidden[std::uniform_int_distribution<std::size_t>(0, forbidden.size() - 1)(rng)];
    std::size_t age =
        std::uniform_int_distribution<std::size_t>(0, history.size() - 1)(rng);
    // A reader that sees nothing wrong in its stale copy retries on fresher
    // ones; the fresh state is known to be forbidden at j.
    for (;; --age) {
      StateVector view = history[age];
      view[j] = g[j];
      if (age == 0 || problem.forbidden(view, j)) {
        const Value next = checked_advance(problem, view, j);
        if (beyond(problem.order, next, problem.top[j])) {
          result.exhausted = j;
          return result;
        }
        StepRecord record;
        if (observer) {
          record.step = step;
          record.forbidden = forbidden;
          record.advanced = {j};
          record.before = g;
        }
        g[j] = next;
        ++result.advances;
        if (observer) {
          record.after = g;
          observer(record);
        }
        break;
      }
    }
    history.push_front(g);
    if (history.size() > staleness + 1) history.pop_back();
  }
}

LatticeResult run_threaded(const LatticeProblem& problem, std::size_t workers) {
  const std::size_t n = problem.size();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));

  auto shared = std::make_unique<std::atomic<Value>[]>(n);
  for (std::size_t j = 0; j < n; ++j) shared[j].store(problem.initial[j]);

  constexpr std::uint64_t kNever = ~std::uint64_t{0};
  std::atomic<std::uint64_t> version{0};
  auto clean_at = std::make_unique<std::atomic<std::uint64_t>[]>(workers);
  for (std::size_t w = 0; w < workers; ++w) clean_at[w].store(kNever);
  std::atomic<bool> done{false};
  std::atomic<std::size_t> exhausted{kNever};
  std::atomic<std::size_t> advances{0};
  std::atomic<bool> malformed{false};

  auto worker = [&](std::size_t id) {
    StateVector snapshot(n);
    try {
      while (!done.load()) {
        const std::uint64_t seen = version.load();
        bool progressed = false;
        for (std::size_t j = id; j < n && !done.load(); j += workers) {
          for (std::size_t k = 0; k < n; ++k) snapshot[k] = shared[k].load();
          if (!problem.forbidden(snapshot, j)) continue;
          const Value next = checked_advance(problem, snapshot, j);
          if (beyond(problem.order, next, problem.top[j])) {
            std::size_t expected = kNever;
            exhausted.compare_exchange_strong(expected, j);
            done.store(true);
            return;
          }
          // Component j is owned by this worker, so a plain store is the
          // only writer; readers may observe it late.
          shared[j].store(next);
          version.fetch_add(1);
          advances.fetch_add(1);
          progressed = true;
        }
        if (progressed) continue;
        clean_at[id].store(seen);
        bool all_clean = true;
        const std::uint64_t now = version.load();
        for (std::size_t w = 0; w < workers; ++w) {
          if (clean_at[w].load() != now) {
            all_clean = false;
            break;
          }
        }
        if (all_clean) {
          done.store(true);
        } else {
          std::this_thread::yield();
        }
      }
    } catch (const MalformedProblem&) {
      malformed.store(true);
      done.store(true);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker, w);
  for (auto& t : pool) t.join();

  if (malformed.load()) throw MalformedProblem("advance did not make progress in threaded run");

  LatticeResult result;
  result.state.resize(n);
  for (std::size_t j = 0; j < n; ++j) result.state[j] = shared[j].load();
  result.advances = advances.load();
  if (exhausted.load() != kNever) result.exhausted = exhausted.load();
  return result;
}

}  // namespace

std::vector<std::size_t> forbidden_indices(const LatticeProblem& problem, StateView state) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < state.size(); ++j) {
    if (problem.forbidden(state, j)) out.push_back(j);
  }
  return out;
}

LatticeResult solve_lattice(const LatticeProblem& problem, const SolveOptions& options,
                            const StepObserver& observer) {
  validate(problem);
  if (auto j = initial_overflow(problem)) {
    return LatticeResult{problem.initial, *j, 0};
  }
  switch (options.schedule) {
    case Schedule::Sequential:
      return run_sequential(problem, observer);
    case Schedule::Parallel:
      return run_parallel(problem, options.seed, observer);
    case Schedule::Stale:
      return run_stale(problem, options.seed, options.staleness, observer);
    case Schedule::Threaded:
      return run_threaded(problem, options.workers);
  }
  throw MalformedProblem("unknown schedule");
}

}  // namespace llpmatch
