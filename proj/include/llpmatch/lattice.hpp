#pragma once

// Generic lattice-linear-predicate fixpoint engine.
//
// A problem is a vector of bounded integer components together with a
// `forbidden(G, j)` predicate and an `advance(G, j)` function. The engine
// repeatedly advances forbidden components until none is forbidden (the
// least feasible vector) or some advance would overshoot `top` (infeasible).
//
// Contract for callers: forbidden must be lattice-linear, i.e. if index j is
// forbidden at G it stays forbidden at every H >= G with H[j] == G[j], and
// advance(G, j) is a valid lower bound for component j at all such H. Under
// that contract every schedule reaches the same fixpoint.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace llpmatch {

using Value = std::int64_t;
using StateVector = std::vector<Value>;
using StateView = std::span<const Value>;

/// Direction in which components move. Descending problems (for example
/// shortest paths starting from an infinity sentinel) run on the
/// order-reversed lattice: `top` is then the smallest admissible value.
enum class Order { Ascending, Descending };

struct LatticeProblem {
  StateVector initial;
  StateVector top;
  Order order = Order::Ascending;
  std::function<bool(StateView, std::size_t)> forbidden;
  std::function<Value(StateView, std::size_t)> advance;
  /// Optional. In sequential mode the forbidden index with the smallest
  /// (priority, index) pair advances first.
  std::function<int(StateView, std::size_t)> priority;

  std::size_t size() const { return initial.size(); }
};

enum class Schedule {
  Sequential,  ///< lowest forbidden index first, one advance per step
  Parallel,    ///< seeded non-empty subset of the forbidden set per round
  Stale,       ///< one index per step, evaluated on a snapshot up to k updates old
  Threaded,    ///< worker threads over disjoint index sets, atomic components
};

struct SolveOptions {
  Schedule schedule = Schedule::Sequential;
  std::uint64_t seed = 0;
  std::size_t staleness = 3;
  std::size_t workers = 4;
};

/// One engine step as seen by an observer. Not reported in Threaded mode.
struct StepRecord {
  std::size_t step = 0;
  std::vector<std::size_t> forbidden;
  std::vector<std::size_t> advanced;
  StateVector before;
  StateVector after;
};

using StepObserver = std::function<void(const StepRecord&)>;

struct LatticeResult {
  /// Fixpoint when feasible; otherwise the state reached before giving up.
  StateVector state;
  /// Index whose advance overshot `top`, when infeasible.
  std::optional<std::size_t> exhausted;
  std::size_t advances = 0;

  bool feasible() const { return !exhausted.has_value(); }
};

/// True when `a` lies strictly beyond `b` in the direction of `order`.
inline bool beyond(Order order, Value a, Value b) {
  return order == Order::Ascending ? a > b : a < b;
}

/// Runs the LLP loop. Throws MalformedProblem when the problem is
/// ill-sized or an advance fails to make strict progress.
LatticeResult solve_lattice(const LatticeProblem& problem, const SolveOptions& options = {},
                            const StepObserver& observer = {});

/// Indices forbidden at `state`, in increasing order.
std::vector<std::size_t> forbidden_indices(const LatticeProblem& problem, StateView state);

}  // namespace llpmatch
