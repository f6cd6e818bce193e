#pragma once

// Deterministic discrete-event simulation of the asynchronous constrained
// stable marriage protocol: an environment process initiates every man,
// men propose and push prerequisite `advance` messages to other men, women
// keep only their best proposer and reject the rest. Channels are reliable
// FIFO queues; a seeded scheduler picks which channel delivers next.
// Dijkstra-Scholten signals detect termination of the diffusing
// computation, after which the environment reads off the matching.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "llpmatch/poset.hpp"
#include "llpmatch/profile.hpp"

namespace llpmatch::sim {

/// Process ids: 0 is the environment, 1..n are men, n+1..2n are women.
using ProcessId = int;
inline constexpr ProcessId kEnvironment = 0;

enum class MessageKind { Initiate, Propose, Reject, Advance, Signal };

const char* to_string(MessageKind kind);

struct Message {
  MessageKind kind = MessageKind::Initiate;
  ProcessId src = 0;
  ProcessId dst = 0;
  /// Propose: proposing man. Reject / Advance: woman. Otherwise unused.
  AgentId payload = -1;
  /// Per-channel sequence number.
  std::uint64_t seq = 0;
  /// Global send order, used by the adversarial scheduler.
  std::uint64_t sent_at = 0;

  bool application() const { return kind != MessageKind::Signal; }
};

// ---------------------------------------------------------------------------
// Dijkstra-Scholten termination detection

enum class DsEventType {
  SentApplication,      ///< process sent an application message
  ReceivedApplication,  ///< process received an application message from peer
  ReceivedSignal,       ///< process received an acknowledgement
  BecamePassive,        ///< process finished handling a message
};

struct DsEvent {
  DsEventType type = DsEventType::BecamePassive;
  ProcessId process = 0;
  ProcessId peer = 0;
};

struct DsEffects {
  /// Signal messages the process must send now.
  std::vector<ProcessId> signal_to;
  bool termination_detected = false;
};

/// Parent pointers and deficits of the diffusing computation. The root is
/// the environment; a non-root process joins the tree on its first
/// application message, acknowledges every later one at once, and leaves
/// (signalling its parent) when passive with zero deficit.
class TerminationLedger {
 public:
  TerminationLedger() = default;
  TerminationLedger(int processes, ProcessId root);

  DsEffects apply(const DsEvent& event);

  bool engaged(ProcessId p) const { return engaged_[p]; }
  std::optional<ProcessId> parent(ProcessId p) const { return parent_[p]; }
  std::int64_t deficit(ProcessId p) const { return deficit_[p]; }
  bool terminated() const { return terminated_; }

 private:
  ProcessId root_ = 0;
  std::vector<bool> engaged_;
  std::vector<std::optional<ProcessId>> parent_;
  std::vector<std::int64_t> deficit_;
  bool started_ = false;
  bool terminated_ = false;
};

// ---------------------------------------------------------------------------

struct Counters {
  std::uint64_t initiate = 0;
  std::uint64_t propose_success = 0;
  std::uint64_t propose_fail = 0;
  std::uint64_t reject = 0;
  std::uint64_t advance = 0;
  std::uint64_t ds_overhead = 0;

  std::uint64_t proposals() const { return propose_success + propose_fail; }
  std::uint64_t application() const { return initiate + proposals() + reject + advance; }
  std::uint64_t total() const { return application() + ds_overhead; }
};

/// application <= 2m + 2n + e and application + signals <= 4m + 4n + 2e,
/// where m is the number of unsuccessful proposals and e the number of
/// cross-man precedence edges. Also requires advance <= e.
bool check_message_bounds(const Counters& counters, int n, std::uint64_t m, std::uint64_t e);

/// key=value lines.
std::string format_counters(const Counters& counters);

enum class SchedulerKind {
  Random,       ///< seeded uniform pick over non-empty channels
  Adversarial,  ///< always deliver the most recently sent head message
};

struct SimOptions {
  std::uint64_t seed = 0;
  SchedulerKind scheduler = SchedulerKind::Random;
  /// Replays the advance handler exactly as first written: propose after
  /// the skip loop even when no skip happened.
  bool literal_advance = false;
  bool record_log = true;
  std::uint64_t max_steps = 10'000'000;
};

struct SimOutcome {
  std::optional<Matching> matching;
  /// Man who announced that no constrained stable marriage exists.
  std::optional<AgentId> exhausted_man;
  ProposalVector ranks;
  Counters counters;
  std::uint64_t cross_edges = 0;
  std::uint64_t steps = 0;
  bool termination_detected = false;
  /// At detection every channel was empty and every process passive.
  bool termination_exact = false;
  /// Deliveries after which some woman's partner got worse (must be 0).
  std::uint64_t woman_regressions = 0;
  /// Ranks visited by each man, in order.
  std::vector<std::vector<Rank>> rank_history;
  std::vector<std::string> log;

  bool bounds_ok(int n) const { return check_message_bounds(counters, n, counters.propose_fail, cross_edges); }
};

class Simulator {
 public:
  /// Requires a strict profile; prerequisite lists are derived from the poset.
  Simulator(const PreferenceProfile& profile, const ConstraintPoset& poset, const SimOptions& options);

  /// Environment sends `initiate` to every man.
  void start();
  /// Delivers one message. Returns false once the run is over (terminated
  /// or aborted). Throws SimulatorStuck if no message is deliverable but
  /// termination has not been detected.
  bool step();
  SimOutcome run();

  bool channels_empty() const { return nonempty_.empty(); }
  std::size_t in_flight() const;
  const SimOutcome& outcome() const { return outcome_; }

 private:
  using ChannelKey = std::pair<ProcessId, ProcessId>;

  ProcessId man_process(AgentId m) const { return 1 + m; }
  ProcessId woman_process(AgentId w) const { return 1 + n_ + w; }
  bool is_man(ProcessId p) const { return p >= 1 && p <= n_; }
  std::string name(ProcessId p) const;
  std::string describe(const Message& message) const;

  void send(ProcessId src, ProcessId dst, MessageKind kind, AgentId payload);
  void deliver(const Message& message);
  void handle_man(AgentId m, const Message& message);
  void handle_woman(AgentId w, const Message& message);

  void send_prerequisites(AgentId m, Rank rank);
  /// Moves man m forward by one rank; false when he is out of choices.
  bool step_rank(AgentId m);
  /// Skips forbidden women, then proposes. False on exhaustion.
  bool settle_and_propose(AgentId m);
  /// First contact (initiate or an early advance): sends prerequisites for
  /// every rank up to the floor. False if already active.
  bool activate(AgentId m);
  void announce_exhausted(AgentId m);
  void finish();

  const PreferenceProfile& profile_;
  const ConstraintPoset& poset_;
  SimOptions options_;
  int n_;
  std::mt19937_64 rng_;

  std::map<ChannelKey, std::deque<Message>> channels_;
  std::map<ChannelKey, std::uint64_t> next_seq_;
  std::set<ChannelKey> nonempty_;
  std::uint64_t sent_counter_ = 0;

  ProposalVector g_;
  std::vector<AgentId> partner_;
  std::vector<bool> active_;
  std::uint64_t proposals_ = 0;
  TerminationLedger ledger_;
  bool started_ = false;
  bool over_ = false;
  std::vector<std::string> delta_;
  SimOutcome outcome_;
};

SimOutcome simulate(const PreferenceProfile& profile, const ConstraintPoset& poset, const SimOptions& options = {});

SimOutcome simulate(const PreferenceProfile& profile, std::span<const Constraint> constraints,
                    const SimOptions& options = {});

}  // namespace llpmatch::sim
