#include "llpmatch/simulator.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "llpmatch/errors.hpp"

namespace llpmatch::sim {

const char* to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::Initiate:
      return "initiate";
    case MessageKind::Propose:
      return "propose";
    case MessageKind::Reject:
      return "reject";
    case MessageKind::Advance:
      return "advance";
    case MessageKind::Signal:
      return "signal";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

TerminationLedger::TerminationLedger(int processes, ProcessId root)
    : root_(root),
      engaged_(static_cast<std::size_t>(processes), false),
      parent_(static_cast<std::size_t>(processes)),
      deficit_(static_cast<std::size_t>(processes), 0) {}

DsEffects TerminationLedger::apply(const DsEvent& event) {
  DsEffects effects;
  const ProcessId p = event.process;
  switch (event.type) {
    case DsEventType::SentApplication:
      ++deficit_[p];
      if (p == root_) started_ = true;
      break;
    case DsEventType::ReceivedApplication:
      if (p != root_ && !engaged_[p]) {
        engaged_[p] = true;
        parent_[p] = event.peer;
      } else {
        effects.signal_to.push_back(event.peer);
      }
      break;
    case DsEventType::ReceivedSignal:
      --deficit_[p];
      break;
    case DsEventType::BecamePassive:
      if (p == root_) {
        if (started_ && deficit_[p] == 0 && !terminated_) {
          terminated_ = true;
          effects.termination_detected = true;
        }
      } else if (engaged_[p] && deficit_[p] == 0) {
        engaged_[p] = false;
        effects.signal_to.push_back(*parent_[p]);
        parent_[p].reset();
      }
      break;
  }
  return effects;
}

// ---------------------------------------------------------------------------

bool check_message_bounds(const Counters& counters, int n, std::uint64_t m, std::uint64_t e) {
  const auto nn = static_cast<std::uint64_t>(n);
  return counters.application() <= 2 * m + 2 * nn + e && counters.total() <= 4 * m + 4 * nn + 2 * e &&
         counters.advance <= e;
}

std::string format_counters(const Counters& c) {
  std::ostringstream out;
  out << "initiate=" << c.initiate << '\n'
      << "propose_success=" << c.propose_success << '\n'
      << "propose_fail=" << c.propose_fail << '\n'
      << "reject=" << c.reject << '\n'
      << "advance=" << c.advance << '\n'
      << "ds_overhead=" << c.ds_overhead << '\n'
      << "application=" << c.application() << '\n'
      << "total=" << c.total() << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

Simulator::Simulator(const PreferenceProfile& profile, const ConstraintPoset& poset, const SimOptions& options)
    : profile_(profile),
      poset_(poset),
      options_(options),
      n_(profile.size()),
      rng_(options.seed),
      g_(poset.initial_vector()),
      partner_(static_cast<std::size_t>(profile.size()), -1),
      ledger_(1 + 2 * profile.size(), kEnvironment) {
  if (!profile.strict()) throw ValidationError("the simulator needs strict preferences");
  if (poset.size() != n_) throw ValidationError("constraint poset does not match the profile size");
  outcome_.cross_edges = poset.edges().size();
  outcome_.rank_history.resize(static_cast<std::size_t>(n_));
  active_.assign(static_cast<std::size_t>(n_), false);
}

std::string Simulator::name(ProcessId p) const {
  if (p == kEnvironment) return "E";
  if (is_man(p)) return "P" + std::to_string(p);
  return "Q" + std::to_string(p - n_);
}

std::string Simulator::describe(const Message& message) const {
  std::string out = to_string(message.kind);
  if (message.kind == MessageKind::Propose || message.kind == MessageKind::Reject ||
      message.kind == MessageKind::Advance) {
    out += "(" + std::to_string(message.payload + 1) + ")";
  }
  return out;
}

std::size_t Simulator::in_flight() const {
  std::size_t total = 0;
  for (const auto& [key, queue] : channels_) total += queue.size();
  return total;
}

void Simulator::send(ProcessId src, ProcessId dst, MessageKind kind, AgentId payload) {
  const ChannelKey key{src, dst};
  Message message{kind, src, dst, payload, next_seq_[key]++, sent_counter_++};
  switch (kind) {
    case MessageKind::Initiate:
      ++outcome_.counters.initiate;
      break;
    case MessageKind::Propose:
      ++proposals_;
      break;
    case MessageKind::Reject:
      ++outcome_.counters.reject;
      break;
    case MessageKind::Advance:
      ++outcome_.counters.advance;
      break;
    case MessageKind::Signal:
      ++outcome_.counters.ds_overhead;
      break;
  }
  if (message.application()) ledger_.apply({DsEventType::SentApplication, src, dst});
  if (options_.record_log) delta_.push_back("+" + describe(message) + "->" + name(dst));
  channels_[key].push_back(message);
  nonempty_.insert(key);
}

void Simulator::start() {
  if (started_) return;
  started_ = true;
  for (AgentId m = 0; m < n_; ++m) send(kEnvironment, man_process(m), MessageKind::Initiate, -1);
  ledger_.apply({DsEventType::BecamePassive, kEnvironment, kEnvironment});
  if (options_.record_log) {
    std::string line = "step=0 start src=E |";
    for (const auto& d : delta_) line += " " + d;
    outcome_.log.push_back(std::move(line));
  }
  delta_.clear();
}

void Simulator::send_prerequisites(AgentId m, Rank rank) {
  for (const auto& event : poset_.prerequisites(m, rank)) {
    send(man_process(m), man_process(event.man), MessageKind::Advance, profile_.man_choice(event.man, event.rank));
  }
}

bool Simulator::step_rank(AgentId m) {
  if (g_[m] >= n_) return false;
  ++g_[m];
  outcome_.rank_history[m].push_back(g_[m]);
  if (options_.record_log) delta_.push_back(name(man_process(m)) + ".g=" + std::to_string(g_[m]));
  send_prerequisites(m, g_[m]);
  return true;
}

bool Simulator::settle_and_propose(AgentId m) {
  while (poset_.forbids(m, profile_.man_choice(m, g_[m]))) {
    // The woman still records the proposal; he moves on without waiting.
    send(man_process(m), woman_process(profile_.man_choice(m, g_[m])), MessageKind::Propose, m);
    if (!step_rank(m)) {
      announce_exhausted(m);
      return false;
    }
  }
  send(man_process(m), woman_process(profile_.man_choice(m, g_[m])), MessageKind::Propose, m);
  return true;
}

bool Simulator::activate(AgentId m) {
  if (active_[m]) return false;
  active_[m] = true;
  outcome_.rank_history[m].push_back(g_[m]);
  for (Rank r = 1; r <= g_[m]; ++r) send_prerequisites(m, r);
  return true;
}

void Simulator::announce_exhausted(AgentId m) {
  outcome_.exhausted_man = m;
  if (options_.record_log) delta_.push_back(name(man_process(m)) + ".announce=no-constrained-stable-marriage");
  over_ = true;
}

void Simulator::handle_man(AgentId m, const Message& message) {
  switch (message.kind) {
    case MessageKind::Initiate:
      if (activate(m)) settle_and_propose(m);
      break;
    case MessageKind::Reject:
      if (profile_.man_choice(m, g_[m]) != message.payload) break;  // stale: already moved on
      if (!step_rank(m)) {
        announce_exhausted(m);
        break;
      }
      settle_and_propose(m);
      break;
    case MessageKind::Advance: {
      const bool fresh = activate(m);
      const Rank target = profile_.man_rank(m, message.payload);
      if (target > g_[m]) {
        while (g_[m] < target) step_rank(m);
        settle_and_propose(m);
      } else if (fresh || options_.literal_advance) {
        settle_and_propose(m);
      }
      break;
    }
    default:
      throw SimulatorStuck("man received unexpected " + std::string(to_string(message.kind)));
  }
}

void Simulator::handle_woman(AgentId w, const Message& message) {
  if (message.kind != MessageKind::Propose) {
    throw SimulatorStuck("woman received unexpected " + std::string(to_string(message.kind)));
  }
  const AgentId j = message.payload;
  const AgentId current = partner_[w];
  if (current == j) return;
  if (current == -1 || profile_.woman_rank(w, j) < profile_.woman_rank(w, current)) {
    if (current != -1) send(woman_process(w), man_process(current), MessageKind::Reject, w);
    partner_[w] = j;
    if (options_.record_log) delta_.push_back(name(woman_process(w)) + ".partner=" + std::to_string(j + 1));
  } else {
    send(woman_process(w), man_process(j), MessageKind::Reject, w);
  }
}

void Simulator::deliver(const Message& message) {
  const ProcessId p = message.dst;
  if (message.application()) {
    for (ProcessId to : ledger_.apply({DsEventType::ReceivedApplication, p, message.src}).signal_to) {
      send(p, to, MessageKind::Signal, -1);
    }
    if (p == kEnvironment) throw SimulatorStuck("environment received an application message");
    if (is_man(p)) {
      handle_man(p - 1, message);
    } else {
      const AgentId w = p - 1 - n_;
      const AgentId before = partner_[w];
      handle_woman(w, message);
      const AgentId after = partner_[w];
      if (before != -1 && after != before &&
          (after == -1 || profile_.woman_rank(w, after) >= profile_.woman_rank(w, before))) {
        ++outcome_.woman_regressions;
      }
    }
    if (over_) return;
  } else {
    ledger_.apply({DsEventType::ReceivedSignal, p, message.src});
  }
  const auto effects = ledger_.apply({DsEventType::BecamePassive, p, p});
  for (ProcessId to : effects.signal_to) send(p, to, MessageKind::Signal, -1);
  if (effects.termination_detected) finish();
}

void Simulator::finish() {
  over_ = true;
  outcome_.termination_detected = true;
  outcome_.termination_exact = channels_empty();
  Matching matching(n_);
  for (AgentId m = 0; m < n_; ++m) {
    const AgentId w = profile_.man_choice(m, g_[m]);
    if (partner_[w] != m) {
      throw SimulatorStuck("termination detected but " + name(woman_process(w)) + " does not hold " +
                           name(man_process(m)));
    }
    matching.assign(m, w);
  }
  outcome_.matching = std::move(matching);
}

bool Simulator::step() {
  if (!started_) start();
  if (over_) return false;
  if (nonempty_.empty()) throw SimulatorStuck("no deliverable message but termination not detected");

  auto chosen = nonempty_.begin();
  if (options_.scheduler == SchedulerKind::Random) {
    std::uniform_int_distribution<std::size_t> pick(0, nonempty_.size() - 1);
    std::advance(chosen, static_cast<std::ptrdiff_t>(pick(rng_)));
  } else {
    std::uint64_t newest = 0;
    for (auto it = nonempty_.begin(); it != nonempty_.end(); ++it) {
      const auto sent = channels_[*it].front().sent_at;
      if (it == nonempty_.begin() || sent > newest) {
        newest = sent;
        chosen = it;
      }
    }
  }
  const ChannelKey key = *chosen;
  auto& queue = channels_[key];
  const Message message = queue.front();
  queue.pop_front();
  if (queue.empty()) nonempty_.erase(key);

  ++outcome_.steps;
  delta_.clear();
  deliver(message);
  if (options_.record_log) {
    std::string line = "step=" + std::to_string(outcome_.steps) + " deliver " + describe(message) +
                       " src=" + name(message.src) + " dst=" + name(message.dst) + " |";
    if (delta_.empty()) {
      line += " -";
    } else {
      for (const auto& d : delta_) line += " " + d;
    }
    outcome_.log.push_back(std::move(line));
  }
  if (outcome_.steps >= options_.max_steps && !over_) {
    throw SimulatorStuck("step limit reached");
  }
  return !over_;
}

SimOutcome Simulator::run() {
  start();
  while (step()) {
  }
  outcome_.ranks = g_;
  std::uint64_t successful = 0;
  for (AgentId m = 0; m < n_; ++m) {
    if (partner_[profile_.man_choice(m, g_[m])] == m) ++successful;
  }
  outcome_.counters.propose_success = successful;
  outcome_.counters.propose_fail = proposals_ - successful;
  return outcome_;
}

SimOutcome simulate(const PreferenceProfile& profile, const ConstraintPoset& poset, const SimOptions& options) {
  Simulator simulator(profile, poset, options);
  return simulator.run();
}

SimOutcome simulate(const PreferenceProfile& profile, std::span<const Constraint> constraints,
                    const SimOptions& options) {
  if (!profile.strict()) throw ValidationError("the simulator needs strict preferences");
  const auto poset = compile_constraints(profile, constraints);
  return simulate(profile, poset, options);
}

}  // namespace llpmatch::sim
