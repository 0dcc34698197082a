#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "usblnav/acoustic.hpp"
#include "usblnav/conflict.hpp"
#include "usblnav/formation.hpp"
#include "usblnav/geometry.hpp"
#include "usblnav/rng.hpp"

namespace usblnav {

/// Two-band protocol timing constants.
struct TimingConfig {
  double tick_rate = 30.0;         ///< f_t [Hz], integer valued
  double ping_duration = 0.010;    ///< T_P [s]
  double guard_factor_ul = 0.5;
  double min_slot_factor_ul = 2.5;
  double guard_factor_dl = 1.25;
  double min_slot_factor_dl = 10.0;
  double downlink_rate = 2000.0;   ///< R_DL [bit/s]
  double overhead = 2.0;           ///< Lambda
  int header_bytes = 8;
  int fix_bytes = 16;
  double r_mf = 100.0;             ///< MF downlink range [m]
  double sound_speed = kSoundSpeed;

  void validate() const;
};

/// Acoustic crossing time of the survey, L / c.
double crossing_time(double side, double sound_speed = kSoundSpeed);

/// max(T_P + tau_max + g_ul * t_C, m_ul * t_C).
double uplink_slot_duration(double side, double tau_ot_max, const TimingConfig& cfg);

/// k + ceil(t_ul * f_t), robust to binary round-off of exact products.
Tick next_group_start(Tick k_start, double t_ul, double tick_rate);

/// Seconds to whole ticks, rounding up.
Tick seconds_to_ticks_ceil(double seconds, double tick_rate);

int payload_bytes(int k_fix, const TimingConfig& cfg);
double tx_duration(int n_bytes, const TimingConfig& cfg);

/// max(t_tx + g_dl * t_C, m_dl * t_C).
double downlink_slot_duration(double side, double t_tx, const TimingConfig& cfg);

/// Arrival tick of a broadcast at horizontal distance d; empty beyond r_mf.
std::optional<Tick> delivery_tick(Tick k_b, double t_tx, double d, const TimingConfig& cfg);

/// (k_deliver - k_ping) / f_t; throws std::invalid_argument on a causality violation.
double e2e_latency(Tick k_ping, Tick k_deliver, double tick_rate);

/// Uplink timing of one round: one slot per colour group, back to back.
struct RoundSchedule {
  std::vector<Tick> group_start_ticks;
  std::vector<double> group_slot_durations;
  Tick uplink_end = 0;       ///< first tick after the final slot
  Tick broadcast_tick = 0;   ///< MF transmission start (>= uplink_end)
  std::size_t broadcaster_asv = 0;
};

/// Schedules `n_groups` slots from `start`. The broadcast is placed at
/// max(uplink end, mf_free_tick).
RoundSchedule plan_round(int n_groups, Tick start, double slot_duration, double tick_rate,
                         Tick mf_free_tick, std::size_t broadcaster_asv);

struct PendingDelivery {
  FusedFix fix;
  Tick deliver_tick = 0;
  Tick ping_tick = 0;
  Tick broadcast_tick = 0;
  std::uint64_t seq = 0;  ///< tie-break for equal delivery ticks
};

/// Per-AUV min-heap keyed on delivery tick.
class DeliveryQueue {
 public:
  void push(PendingDelivery d);
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  std::optional<Tick> next_tick() const;
  /// Removes and returns every delivery with deliver_tick <= tick, in order.
  std::vector<PendingDelivery> pop_due(Tick tick);

 private:
  struct Later {
    bool operator()(const PendingDelivery& a, const PendingDelivery& b) const {
      return a.deliver_tick != b.deliver_tick ? a.deliver_tick > b.deliver_tick : a.seq > b.seq;
    }
  };
  std::priority_queue<PendingDelivery, std::vector<PendingDelivery>, Later> heap_;
  std::uint64_t next_seq_ = 0;
};

/// Line-delimited protocol record sink. Record layout:
///   PING tick=<k> auv=<i> group=<g>
///   FIX tick=<k> auv=<i> asv=<j> pos=<x>,<y>,<z> var=<v>
///   FUSE tick=<k> auv=<i> k=<K>
///   BCAST tick=<k> asv=<j> bytes=<n>
///   DELIVER tick=<k> auv=<i> latency_s=<s>
///   DROP tick=<k> auv=<i> reason=<unheard|lost|mf_range>
class EventLog {
 public:
  explicit EventLog(bool enabled = true) : enabled_(enabled) {}

  bool enabled() const { return enabled_; }
  const std::string& text() const { return text_; }
  std::size_t lines() const { return lines_; }

  void ping(Tick k, std::size_t auv, int group);
  void fix(Tick k, const UsblFix& f);
  void fuse(Tick k, std::size_t auv, std::size_t count);
  void bcast(Tick k, std::size_t asv, int bytes);
  void deliver(Tick k, std::size_t auv, double latency_s);
  void drop(Tick k, std::size_t auv, const char* reason);

 private:
  void append(const char* buf, int n);
  bool enabled_;
  std::string text_;
  std::size_t lines_ = 0;
};

/// Which contention count feeds the loss model's collision term.
enum class ContentionMode { kFleet, kGroup };

/// How the next uplink round is timed relative to the MF channel.
enum class UplinkPacing {
  kMfPaced,    ///< start late enough that the round's broadcast never queues
  kImmediate,  ///< start right after the previous uplink; broadcasts may queue
};

struct ProtocolParams {
  TimingConfig timing;
  UsblNoiseConfig noise;
  LossModelCoefficients loss;
  double side = 60.0;
  double r_hf = 50.0;
  ContentionMode contention = ContentionMode::kFleet;
  UplinkPacing pacing = UplinkPacing::kMfPaced;

  double tau_ot_max() const { return r_hf / timing.sound_speed; }
};

struct AuvProtocolStats {
  std::size_t pings = 0;
  std::size_t heard = 0;      ///< pings within HF range of at least one ASV
  std::size_t fused = 0;      ///< pings that produced at least one fix
  std::size_t dropped = 0;    ///< fused fixes not delivered (MF range)
  std::size_t delivered = 0;
};

struct ProtocolStats {
  std::vector<AuvProtocolStats> auv;
  std::vector<double> latencies_s;
  std::size_t rounds = 0;
  std::size_t broadcasts = 0;
  std::size_t graph_rebuilds = 0;
  int max_colors = 0;
  std::size_t improper_colorings = 0;     ///< must stay 0
  std::size_t brooks_violations = 0;      ///< k > max degree + 1; must stay 0
  std::size_t schedule_conflicts = 0;     ///< same-slot pings adjacent in the graph in force; must stay 0
  std::size_t geometric_conflicts = 0;    ///< same-slot pairs sharing an ASV at ping time (stale graph)
  std::size_t ul_slot_violations = 0;     ///< slots shorter than the minimum; must stay 0
  std::size_t dl_slot_violations = 0;
  std::size_t broadcast_waits = 0;        ///< broadcasts that queued behind the MF channel
};

/// Deterministic TDMA state machine for one run. Call `step` once per tick in
/// increasing order, then drain deliveries with `pop_due`.
class TdmaProtocol {
 public:
  TdmaProtocol(ProtocolParams params, AsvLayout layout, std::size_t n_auv, std::uint64_t seed,
               bool log_events = true);

  /// Builds the initial graph/colouring and schedules the first round at `tick0`.
  void start(Tick tick0, std::span<const Vec2> graph_positions);

  /// Runs every protocol event due at `tick`: downlink completions (graph
  /// rebuild), round completion (broadcast), round start, and group pings.
  /// `asv_truth` carries the ASVs' current 2D positions.
  void step(Tick tick, std::span<const Vec3> auv_truth, std::span<const Vec2> graph_positions,
            std::span<const Vec2> asv_truth);

  /// Deliveries for `auv` due at or before `tick`, in delivery order. Logs DELIVER.
  std::vector<PendingDelivery> pop_due(std::size_t auv, Tick tick);
  bool has_due(std::size_t auv, Tick tick) const;

  const ProtocolStats& stats() const { return stats_; }
  const EventLog& log() const { return log_; }
  const Coloring& coloring() const { return coloring_; }
  const ConflictGraph& graph() const { return graph_; }
  const AsvLayout& layout() const { return layout_; }
  double uplink_slot() const { return t_ul_; }
  Tick uplink_slot_ticks() const { return ul_ticks_; }

 private:
  struct ActiveRound {
    RoundSchedule schedule;
    Coloring coloring;
    ConflictGraph graph;
    std::size_t next_group = 0;
    std::vector<FusedFix> fixes;
    std::vector<Tick> ping_ticks;
  };
  struct Broadcast {
    Tick ready = 0;
    std::size_t asv = 0;
    std::vector<FusedFix> fixes;
    std::vector<Tick> ping_ticks;
  };

  void rebuild_graph(std::span<const Vec2> graph_positions);
  void begin_round(Tick tick);
  void ping_group(Tick tick, std::span<const Vec3> auv_truth, std::span<const Vec2> asv_truth);
  void finish_round(Tick tick);
  void transmit(Tick tick, Broadcast b, std::span<const Vec3> auv_truth, std::span<const Vec2> asv_truth);
  void schedule_next_round(Tick tick);
  Tick downlink_ticks(std::size_t k_fix) const;

  ProtocolParams p_;
  AsvLayout layout_;
  std::size_t n_auv_;
  double t_ul_;
  Tick ul_ticks_;

  ConflictGraph graph_;
  Coloring coloring_;
  std::optional<ActiveRound> round_;
  std::optional<Tick> next_round_start_;
  bool round_pending_ = false;
  std::deque<Broadcast> mf_queue_;
  Tick mf_free_ = 0;
  std::vector<Tick> dl_completions_;
  std::size_t round_counter_ = 0;

  std::vector<DeliveryQueue> queues_;
  std::vector<std::vector<Rng>> loss_rng_;
  std::vector<std::vector<Rng>> noise_rng_;
  ProtocolStats stats_;
  EventLog log_;
};

}  // namespace usblnav
