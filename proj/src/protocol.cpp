#include "usblnav/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace usblnav {

namespace {
// Products like 0.1 s * 30 Hz land a few ulps above the integer.
constexpr double kTickEps = 1e-9;
}  // namespace

void TimingConfig::validate() const {
  if (!(tick_rate > 0.0) || std::floor(tick_rate) != tick_rate)
    throw std::invalid_argument("timing.tick_rate must be a positive integer");
  if (!(ping_duration > 0.0)) throw std::invalid_argument("timing.ping_duration must be > 0");
  if (!(guard_factor_ul > 0.0)) throw std::invalid_argument("timing.guard_factor_ul must be > 0");
  if (!(min_slot_factor_ul > 0.0)) throw std::invalid_argument("timing.min_slot_factor_ul must be > 0");
  if (!(guard_factor_dl > 0.0)) throw std::invalid_argument("timing.guard_factor_dl must be > 0");
  if (!(min_slot_factor_dl > 0.0)) throw std::invalid_argument("timing.min_slot_factor_dl must be > 0");
  if (!(downlink_rate > 0.0)) throw std::invalid_argument("timing.downlink_rate must be > 0");
  if (!(overhead > 0.0)) throw std::invalid_argument("timing.overhead must be > 0");
  if (header_bytes <= 0) throw std::invalid_argument("timing.header_bytes must be > 0");
  if (fix_bytes <= 0) throw std::invalid_argument("timing.fix_bytes must be > 0");
  if (!(r_mf > 0.0)) throw std::invalid_argument("timing.r_mf must be > 0");
  if (!(sound_speed > 0.0)) throw std::invalid_argument("timing.sound_speed must be > 0");
}

double crossing_time(double side, double sound_speed) {
  if (!(side > 0.0)) throw std::invalid_argument("crossing_time: L must be > 0");
  return side / sound_speed;
}

double uplink_slot_duration(double side, double tau_ot_max, const TimingConfig& cfg) {
  const double tc = crossing_time(side, cfg.sound_speed);
  return std::max(cfg.ping_duration + tau_ot_max + cfg.guard_factor_ul * tc, cfg.min_slot_factor_ul * tc);
}

Tick seconds_to_ticks_ceil(double seconds, double tick_rate) {
  return static_cast<Tick>(std::ceil(seconds * tick_rate - kTickEps));
}

Tick next_group_start(Tick k_start, double t_ul, double tick_rate) {
  return k_start + seconds_to_ticks_ceil(t_ul, tick_rate);
}

int payload_bytes(int k_fix, const TimingConfig& cfg) {
  if (k_fix < 0) throw std::invalid_argument("payload_bytes: negative fix count");
  return cfg.header_bytes + k_fix * cfg.fix_bytes;
}

double tx_duration(int n_bytes, const TimingConfig& cfg) {
  if (n_bytes < 0) throw std::invalid_argument("tx_duration: negative byte count");
  return n_bytes * 8.0 * cfg.overhead / cfg.downlink_rate;
}

double downlink_slot_duration(double side, double t_tx, const TimingConfig& cfg) {
  const double tc = crossing_time(side, cfg.sound_speed);
  return std::max(t_tx + cfg.guard_factor_dl * tc, cfg.min_slot_factor_dl * tc);
}

std::optional<Tick> delivery_tick(Tick k_b, double t_tx, double d, const TimingConfig& cfg) {
  if (d < 0.0) throw std::invalid_argument("delivery_tick: negative distance");
  if (d > cfg.r_mf) return std::nullopt;
  return k_b + seconds_to_ticks_ceil(t_tx + d / cfg.sound_speed, cfg.tick_rate);
}

double e2e_latency(Tick k_ping, Tick k_deliver, double tick_rate) {
  if (k_deliver < k_ping) throw std::invalid_argument("e2e_latency: delivery precedes ping");
  return static_cast<double>(k_deliver - k_ping) / tick_rate;
}

RoundSchedule plan_round(int n_groups, Tick start, double slot_duration, double tick_rate,
                         Tick mf_free_tick, std::size_t broadcaster_asv) {
  RoundSchedule s;
  s.broadcaster_asv = broadcaster_asv;
  Tick k = start;
  for (int g = 0; g < n_groups; ++g) {
    s.group_start_ticks.push_back(k);
    s.group_slot_durations.push_back(slot_duration);
    k = next_group_start(k, slot_duration, tick_rate);
  }
  s.uplink_end = k;
  s.broadcast_tick = std::max(k, mf_free_tick);
  return s;
}

// ---------------------------------------------------------------------------

void DeliveryQueue::push(PendingDelivery d) {
  d.seq = next_seq_++;
  heap_.push(std::move(d));
}

std::optional<Tick> DeliveryQueue::next_tick() const {
  if (heap_.empty()) return std::nullopt;
  return heap_.top().deliver_tick;
}

std::vector<PendingDelivery> DeliveryQueue::pop_due(Tick tick) {
  std::vector<PendingDelivery> out;
  while (!heap_.empty() && heap_.top().deliver_tick <= tick) {
    out.push_back(heap_.top());
    heap_.pop();
  }
  return out;
}

// ---------------------------------------------------------------------------

void EventLog::append(const char* buf, int n) {
  text_.append(buf, static_cast<std::size_t>(n));
  ++lines_;
}

void EventLog::ping(Tick k, std::size_t auv, int group) {
  if (!enabled_) return;
  char buf[96];
  const int n = std::snprintf(buf, sizeof buf, "PING tick=%lld auv=%zu group=%d\n",
                              static_cast<long long>(k), auv, group);
  append(buf, n);
}

void EventLog::fix(Tick k, const UsblFix& f) {
  if (!enabled_) return;
  char buf[192];
  const int n = std::snprintf(buf, sizeof buf, "FIX tick=%lld auv=%zu asv=%zu pos=%.6f,%.6f,%.6f var=%.9f\n",
                              static_cast<long long>(k), f.auv_id, f.asv_id, f.position.x, f.position.y,
                              f.position.z, f.horiz_variance);
  append(buf, n);
}

void EventLog::fuse(Tick k, std::size_t auv, std::size_t count) {
  if (!enabled_) return;
  char buf[96];
  const int n = std::snprintf(buf, sizeof buf, "FUSE tick=%lld auv=%zu k=%zu\n", static_cast<long long>(k), auv,
                              count);
  append(buf, n);
}

void EventLog::bcast(Tick k, std::size_t asv, int bytes) {
  if (!enabled_) return;
  char buf[96];
  const int n = std::snprintf(buf, sizeof buf, "BCAST tick=%lld asv=%zu bytes=%d\n", static_cast<long long>(k),
                              asv, bytes);
  append(buf, n);
}

void EventLog::deliver(Tick k, std::size_t auv, double latency_s) {
  if (!enabled_) return;
  char buf[96];
  const int n = std::snprintf(buf, sizeof buf, "DELIVER tick=%lld auv=%zu latency_s=%.6f\n",
                              static_cast<long long>(k), auv, latency_s);
  append(buf, n);
}

void EventLog::drop(Tick k, std::size_t auv, const char* reason) {
  if (!enabled_) return;
  char buf[96];
  const int n = std::snprintf(buf, sizeof buf, "DROP tick=%lld auv=%zu reason=%s\n", static_cast<long long>(k),
                              auv, reason);
  append(buf, n);
}

// ---------------------------------------------------------------------------

TdmaProtocol::TdmaProtocol(ProtocolParams params, AsvLayout layout, std::size_t n_auv, std::uint64_t seed,
                           bool log_events)
    : p_(std::move(params)),
      layout_(std::move(layout)),
      n_auv_(n_auv),
      t_ul_(uplink_slot_duration(p_.side, p_.tau_ot_max(), p_.timing)),
      ul_ticks_(seconds_to_ticks_ceil(t_ul_, p_.timing.tick_rate)),
      queues_(n_auv),
      log_(log_events) {
  p_.timing.validate();
  p_.noise.validate();
  stats_.auv.resize(n_auv);
  loss_rng_.resize(n_auv);
  noise_rng_.resize(n_auv);
  for (std::size_t i = 0; i < n_auv; ++i) {
    for (std::size_t j = 0; j < layout_.size(); ++j) {
      const std::string path = std::to_string(i) + "/" + std::to_string(j);
      loss_rng_[i].push_back(derive_rng(seed, "loss/" + path));
      noise_rng_[i].push_back(derive_rng(seed, "usbl/" + path));
    }
  }
}

Tick TdmaProtocol::downlink_ticks(std::size_t k_fix) const {
  const double t_tx = tx_duration(payload_bytes(static_cast<int>(k_fix), p_.timing), p_.timing);
  return seconds_to_ticks_ceil(downlink_slot_duration(p_.side, t_tx, p_.timing), p_.timing.tick_rate);
}

void TdmaProtocol::rebuild_graph(std::span<const Vec2> graph_positions) {
  graph_ = build_conflict_graph(graph_positions, layout_, p_.r_hf);
  coloring_ = greedy_color(graph_);
  ++stats_.graph_rebuilds;
  if (!is_proper(graph_, coloring_)) ++stats_.improper_colorings;
  if (static_cast<std::size_t>(coloring_.k) > graph_.max_degree() + 1) ++stats_.brooks_violations;
  stats_.max_colors = std::max(stats_.max_colors, coloring_.k);
}

void TdmaProtocol::start(Tick tick0, std::span<const Vec2> graph_positions) {
  rebuild_graph(graph_positions);
  mf_free_ = tick0;
  if (n_auv_ > 0) next_round_start_ = tick0;
}

void TdmaProtocol::begin_round(Tick tick) {
  ActiveRound r;
  r.coloring = coloring_;
  r.graph = graph_;
  r.schedule = plan_round(r.coloring.k, tick, t_ul_, p_.timing.tick_rate, mf_free_,
                          round_counter_ % layout_.size());
  const double tc = crossing_time(p_.side, p_.timing.sound_speed);
  if (t_ul_ < p_.timing.min_slot_factor_ul * tc) ++stats_.ul_slot_violations;
  ++round_counter_;
  ++stats_.rounds;
  round_ = std::move(r);
  next_round_start_.reset();
}

void TdmaProtocol::ping_group(Tick tick, std::span<const Vec3> auv_truth, std::span<const Vec2> asv_truth) {
  auto& r = *round_;
  const int g = static_cast<int>(r.next_group);
  const auto members = r.coloring.group(g);
  const std::size_t contenders = p_.contention == ContentionMode::kFleet ? n_auv_ : members.size();

  AsvLayout live{std::vector<Vec2>(asv_truth.begin(), asv_truth.end())};
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (r.graph.adjacent(members[a], members[b])) ++stats_.schedule_conflicts;
      if (acoustic_conflict(auv_truth[members[a]].xy(), auv_truth[members[b]].xy(), live, p_.r_hf))
        ++stats_.geometric_conflicts;
    }
  }

  std::vector<UsblFix> fixes;
  for (const auto i : members) {
    log_.ping(tick, i, g);
    auto& st = stats_.auv[i];
    ++st.pings;
    bool heard = false;
    fixes.clear();
    for (std::size_t j = 0; j < asv_truth.size(); ++j) {
      const Vec3 asv{asv_truth[j].x, asv_truth[j].y, 0.0};
      if (distance(asv, auv_truth[i]) <= p_.noise.r_max) heard = true;
      auto fix = attempt_fix(asv, auv_truth[i], contenders, p_.noise, p_.loss, loss_rng_[i][j], noise_rng_[i][j]);
      if (!fix) continue;
      fix->auv_id = i;
      fix->asv_id = j;
      fix->measure_tick = tick;
      log_.fix(tick, *fix);
      fixes.push_back(*fix);
    }
    if (heard) ++st.heard;
    if (fixes.empty()) {
      log_.drop(tick, i, heard ? "lost" : "unheard");
      continue;
    }
    FusedFix fused = fuse_fixes(fixes);
    log_.fuse(tick, i, fused.contributing_asv_count);
    ++st.fused;
    r.fixes.push_back(fused);
    r.ping_ticks.push_back(tick);
  }
  ++r.next_group;
}

void TdmaProtocol::finish_round(Tick tick) {
  auto& r = *round_;
  Broadcast b;
  b.ready = tick;
  b.asv = r.schedule.broadcaster_asv;
  b.fixes = std::move(r.fixes);
  b.ping_ticks = std::move(r.ping_ticks);
  mf_queue_.push_back(std::move(b));
  round_.reset();
  round_pending_ = true;
}

void TdmaProtocol::transmit(Tick tick, Broadcast b, std::span<const Vec3> auv_truth,
                            std::span<const Vec2> asv_truth) {
  const int bytes = payload_bytes(static_cast<int>(b.fixes.size()), p_.timing);
  const double t_tx = tx_duration(bytes, p_.timing);
  const double t_dl = downlink_slot_duration(p_.side, t_tx, p_.timing);
  const double tc = crossing_time(p_.side, p_.timing.sound_speed);
  if (t_dl < p_.timing.min_slot_factor_dl * tc) ++stats_.dl_slot_violations;
  if (tick > b.ready) ++stats_.broadcast_waits;

  log_.bcast(tick, b.asv, bytes);
  ++stats_.broadcasts;
  mf_free_ = tick + seconds_to_ticks_ceil(t_dl, p_.timing.tick_rate);
  dl_completions_.push_back(mf_free_);

  const Vec2 tx = asv_truth[b.asv];
  for (std::size_t m = 0; m < b.fixes.size(); ++m) {
    const auto i = b.fixes[m].auv_id;
    const double d = distance(tx, auv_truth[i].xy());
    const auto k_d = delivery_tick(tick, t_tx, d, p_.timing);
    if (!k_d) {
      ++stats_.auv[i].dropped;
      log_.drop(tick, i, "mf_range");
      continue;
    }
    PendingDelivery pd;
    pd.fix = b.fixes[m];
    pd.deliver_tick = *k_d;
    pd.ping_tick = b.ping_ticks[m];
    pd.broadcast_tick = tick;
    queues_[i].push(std::move(pd));
  }
}

void TdmaProtocol::schedule_next_round(Tick tick) {
  round_pending_ = false;
  if (p_.pacing == UplinkPacing::kImmediate) {
    next_round_start_ = tick;
    return;
  }
  // Finish the next uplink no earlier than the MF channel frees up, counting
  // any broadcasts still queued.
  Tick free = mf_free_;
  for (const auto& b : mf_queue_) free = std::max(free, b.ready) + downlink_ticks(b.fixes.size());
  const Tick span = static_cast<Tick>(coloring_.k) * ul_ticks_;
  next_round_start_ = std::max(tick, free - span);
}

void TdmaProtocol::step(Tick tick, std::span<const Vec3> auv_truth, std::span<const Vec2> graph_positions,
                        std::span<const Vec2> asv_truth) {
  // 1. downlink completions trigger a graph rebuild (once per tick)
  const auto done = std::remove_if(dl_completions_.begin(), dl_completions_.end(),
                                   [tick](Tick t) { return t <= tick; });
  if (done != dl_completions_.end()) {
    dl_completions_.erase(done, dl_completions_.end());
    rebuild_graph(graph_positions);
  }

  // 2. round completion hands its fixes to the MF queue
  if (round_ && tick >= round_->schedule.uplink_end) finish_round(tick);

  // 3. MF channel
  while (!mf_queue_.empty() && tick >= std::max(mf_queue_.front().ready, mf_free_)) {
    Broadcast b = std::move(mf_queue_.front());
    mf_queue_.pop_front();
    transmit(tick, std::move(b), auv_truth, asv_truth);
  }
  if (round_pending_) schedule_next_round(tick);

  // 4. round start
  if (!round_ && next_round_start_ && tick >= *next_round_start_) {
    if (coloring_.k == 0) {
      next_round_start_.reset();
    } else {
      begin_round(tick);
    }
  }

  // 5. group pings
  if (round_ && round_->next_group < round_->schedule.group_start_ticks.size() &&
      tick >= round_->schedule.group_start_ticks[round_->next_group])
    ping_group(tick, auv_truth, asv_truth);

  // A round whose last slot ends this very tick cannot occur (slots are >= 1 tick),
  // so round completion is always picked up on a later step.
}

std::vector<PendingDelivery> TdmaProtocol::pop_due(std::size_t auv, Tick tick) {
  auto due = queues_.at(auv).pop_due(tick);
  for (const auto& d : due) {
    const double lat = e2e_latency(d.ping_tick, tick, p_.timing.tick_rate);
    stats_.latencies_s.push_back(lat);
    ++stats_.auv[auv].delivered;
    log_.deliver(tick, auv, lat);
  }
  return due;
}

bool TdmaProtocol::has_due(std::size_t auv, Tick tick) const {
  const auto next = queues_.at(auv).next_tick();
  return next && *next <= tick;
}

}  // namespace usblnav
