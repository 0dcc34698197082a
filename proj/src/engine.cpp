#include "usblnav/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace usblnav {

FormationConfig SimConfig::formation() const {
  FormationConfig f;
  f.n_asv = n_asv;
  f.r_hf = r_hf;
  f.delta_b = delta_b;
  f.alpha0 = alpha0;
  f.side = side;
  return f;
}

void SimConfig::validate() const {
  if (!(side > 0.0)) throw std::invalid_argument("scenario.L must be > 0");
  if (n_auv < 1) throw std::invalid_argument("scenario.n_auv must be >= 1");
  if (n_asv < 1) throw std::invalid_argument("formation.n_asv must be >= 1");
  if (!(duration >= 0.0)) throw std::invalid_argument("scenario.duration must be >= 0");
  if (!(tick_rate > 0.0) || std::floor(tick_rate) != tick_rate)
    throw std::invalid_argument("scenario.tick_rate must be a positive integer");
  if (timing.tick_rate != tick_rate) throw std::invalid_argument("timing.tick_rate must equal scenario.tick_rate");
  if (!(depth >= 0.0)) throw std::invalid_argument("scenario.depth must be >= 0");
  if (!(track_spacing >= 0.0)) throw std::invalid_argument("scenario.track_spacing must be >= 0");
  if (track_spacing > side / n_auv * (1.0 + 1e-9))
    throw std::invalid_argument("scenario.track_spacing exceeds the strip height");
  if (!(plan_length >= 0.0)) throw std::invalid_argument("scenario.plan_length must be >= 0");
  if (!(asv_jitter >= 0.0)) throw std::invalid_argument("formation.asv_jitter must be >= 0");
  formation().validate();
  noise.validate();
  timing.validate();
  guidance.validate();
  nav.validate();
}

std::size_t MissionReport::total_fixes() const {
  std::size_t n = 0;
  for (const auto& a : auv) n += a.fixes;
  return n;
}

double MissionReport::mean_cte() const {
  if (auv.empty()) return 0.0;
  double s = 0.0;
  for (const auto& a : auv) s += a.mean_cte;
  return s / static_cast<double>(auv.size());
}

double coverage_fraction(std::size_t pings, std::size_t heard) {
  if (pings == 0) return 0.0;
  return static_cast<double>(heard) / static_cast<double>(pings);
}

namespace {

bool inside_square(const Vec2& p, double side) {
  const double h = side / 2.0;
  return std::abs(p.x) <= h && std::abs(p.y) <= h;
}

// Nearest-rank percentile.
double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

struct AuvRuntime {
  StripPlan plan;
  VehicleTruth truth;
  NavState nav;
  std::size_t wp = 0;
  Rng imu_rng;
  Rng depth_rng;
  Vec2 graph_pos;
  double cte_sum = 0.0;
  double err_sum = 0.0;
  Tick last_fix = -1;
  double interval_sum = 0.0;
};

void append_trace(std::string& out, Tick k, std::size_t i, const AuvRuntime& a, double cte) {
  char buf[320];
  const int n = std::snprintf(
      buf, sizeof buf,
      "TRACE tick=%lld auv=%zu true=%.6f,%.6f,%.6f imu=%.6f,%.6f,%.6f fused=%.6f,%.6f,%.6f cte=%.6f\n",
      static_cast<long long>(k), i, a.truth.position.x, a.truth.position.y, a.truth.position.z, a.nav.p_imu.x,
      a.nav.p_imu.y, a.nav.p_imu.z, a.nav.p_fused.x, a.nav.p_fused.y, a.nav.p_fused.z, cte);
  out.append(buf, static_cast<std::size_t>(n));
}

}  // namespace

MissionReport run(const SimConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.n_auv);
  const double dt = 1.0 / cfg.tick_rate;
  const Tick n_ticks = static_cast<Tick>(std::llround(cfg.duration * cfg.tick_rate));

  const double spacing = cfg.track_spacing > 0.0 ? cfg.track_spacing : default_track_spacing(cfg.side, cfg.n_auv);
  const LawnmowerPlan plan = plan_lawnmower(cfg.side, cfg.n_auv, spacing, cfg.depth, cfg.first_leg);

  std::vector<AuvRuntime> auvs(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& a = auvs[i];
    a.plan = truncate_plan(plan.strips[i], cfg.plan_length);
    const Vec2 start = a.plan.waypoints.front();
    const Vec2 next = a.plan.waypoints.size() > 1 ? a.plan.waypoints[1] : start;
    a.truth.position = {start.x, start.y, cfg.depth};
    a.truth.yaw = std::atan2(next.y - start.y, next.x - start.x);
    a.nav.params = cfg.nav;
    a.nav.p_imu = a.truth.position;
    a.nav.p_fused = a.truth.position;
    a.imu_rng = derive_rng(cfg.seed, "imu/" + std::to_string(i));
    a.depth_rng = derive_rng(cfg.seed, "depth/" + std::to_string(i));
    a.graph_pos = start;
  }

  const AsvLayout layout = asv_positions(cfg.formation());
  std::vector<Rng> asv_rng;
  if (cfg.asv_jitter > 0.0)
    for (std::size_t j = 0; j < layout.size(); ++j) asv_rng.push_back(derive_rng(cfg.seed, "asv/" + std::to_string(j)));

  ProtocolParams pp;
  pp.timing = cfg.timing;
  pp.noise = cfg.noise;
  pp.noise.r_max = cfg.r_hf;
  pp.loss = cfg.loss;
  pp.side = cfg.side;
  pp.r_hf = cfg.r_hf;
  pp.contention = cfg.contention;
  pp.pacing = cfg.pacing;
  TdmaProtocol proto(pp, layout, n, cfg.seed, cfg.log_events);

  std::vector<Vec3> truth_pos(n);
  std::vector<Vec2> graph_pos(n);
  std::vector<Vec2> asv_pos = layout.positions;
  auto refresh_positions = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      truth_pos[i] = auvs[i].truth.position;
      graph_pos[i] = cfg.graph_source == GraphSource::kTruth ? truth_pos[i].xy() : auvs[i].graph_pos;
    }
  };

  MissionReport rep;
  rep.auv.resize(n);
  refresh_positions();
  if (cfg.usbl_enabled && n_ticks > 0) proto.start(0, graph_pos);

  Tick k = 0;
  for (; k < n_ticks; ++k) {
    bool all_done = true;
    for (auto& a : auvs) all_done = all_done && a.wp >= a.plan.waypoints.size();
    if (all_done) break;

    std::vector<KinematicInput> inputs(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto& a = auvs[i];
      // 1. guidance
      const Vec2 steer_from = cfg.truth_guidance ? a.truth.position.xy() : a.nav.p_fused.xy();
      const Command cmd = guidance_step(a.truth, steer_from, a.plan, a.wp, cfg.guidance, dt);
      // 2. truth
      const Vec3 before = a.truth.position;
      a.truth = advance_truth(a.truth, cmd, dt);
      rep.auv[i].distance += distance(before, a.truth.position);
      // 3. dead reckoning; on a fix tick p_fused is propagated by apply_fix instead
      inputs[i] = {Vec2{a.truth.speed, 0.0}, a.truth.yaw, dt, a.truth.position.z};
      if (cfg.usbl_enabled && proto.has_due(i, k))
        a.nav = dead_reckon_imu_only(a.nav, inputs[i], a.imu_rng);
      else
        a.nav = dead_reckon_step(a.nav, inputs[i], a.imu_rng);
      // 4. depth
      a.nav = depth_update(a.nav, a.truth.position.z, a.depth_rng);
    }

    if (cfg.usbl_enabled) {
      if (!asv_rng.empty())
        for (std::size_t j = 0; j < layout.size(); ++j)
          asv_pos[j] = layout.positions[j] + Vec2{gaussian(asv_rng[j], cfg.asv_jitter), gaussian(asv_rng[j], cfg.asv_jitter)};
      refresh_positions();
      // 5. protocol
      proto.step(k, truth_pos, graph_pos, asv_pos);
      // 6. fix application
      for (std::size_t i = 0; i < n; ++i) {
        auto due = proto.pop_due(i, k);
        auto& a = auvs[i];
        auto& r = rep.auv[i];
        for (std::size_t m = 0; m < due.size(); ++m) {
          const auto& d = due[m];
          if (d.deliver_tick > k || d.broadcast_tick >= d.deliver_tick || d.ping_tick >= d.broadcast_tick)
            ++rep.causality_violations;
          const NavState prior = m == 0 ? predict(a.nav, inputs[i]) : a.nav;
          r.max_innovation = std::max(r.max_innovation, distance(d.fix.position.xy(), prior.p_fused.xy()));
          a.nav = correct(prior, d.fix, cfg.nav.gamma);
          a.graph_pos = d.fix.position.xy();
          ++r.fixes;
          if (a.last_fix >= 0) {
            const double gap = static_cast<double>(k - a.last_fix) * dt;
            a.interval_sum += gap;
            r.max_fix_interval = std::max(r.max_fix_interval, gap);
          }
          a.last_fix = k;
        }
      }
    }

    // 7. metrics
    for (std::size_t i = 0; i < n; ++i) {
      auto& a = auvs[i];
      auto& r = rep.auv[i];
      const double cte = cross_track_error(a.truth.position.xy(), a.plan);
      const double err = distance(a.nav.p_fused.xy(), a.truth.position.xy());
      a.cte_sum += cte;
      a.err_sum += err;
      r.max_cte = std::max(r.max_cte, cte);
      r.max_est_error = std::max(r.max_est_error, err);
      if (!inside_square(a.nav.p_fused.xy(), cfg.side)) ++r.excursion_ticks;
      if (cfg.trace) append_trace(rep.trace, k, i, a, cte);
    }
  }

  rep.ticks = k;
  rep.sim_time = static_cast<double>(k) * dt;
  const auto& ps = proto.stats();
  for (std::size_t i = 0; i < n; ++i) {
    auto& a = auvs[i];
    auto& r = rep.auv[i];
    if (k > 0) {
      r.mean_cte = a.cte_sum / static_cast<double>(k);
      r.mean_est_error = a.err_sum / static_cast<double>(k);
    }
    r.final_imu_error = distance(a.nav.p_imu.xy(), a.truth.position.xy());
    if (r.fixes > 1) r.mean_fix_interval = a.interval_sum / static_cast<double>(r.fixes - 1);
    if (cfg.usbl_enabled && i < ps.auv.size()) {
      r.pings = ps.auv[i].pings;
      r.heard = ps.auv[i].heard;
      rep.dropped += ps.auv[i].dropped;
    }
    r.coverage = coverage_fraction(r.pings, r.heard);
    r.plan_complete = a.wp >= a.plan.waypoints.size();
  }

  const std::size_t total = rep.total_fixes();
  rep.allocation.assign(n, 0.0);
  if (total > 0)
    for (std::size_t i = 0; i < n; ++i)
      rep.allocation[i] = static_cast<double>(rep.auv[i].fixes) / static_cast<double>(total);
  if (rep.sim_time > 0.0) rep.fix_rate = static_cast<double>(total) / rep.sim_time;

  if (cfg.usbl_enabled) {
    rep.protocol = ps;
    rep.delivered = ps.latencies_s.size();
    if (!ps.latencies_s.empty()) {
      rep.latency_mean = std::accumulate(ps.latencies_s.begin(), ps.latencies_s.end(), 0.0) /
                         static_cast<double>(ps.latencies_s.size());
      rep.latency_p95 = percentile(ps.latencies_s, 0.95);
    }
    rep.event_log = proto.log().text();
  }
  return rep;
}

}  // namespace usblnav
