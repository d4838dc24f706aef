#include "bugeye/arena.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bugeye {

namespace {

// Scene heights in cm. The camera sits halfway up a robot body, so robots
// project symmetrically around the horizon row while walls tower above it.
constexpr double kCameraHeight = 1.5;
constexpr double kWallHeight = 5.0;
constexpr double kRobotHeight = 3.0;
// Floor of the perpendicular distance used for vertical projection; objects
// effectively in contact fill the column anyway.
constexpr double kMinDepth = 0.5;

constexpr double kPi = 3.14159265358979323846;

double wrap_angle(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a < -kPi) a += 2.0 * kPi;
  return a;
}

struct WallHit {
  double t = 0.0;    // ray parameter (= distance for unit directions)
  double arc = 0.0;  // perimeter arc length of the hit point
};

// Casts a ray from a point strictly inside the arena rectangle and returns
// the boundary hit. Arc length runs from corner (0,0) along y=0, then x=w,
// then y=h backwards, then x=0 back to the origin.
WallHit cast_wall_ray(const ArenaWorld& world, double px, double py,
                      double dx, double dy) {
  const double w = world.width;
  const double h = world.height;
  constexpr double kEps = 1e-12;
  double tx = std::numeric_limits<double>::infinity();
  double ty = std::numeric_limits<double>::infinity();
  if (dx > kEps) {
    tx = (w - px) / dx;
  } else if (dx < -kEps) {
    tx = -px / dx;
  }
  if (dy > kEps) {
    ty = (h - py) / dy;
  } else if (dy < -kEps) {
    ty = -py / dy;
  }
  WallHit hit;
  hit.t = std::min(tx, ty);
  const double hx = px + hit.t * dx;
  const double hy = py + hit.t * dy;
  if (ty <= tx) {
    hit.arc = dy > 0.0 ? w + h + (w - hx)  // far wall y = h
                       : hx;               // near wall y = 0
  } else {
    hit.arc = dx > 0.0 ? w + hy                  // right wall x = w
                       : 2.0 * w + h + (h - hy);  // left wall x = 0
  }
  return hit;
}

// Total length of "light" stripe inside [0, s) for a pattern whose first
// half-period is dark.
double light_run_length(double s, double period) {
  const double cycle = 2.0 * period;
  const double k = std::floor(s / cycle);
  const double rem = s - cycle * k;
  return k * period + std::max(0.0, rem - period);
}

// Fraction of the arc interval [s0, s1] covered by light stripes.
double light_fraction(double s0, double s1, const WallTexture& tex) {
  double a = s0 + tex.phase;
  double b = s1 + tex.phase;
  if (a > b) std::swap(a, b);
  if (b - a < 1e-9) {
    const double rem = std::fmod(a, 2.0 * tex.period);
    return rem >= tex.period ? 1.0 : 0.0;
  }
  return (light_run_length(b, tex.period) - light_run_length(a, tex.period)) /
         (b - a);
}

// Coverage of the half-open pixel row r (spanning r +/- 0.5) by the real
// interval [top, bot].
double row_coverage(int r, double top, double bot) {
  const double lo = std::max(top, r - 0.5);
  const double hi = std::min(bot, r + 0.5);
  return std::max(0.0, hi - lo);
}

std::uint8_t mix_lum(double base, double target, double coverage) {
  const double v = base + (target - base) * coverage;
  const double clamped = std::clamp(v, 0.0, 255.0);
  return static_cast<std::uint8_t>(std::lround(clamped));
}

double pair_distance(const RobotPose& a, const RobotPose& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

double wall_clearance(const ArenaWorld& world, const RobotPose& r,
                      double radius) {
  const double c = std::min(std::min(r.x, world.width - r.x),
                            std::min(r.y, world.height - r.y));
  return c - radius;
}

}  // namespace

ArenaWorld make_arena(const Params& p, int n_robots, std::mt19937& rng) {
  if (n_robots < 1) {
    throw std::runtime_error("make_arena: need at least one robot");
  }
  ArenaWorld world;
  world.width = p.arena_w;
  world.height = p.arena_h;
  world.wall_texture =
      WallTexture{p.wall_stripe_period, p.wall_lum_dark, p.wall_lum_light,
                  0.0, p.wall_base_lum, p.wall_base_height};
  world.floor_luminance = p.floor_lum;

  const double radius = p.robot_diameter / 2.0;
  const double margin = radius + 2.0;
  const double min_sep = 12.0;
  std::uniform_real_distribution<double> ux(margin, p.arena_w - margin);
  std::uniform_real_distribution<double> uy(margin, p.arena_h - margin);
  std::uniform_real_distribution<double> uh(-kPi, kPi);

  for (int i = 0; i < n_robots; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
      RobotPose cand;
      cand.x = ux(rng);
      cand.y = uy(rng);
      cand.heading = uh(rng);
      cand.id = i;
      placed = true;
      for (const RobotPose& other : world.robots) {
        if (pair_distance(cand, other) < min_sep) {
          placed = false;
          break;
        }
      }
      if (placed) world.robots.push_back(cand);
    }
    if (!placed) {
      throw std::runtime_error(
          "make_arena: could not place all robots with the required "
          "separation; arena too crowded");
    }
  }
  return world;
}

Frame render_pov(const ArenaWorld& world, const RobotPose& viewer,
                 const Params& params) {
  const int w = params.frame_w;
  const int h = params.frame_h;
  Frame frame;
  frame.w = w;
  frame.h = h;
  frame.px.assign(static_cast<std::size_t>(w) * h,
                  static_cast<std::uint8_t>(world.floor_luminance));

  const double fov = params.fov_deg * kPi / 180.0;
  const double pitch = fov / (w - 1);  // angular width of one column
  const double focal = (w / 2.0) / std::tan(fov / 2.0);
  const double cy = (h - 1) / 2.0;  // horizon row
  const double radius = params.robot_diameter / 2.0;

  // The camera rides the leading rim of the chassis, not the hub: a body
  // the robot is about to touch fills the whole view instead of capping at
  // the hub-to-surface angle.
  const double ex = viewer.x + std::cos(viewer.heading) * radius;
  const double ey = viewer.y + std::sin(viewer.heading) * radius;

  // Walls: per column, a central ray fixes depth and the two column-edge
  // rays bound the stripe footprint, which is box-filtered analytically.
  for (int c = 0; c < w; ++c) {
    const double rel = fov * (static_cast<double>(c) / (w - 1) - 0.5);
    const double ang = viewer.heading + rel;
    const WallHit mid = cast_wall_ray(world, ex, ey,
                                      std::cos(ang), std::sin(ang));
    const WallHit lo = cast_wall_ray(world, ex, ey,
                                     std::cos(ang - pitch / 2.0),
                                     std::sin(ang - pitch / 2.0));
    const WallHit hi = cast_wall_ray(world, ex, ey,
                                     std::cos(ang + pitch / 2.0),
                                     std::sin(ang + pitch / 2.0));
    double s0 = lo.arc;
    double s1 = hi.arc;
    const double perim = 2.0 * (world.width + world.height);
    // A footprint crossing the arc-length origin shows up as a huge jump.
    if (s1 - s0 > perim / 2.0) s0 += perim;
    if (s0 - s1 > perim / 2.0) s1 += perim;

    const double frac = light_fraction(s0, s1, world.wall_texture);
    const double lum = world.wall_texture.dark +
                       (world.wall_texture.light - world.wall_texture.dark) *
                           frac;

    const double depth = std::max(mid.t * std::cos(rel), kMinDepth);
    const double top = cy - focal * (kWallHeight - kCameraHeight) / depth;
    const double bot = cy + focal * kCameraHeight / depth;
    const int r0 = std::max(0, static_cast<int>(std::floor(top - 0.5)));
    const int r1 = std::min(h - 1, static_cast<int>(std::ceil(bot + 0.5)));
    for (int r = r0; r <= r1; ++r) {
      const double cov = row_coverage(r, top, bot);
      if (cov <= 0.0) continue;
      auto& px = frame.px[static_cast<std::size_t>(r) * w + c];
      px = mix_lum(px, lum, cov);
    }
    // Skirting strip: repaint the rows between its upper edge and the floor
    // junction. Both edges share the 1/depth projection, so the strip keeps
    // its world height as the wall nears.
    if (world.wall_texture.base_height > 0.0) {
      const double base_top =
          cy + focal * (kCameraHeight - world.wall_texture.base_height) /
                   depth;
      const int b0 =
          std::max(0, static_cast<int>(std::floor(base_top - 0.5)));
      for (int r = b0; r <= r1; ++r) {
        const double cov = row_coverage(r, base_top, bot);
        if (cov <= 0.0) continue;
        auto& px = frame.px[static_cast<std::size_t>(r) * w + c];
        px = mix_lum(px, world.wall_texture.base_lum, cov);
      }
    }
  }

  // Robots: farthest first so nearer bodies paint over.
  std::vector<const RobotPose*> others;
  for (const RobotPose& r : world.robots) {
    if (r.id != viewer.id) others.push_back(&r);
  }
  const auto eye_distance = [&](const RobotPose& r) {
    return std::hypot(r.x - ex, r.y - ey);
  };
  std::sort(others.begin(), others.end(),
            [&](const RobotPose* a, const RobotPose* b) {
              return eye_distance(*a) > eye_distance(*b);
            });

  for (const RobotPose* other : others) {
    const double dist = eye_distance(*other);
    if (dist < 1e-9) continue;
    const double bearing =
        wrap_angle(std::atan2(other->y - ey, other->x - ex) -
                   viewer.heading);
    const double half_ang =
        dist <= radius ? kPi / 2.0 : std::asin(radius / dist);
    const double b0 = bearing - half_ang;
    const double b1 = bearing + half_ang;
    if (b1 < -fov / 2.0 - pitch || b0 > fov / 2.0 + pitch) continue;

    const double depth = std::max(dist * std::cos(bearing), kMinDepth);
    const double top = cy - focal * (kRobotHeight - kCameraHeight) / depth;
    const double bot = cy + focal * kCameraHeight / depth;
    const int rr0 = std::max(0, static_cast<int>(std::floor(top - 0.5)));
    const int rr1 = std::min(h - 1, static_cast<int>(std::ceil(bot + 0.5)));

    // Columns the body can touch, with one column of slack for the
    // fractional edges.
    const auto col_of = [&](double a) {
      return (a / fov + 0.5) * (w - 1);
    };
    const int c0 = std::max(0, static_cast<int>(std::floor(col_of(b0))) - 1);
    const int c1 = std::min(w - 1, static_cast<int>(std::ceil(col_of(b1))) + 1);
    for (int c = c0; c <= c1; ++c) {
      const double rel = fov * (static_cast<double>(c) / (w - 1) - 0.5);
      const double span_lo = std::max(b0, rel - pitch / 2.0);
      const double span_hi = std::min(b1, rel + pitch / 2.0);
      const double frac_h = std::max(0.0, span_hi - span_lo) / pitch;
      if (frac_h <= 0.0) continue;
      for (int r = rr0; r <= rr1; ++r) {
        const double cov = row_coverage(r, top, bot) * frac_h;
        if (cov <= 0.0) continue;
        auto& px = frame.px[static_cast<std::size_t>(r) * w + c];
        px = mix_lum(px, params.robot_lum, cov);
      }
    }
  }
  return frame;
}

ContactReport step_kinematics(ArenaWorld& world,
                              const std::vector<WheelPowers>& powers,
                              double dt_s, const Params& params) {
  if (powers.size() != world.robots.size()) {
    throw std::runtime_error("step_kinematics: one WheelPowers per robot");
  }
  const double track = params.robot_diameter;
  for (std::size_t i = 0; i < world.robots.size(); ++i) {
    RobotPose& r = world.robots[i];
    const double v = (powers[i].p_r + powers[i].p_l) / 2.0;
    const double omega = (powers[i].p_l - powers[i].p_r) / track;
    if (std::abs(omega) < 1e-12) {
      r.x += v * std::cos(r.heading) * dt_s;
      r.y += v * std::sin(r.heading) * dt_s;
    } else {
      const double h2 = r.heading + omega * dt_s;
      const double radius = v / omega;
      r.x += radius * (std::sin(h2) - std::sin(r.heading));
      r.y -= radius * (std::cos(h2) - std::cos(r.heading));
      r.heading = wrap_angle(h2);
    }
  }

  ContactReport report;
  const double radius = params.robot_diameter / 2.0;
  const double contact_dist = params.robot_diameter;
  const int n = static_cast<int>(world.robots.size());
  for (int pass = 0; pass < 3; ++pass) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        RobotPose& a = world.robots[static_cast<std::size_t>(i)];
        RobotPose& b = world.robots[static_cast<std::size_t>(j)];
        const double d = pair_distance(a, b);
        if (d >= contact_dist - 1e-12) continue;
        double nx;
        double ny;
        if (d > 1e-9) {
          nx = (b.x - a.x) / d;
          ny = (b.y - a.y) / d;
        } else {
          // Coincident centers: separate along a direction fixed by ids so
          // the outcome stays deterministic.
          nx = 1.0;
          ny = 0.0;
        }
        const double push = (contact_dist - d) / 2.0;
        a.x -= nx * push;
        a.y -= ny * push;
        b.x += nx * push;
        b.y += ny * push;
        report.robot_pairs.emplace_back(a.id, b.id);
      }
    }
    for (RobotPose& r : world.robots) {
      const double cx = std::clamp(r.x, radius, world.width - radius);
      const double cyw = std::clamp(r.y, radius, world.height - radius);
      if (cx != r.x || cyw != r.y) {
        r.x = cx;
        r.y = cyw;
        report.wall_hits.push_back(r.id);
      }
    }
  }
  std::sort(report.robot_pairs.begin(), report.robot_pairs.end());
  report.robot_pairs.erase(
      std::unique(report.robot_pairs.begin(), report.robot_pairs.end()),
      report.robot_pairs.end());
  std::sort(report.wall_hits.begin(), report.wall_hits.end());
  report.wall_hits.erase(
      std::unique(report.wall_hits.begin(), report.wall_hits.end()),
      report.wall_hits.end());

  world.time_s += dt_s;
  return report;
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::CwR:
      return "CwR";
    case EventKind::CwP:
      return "CwP";
    case EventKind::ALR:
      return "ALR";
    case EventKind::ATR:
      return "ATR";
    case EventKind::AP:
      return "AP";
  }
  return "unknown";
}

EncounterTracker::EncounterTracker(const Params& params, int n_robots)
    : params_(params),
      n_(n_robots),
      robot_enc_(static_cast<std::size_t>(n_robots) * n_robots),
      wall_enc_(static_cast<std::size_t>(n_robots)),
      prev_dist_(static_cast<std::size_t>(n_robots) * n_robots, 0.0),
      prev_clearance_(static_cast<std::size_t>(n_robots), 0.0),
      pair_contact_(static_cast<std::size_t>(n_robots) * n_robots, false),
      wall_contact_(static_cast<std::size_t>(n_robots), false) {}

void EncounterTracker::close_robot(int viewer, int other, EventKind kind,
                                   double t) {
  RobotEncounter& enc =
      robot_enc_[static_cast<std::size_t>(viewer) * n_ + other];
  enc.open = false;
  enc.looming = false;
  events_.push_back(EventRecord{kind, t, viewer, other});
}

bool EncounterTracker::in_fov(const RobotPose& viewer,
                              const RobotPose& other) const {
  const double bearing = wrap_angle(
      std::atan2(other.y - viewer.y, other.x - viewer.x) - viewer.heading);
  return std::abs(bearing) <= (params_.fov_deg * kPi / 180.0) / 2.0;
}

void EncounterTracker::on_frame(const ArenaWorld& world,
                                const std::vector<bool>& entered_avoiding,
                                const ContactReport& contacts) {
  const double t = world.time_s;
  const double dt_s = 1.0 / params_.fps;
  const double radius = params_.robot_diameter / 2.0;
  const double cone = params_.encounter_cone_deg * kPi / 180.0;

  if (!primed_) {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        prev_dist_[static_cast<std::size_t>(i) * n_ + j] = pair_distance(
            world.robots[static_cast<std::size_t>(i)],
            world.robots[static_cast<std::size_t>(j)]);
      }
      prev_clearance_[static_cast<std::size_t>(i)] = wall_clearance(
          world, world.robots[static_cast<std::size_t>(i)], radius);
    }
    primed_ = true;
  }

  // 1. Contacts: a fresh contact episode ends any open encounter between the
  // pair as a collision; with no encounter open it is still one logged
  // collision, charged to the robot that could see the other.
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      const std::size_t pair_idx = static_cast<std::size_t>(i) * n_ + j;
      const bool touching =
          std::binary_search(contacts.robot_pairs.begin(),
                             contacts.robot_pairs.end(), std::make_pair(i, j));
      if (touching) {
        if (!pair_contact_[pair_idx]) {
          pair_contact_[pair_idx] = true;
          bool closed_any = false;
          if (robot_enc_[static_cast<std::size_t>(i) * n_ + j].open) {
            close_robot(i, j, EventKind::CwR, t);
            closed_any = true;
          }
          if (robot_enc_[static_cast<std::size_t>(j) * n_ + i].open) {
            close_robot(j, i, EventKind::CwR, t);
            closed_any = true;
          }
          if (!closed_any) {
            const RobotPose& a = world.robots[static_cast<std::size_t>(i)];
            const RobotPose& b = world.robots[static_cast<std::size_t>(j)];
            const int viewer = in_fov(a, b) ? i : (in_fov(b, a) ? j : i);
            const int other = viewer == i ? j : i;
            events_.push_back(EventRecord{EventKind::CwR, t, viewer, other});
          }
        }
      } else if (pair_contact_[pair_idx]) {
        const double d =
            pair_distance(world.robots[static_cast<std::size_t>(i)],
                          world.robots[static_cast<std::size_t>(j)]);
        if (d > params_.robot_diameter + 0.5) pair_contact_[pair_idx] = false;
      }
    }
  }
  for (int i = 0; i < n_; ++i) {
    const bool touching = std::binary_search(contacts.wall_hits.begin(),
                                             contacts.wall_hits.end(), i);
    if (touching) {
      if (!wall_contact_[static_cast<std::size_t>(i)]) {
        wall_contact_[static_cast<std::size_t>(i)] = true;
        wall_enc_[static_cast<std::size_t>(i)].open = false;
        events_.push_back(EventRecord{EventKind::CwP, t, i, std::nullopt});
      }
    } else if (wall_contact_[static_cast<std::size_t>(i)]) {
      const double c = wall_clearance(
          world, world.robots[static_cast<std::size_t>(i)], radius);
      if (c > 0.5) wall_contact_[static_cast<std::size_t>(i)] = false;
    }
  }

  // 2. A robot that just committed to an avoidance maneuver resolves all of
  // its open encounters as successful avoidances.
  for (int i = 0; i < n_; ++i) {
    if (!entered_avoiding[static_cast<std::size_t>(i)]) continue;
    for (int j = 0; j < n_; ++j) {
      if (j == i) continue;
      RobotEncounter& enc = robot_enc_[static_cast<std::size_t>(i) * n_ + j];
      if (enc.open) {
        close_robot(i, j, enc.looming ? EventKind::ALR : EventKind::ATR, t);
      }
    }
    WallEncounter& wenc = wall_enc_[static_cast<std::size_t>(i)];
    if (wenc.open) {
      wenc.open = false;
      events_.push_back(EventRecord{EventKind::AP, t, i, std::nullopt});
    }
  }

  // 3. Robot encounters: drift-apart closures, looming latch, openings.
  for (int i = 0; i < n_; ++i) {
    const RobotPose& viewer = world.robots[static_cast<std::size_t>(i)];
    for (int j = 0; j < n_; ++j) {
      if (j == i) continue;
      const RobotPose& other = world.robots[static_cast<std::size_t>(j)];
      const std::size_t idx = static_cast<std::size_t>(i) * n_ + j;
      const double d = pair_distance(viewer, other);
      const double rate = (d - prev_dist_[idx]) / dt_s;
      const double bearing = wrap_angle(
          std::atan2(other.y - viewer.y, other.x - viewer.x) - viewer.heading);
      const bool looming_now =
          rate <= -params_.encounter_range_rate && std::abs(bearing) <= cone;
      RobotEncounter& enc = robot_enc_[idx];
      if (enc.open) {
        if (d > params_.encounter_disc + 1.0) {
          close_robot(i, j, enc.looming ? EventKind::ALR : EventKind::ATR, t);
        } else if (looming_now) {
          enc.looming = true;
        }
      } else if (d <= params_.encounter_disc && in_fov(viewer, other) &&
                 !pair_contact_[static_cast<std::size_t>(std::min(i, j)) * n_ +
                                std::max(i, j)]) {
        enc.open = true;
        enc.looming = looming_now;
      }
    }
  }

  // 4. Wall encounters by displacement-based time to contact.
  for (int i = 0; i < n_; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i);
    const double c =
        wall_clearance(world, world.robots[idx], radius);
    const double approach = (prev_clearance_[idx] - c) / dt_s;
    const double ttc = approach > 1e-9
                           ? c / approach
                           : std::numeric_limits<double>::infinity();
    WallEncounter& wenc = wall_enc_[idx];
    if (wenc.open) {
      if (ttc > 2.0 * params_.encounter_wall_ttc) {
        wenc.open = false;
        events_.push_back(EventRecord{EventKind::AP, t, i, std::nullopt});
      }
    } else if (ttc < params_.encounter_wall_ttc && !wall_contact_[idx]) {
      wenc.open = true;
    }
  }

  // 5. Remember ranges for the next frame's rates.
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      prev_dist_[static_cast<std::size_t>(i) * n_ + j] =
          pair_distance(world.robots[static_cast<std::size_t>(i)],
                        world.robots[static_cast<std::size_t>(j)]);
    }
    prev_clearance_[static_cast<std::size_t>(i)] =
        wall_clearance(world, world.robots[static_cast<std::size_t>(i)],
                       radius);
  }
}

void EncounterTracker::finish(double time_s) {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (j == i) continue;
      RobotEncounter& enc = robot_enc_[static_cast<std::size_t>(i) * n_ + j];
      if (enc.open) {
        close_robot(i, j, enc.looming ? EventKind::ALR : EventKind::ATR,
                    time_s);
      }
    }
    WallEncounter& wenc = wall_enc_[static_cast<std::size_t>(i)];
    if (wenc.open) {
      wenc.open = false;
      events_.push_back(EventRecord{EventKind::AP, time_s, i, std::nullopt});
    }
  }
}

ArenaMetrics compute_metrics(const std::vector<EventRecord>& events) {
  ArenaMetrics m;
  for (const EventRecord& e : events) {
    switch (e.kind) {
      case EventKind::CwR:
        ++m.cwr;
        break;
      case EventKind::CwP:
        ++m.cwp;
        break;
      case EventKind::ALR:
        ++m.alr;
        break;
      case EventKind::ATR:
        ++m.atr;
        break;
      case EventKind::AP:
        ++m.ap;
        break;
    }
  }
  if (m.ap + m.cwp > 0) {
    m.sr1 = 100.0 * m.ap / (m.ap + m.cwp);
  }
  if (m.alr + m.atr + m.cwr > 0) {
    m.sr2 = 100.0 * m.alr / (m.alr + m.atr + m.cwr);
  }
  return m;
}

ArenaRunResult run_arena(const Params& params, int n_robots, double duration_s,
                         ModelVariant model, bool record_trajectories) {
  if (duration_s <= 0.0) {
    throw std::runtime_error("run_arena: duration must be positive");
  }
  std::mt19937 placement_rng(params.rng_seed);
  ArenaWorld world = make_arena(params, n_robots, placement_rng);

  std::vector<RobotAgent> agents;
  agents.reserve(static_cast<std::size_t>(n_robots));
  for (int i = 0; i < n_robots; ++i) {
    // Per-robot streams derived from the run seed; any fixed mixing works,
    // it only has to be stable.
    const std::uint32_t seed =
        params.rng_seed + 1000003u * static_cast<std::uint32_t>(i + 1);
    agents.emplace_back(params, model, seed);
  }

  EncounterTracker tracker(params, n_robots);
  const double dt_s = 1.0 / params.fps;
  const long ticks = std::lround(duration_s * params.fps);

  ArenaRunResult result;
  std::vector<Frame> views(static_cast<std::size_t>(n_robots));
  std::vector<WheelPowers> powers(static_cast<std::size_t>(n_robots));
  std::vector<bool> entered(static_cast<std::size_t>(n_robots));

  for (long tick = 0; tick < ticks; ++tick) {
    for (int i = 0; i < n_robots; ++i) {
      views[static_cast<std::size_t>(i)] =
          render_pov(world, world.robots[static_cast<std::size_t>(i)], params);
    }
    for (int i = 0; i < n_robots; ++i) {
      const AgentStep step =
          agents[static_cast<std::size_t>(i)].step(
              views[static_cast<std::size_t>(i)]);
      powers[static_cast<std::size_t>(i)] = step.wheels;
      entered[static_cast<std::size_t>(i)] = step.entered_avoiding;
    }
    const ContactReport contacts =
        step_kinematics(world, powers, dt_s, params);
    tracker.on_frame(world, entered, contacts);
    if (record_trajectories) {
      for (const RobotPose& r : world.robots) {
        result.trajectories.push_back(
            TrajectorySample{world.time_s, r.id, r.x, r.y, r.heading});
      }
    }
  }
  tracker.finish(world.time_s);
  result.events = tracker.events();
  result.metrics = compute_metrics(result.events);
  return result;
}

}  // namespace bugeye
