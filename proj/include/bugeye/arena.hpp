#pragma once
// Deterministic 2D arena: differential-drive kinematics with contact
// resolution, a per-column raycast renderer producing each robot's camera
// view, encounter/event bookkeeping, and the two survival-rate metrics.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bugeye/agent.hpp"
#include "bugeye/field.hpp"
#include "bugeye/params.hpp"

namespace bugeye {

struct RobotPose {
  double x = 0.0;        // cm
  double y = 0.0;        // cm
  double heading = 0.0;  // radians; unit direction is (cos h, sin h)
  int id = 0;
};

// Alternating dark/light vertical stripes along the arena perimeter,
// parameterized by arc length from the (0,0) corner. `phase` shifts the
// pattern, giving repetition-to-repetition variety under a fixed geometry.
struct WallTexture {
  double period = 5.0;  // cm per stripe
  int dark = 120;
  int light = 240;
  double phase = 0.0;     // cm
  int base_lum = 0;       // dark skirting strip along the wall base
  double base_height = 2.0;  // cm up from the floor
};

struct ArenaWorld {
  double width = 70.0;   // cm
  double height = 55.0;  // cm
  WallTexture wall_texture;
  int floor_luminance = 180;
  std::vector<RobotPose> robots;
  double time_s = 0.0;
};

// Builds a world from params with n robots placed by the rng: at least two
// centimeters of wall clearance beyond the robot radius, at least 12 cm
// apart, random headings. Throws std::runtime_error when the arena cannot
// fit that many robots.
ArenaWorld make_arena(const Params& p, int n_robots, std::mt19937& rng);

// Renders the viewer's camera: one ray fan across the horizontal field of
// view, walls textured by perimeter arc length, other robots as dark
// cylinders, pinhole vertical extents centered on the horizon row, and
// fractional-coverage antialiasing on every edge. The viewer itself is
// excluded by id, so a pose that is not part of the world works too.
Frame render_pov(const ArenaWorld& world, const RobotPose& viewer,
                 const Params& params);

// Contacts produced while resolving one kinematics step.
struct ContactReport {
  std::vector<std::pair<int, int>> robot_pairs;  // ids, first < second
  std::vector<int> wall_hits;                    // ids of robots on a wall
};

// Advances every robot by its wheel powers over dt_s: exact-arc
// differential-drive integration, then iterative separation of overlapping
// robots and clamping against the walls.
ContactReport step_kinematics(ArenaWorld& world,
                              const std::vector<WheelPowers>& powers,
                              double dt_s, const Params& params);

enum class EventKind { CwR, CwP, ALR, ATR, AP };

std::string to_string(EventKind k);

struct EventRecord {
  EventKind kind = EventKind::CwR;
  double time_s = 0.0;
  int robot_id = 0;
  std::optional<int> other_id;  // empty for wall events
};

// Viewer-centric encounter bookkeeping. Feed it one on_frame per simulation
// tick after kinematics; call finish at the end of the run so every still
// open encounter closes. Closure rules:
//   - contact with the encounter's robot        -> CwR (wall contact -> CwP)
//   - the viewer starts an avoidance maneuver   -> ALR/ATR/AP by stimulus
//   - separation beyond the proximity disc      -> ALR/ATR (drifted apart)
//   - wall time-to-contact recovers             -> AP
// Contacts outside any encounter still log CwR/CwP once per contact episode.
class EncounterTracker {
 public:
  explicit EncounterTracker(const Params& params, int n_robots);

  void on_frame(const ArenaWorld& world,
                const std::vector<bool>& entered_avoiding,
                const ContactReport& contacts);
  void finish(double time_s);

  const std::vector<EventRecord>& events() const { return events_; }

 private:
  struct RobotEncounter {
    bool open = false;
    bool looming = false;  // latched stimulus type
  };
  struct WallEncounter {
    bool open = false;
  };

  void close_robot(int viewer, int other, EventKind kind, double t);
  bool in_fov(const RobotPose& viewer, const RobotPose& other) const;

  Params params_;
  int n_;
  std::vector<RobotEncounter> robot_enc_;   // n*n, viewer-major
  std::vector<WallEncounter> wall_enc_;     // per viewer
  std::vector<double> prev_dist_;           // n*n center distances
  std::vector<double> prev_clearance_;      // per-robot wall clearance
  std::vector<bool> pair_contact_;          // unordered-pair contact episode
  std::vector<bool> wall_contact_;          // per-robot wall contact episode
  std::vector<EventRecord> events_;
  bool primed_ = false;
};

struct ArenaMetrics {
  int cwr = 0;
  int cwp = 0;
  int alr = 0;
  int atr = 0;
  int ap = 0;
  std::optional<double> sr1;  // AP / (AP + CwP) * 100
  std::optional<double> sr2;  // ALR / (ALR + ATR + CwR) * 100
};

ArenaMetrics compute_metrics(const std::vector<EventRecord>& events);

// One sampled trajectory point, for optional logging.
struct TrajectorySample {
  double time_s = 0.0;
  int robot_id = 0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

struct ArenaRunResult {
  ArenaMetrics metrics;
  std::vector<EventRecord> events;
  std::vector<TrajectorySample> trajectories;  // filled when requested
};

// Full closed-loop experiment: n robots running the selected model variant
// for duration_s seconds of simulated time at params.fps. Lockstep order per
// tick: render every view, step every agent, then move every robot — so
// robot iteration order never leaks into the physics. Deterministic for a
// fixed (params, n_robots, duration_s, model).
ArenaRunResult run_arena(const Params& params, int n_robots, double duration_s,
                         ModelVariant model, bool record_trajectories = false);

}  // namespace bugeye
