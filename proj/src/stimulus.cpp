#include "bugeye/stimulus.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bugeye {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The stimulus stage: viewer parked a little inside the left wall, facing
// the long axis, leaving start_dist of clear runway ahead.
RobotPose stage_viewer(const Params& p) {
  RobotPose viewer;
  viewer.x = 15.0;
  viewer.y = p.arena_h / 2.0;
  viewer.heading = 0.0;
  viewer.id = -1;  // not part of the world's robot list
  return viewer;
}

ArenaWorld stage_world(const Params& p, std::uint32_t seed) {
  ArenaWorld world;
  world.width = p.arena_w;
  world.height = p.arena_h;
  world.floor_luminance = p.floor_lum;
  world.wall_texture = WallTexture{p.wall_stripe_period, p.wall_lum_dark,
                                   p.wall_lum_light, 0.0, p.wall_base_lum,
                                   p.wall_base_height};
  std::mt19937 rng(seed);
  world.wall_texture.phase = std::uniform_real_distribution<double>(
      0.0, 2.0 * p.wall_stripe_period)(rng);
  world.robots.push_back(RobotPose{0.0, 0.0, 0.0, 0});  // the target
  return world;
}

bool target_visible(const RobotPose& viewer, const RobotPose& target,
                    const Params& p) {
  const double dist = std::hypot(target.x - viewer.x, target.y - viewer.y);
  const double radius = p.robot_diameter / 2.0;
  if (dist <= radius) return true;
  double bearing = std::atan2(target.y - viewer.y, target.x - viewer.x) -
                   viewer.heading;
  while (bearing > kPi) bearing -= 2.0 * kPi;
  while (bearing < -kPi) bearing += 2.0 * kPi;
  const double half_ang = std::asin(std::min(1.0, radius / dist));
  const double half_fov = (p.fov_deg * kPi / 180.0) / 2.0;
  return std::abs(bearing) <= half_fov + half_ang;
}

// Renders a straight-line run of the target from `from` toward `to` at the
// course speed, stopping when the remaining distance is covered.
Course render_line(const CourseSpec& spec, const Params& params,
                   double from_x, double from_y, double to_x, double to_y,
                   double stop_dist_to_viewer) {
  Course course;
  course.spec = spec;
  course.viewer = stage_viewer(params);
  ArenaWorld world = stage_world(params, spec.seed);

  const double len = std::hypot(to_x - from_x, to_y - from_y);
  const double ux = (to_x - from_x) / len;
  const double uy = (to_y - from_y) / len;
  const double step = spec.speed_cm_s / params.fps;

  for (double s = 0.0; s <= len + 1e-9; s += step) {
    RobotPose& target = world.robots[0];
    target.x = from_x + ux * s;
    target.y = from_y + uy * s;
    const double dist = std::hypot(target.x - course.viewer.x,
                                   target.y - course.viewer.y);
    if (stop_dist_to_viewer > 0.0 && dist < stop_dist_to_viewer - 1e-9) break;
    course.frames.push_back(render_pov(world, course.viewer, params));
    course.target.push_back(
        TargetSample{dist, target_visible(course.viewer, target, params)});
  }
  return course;
}

// Renders a constant-range crossing: the target rides an arc centred on the
// viewer, so its distance never changes and only its bearing sweeps. A
// positive sweep direction moves the target toward larger image columns.
Course render_arc(const CourseSpec& spec, const Params& params,
                  double range, double bearing_from, double bearing_to) {
  Course course;
  course.spec = spec;
  course.viewer = stage_viewer(params);
  ArenaWorld world = stage_world(params, spec.seed);

  const double dir = bearing_to >= bearing_from ? 1.0 : -1.0;
  const double step = spec.speed_cm_s / params.fps / range;  // radians/frame
  const int nframes =
      static_cast<int>(std::abs(bearing_to - bearing_from) / step) + 1;

  for (int k = 0; k < nframes; ++k) {
    const double a = bearing_from + dir * step * k;
    RobotPose& target = world.robots[0];
    target.x = course.viewer.x + range * std::cos(course.viewer.heading + a);
    target.y = course.viewer.y + range * std::sin(course.viewer.heading + a);
    course.frames.push_back(render_pov(world, course.viewer, params));
    course.target.push_back(
        TargetSample{range, target_visible(course.viewer, target, params)});
  }
  return course;
}

Course mirror_course(Course c, CourseKind new_kind) {
  c.spec.kind = new_kind;
  for (Frame& f : c.frames) f = mirror_h(f);
  return c;
}

Course reverse_course(Course c, CourseKind new_kind) {
  c.spec.kind = new_kind;
  std::reverse(c.frames.begin(), c.frames.end());
  std::reverse(c.target.begin(), c.target.end());
  return c;
}

}  // namespace

CourseKind parse_course_kind(const std::string& name) {
  if (name == "looming") return CourseKind::Looming;
  if (name == "recession") return CourseKind::Recession;
  if (name == "trans_r") return CourseKind::TransR;
  if (name == "trans_l") return CourseKind::TransL;
  if (name == "angular") return CourseKind::Angular;
  throw std::runtime_error(
      "unknown course kind '" + name +
      "' (expected looming, recession, trans_r, trans_l, or angular)");
}

std::string to_string(CourseKind k) {
  switch (k) {
    case CourseKind::Looming:
      return "looming";
    case CourseKind::Recession:
      return "recession";
    case CourseKind::TransR:
      return "trans_r";
    case CourseKind::TransL:
      return "trans_l";
    case CourseKind::Angular:
      return "angular";
  }
  return "unknown";
}

Course gen_course(const CourseSpec& spec, const Params& params) {
  if (spec.speed_cm_s <= 0.0) {
    throw std::runtime_error("gen_course: speed must be positive");
  }
  const RobotPose viewer = stage_viewer(params);
  const double contact = params.robot_diameter;  // center gap at body contact

  switch (spec.kind) {
    case CourseKind::Looming: {
      // Head-on: straight down the optical axis until the bodies touch.
      const double x0 = viewer.x + spec.start_dist;
      if (x0 + params.robot_diameter / 2.0 >= params.arena_w) {
        throw std::runtime_error(
            "gen_course: start distance places the target outside the arena");
      }
      return render_line(spec, params, x0, viewer.y, viewer.x, viewer.y,
                         contact);
    }
    case CourseKind::Recession: {
      CourseSpec fwd = spec;
      fwd.kind = CourseKind::Looming;
      return reverse_course(gen_course(fwd, params), CourseKind::Recession);
    }
    case CourseKind::TransR: {
      // Constant-range crossing, sweeping a bit past both field-of-view
      // edges so the target enters and leaves cleanly. Image-rightward means
      // increasing bearing, which is the +y side for a viewer heading +x.
      const double sweep = 50.0 * kPi / 180.0;
      return render_arc(spec, params, spec.pass_range, -sweep, sweep);
    }
    case CourseKind::TransL: {
      CourseSpec fwd = spec;
      fwd.kind = CourseKind::TransR;
      return mirror_course(gen_course(fwd, params), CourseKind::TransL);
    }
    case CourseKind::Angular: {
      if (std::abs(spec.angle_deg) > 35.0) {
        throw std::runtime_error(
            "gen_course: angular approach must start inside the field of "
            "view (|angle| <= 35 degrees)");
      }
      const double a = spec.angle_deg * kPi / 180.0;
      const double x0 = viewer.x + spec.start_dist * std::cos(a);
      const double y0 = viewer.y + spec.start_dist * std::sin(a);
      return render_line(spec, params, x0, y0, viewer.x, viewer.y, contact);
    }
  }
  throw std::runtime_error("gen_course: unhandled course kind");
}

}  // namespace bugeye
