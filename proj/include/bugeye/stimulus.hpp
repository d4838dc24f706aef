#pragma once
// Open-loop stimulus courses: one dark robot-sized object moving through the
// textured arena on a scripted trajectory, rendered from a fixed viewer so
// the perception stack can be exercised without the closed-loop arena.

#include <cstdint>
#include <string>
#include <vector>

#include "bugeye/arena.hpp"
#include "bugeye/field.hpp"
#include "bugeye/params.hpp"

namespace bugeye {

enum class CourseKind { Looming, Recession, TransR, TransL, Angular };

CourseKind parse_course_kind(const std::string& name);
std::string to_string(CourseKind k);

struct CourseSpec {
  CourseKind kind = CourseKind::Looming;
  double speed_cm_s = 8.0;
  double angle_deg = 0.0;      // Angular only; |angle| <= 35
  double start_dist = 40.0;    // approach start, cm
  double pass_range = 15.0;    // translation lateral-crossing range, cm
  std::uint32_t seed = 1;      // drives the wall-texture phase only
};

// Per-frame ground truth alongside the rendered frames.
struct TargetSample {
  double dist = 0.0;    // viewer-to-target center distance, cm
  bool visible = false; // any part of the target inside the field of view
};

struct Course {
  CourseSpec spec;
  std::vector<Frame> frames;
  std::vector<TargetSample> target;
  RobotPose viewer;
};

// Builds the frame sequence for one course at params.fps:
//   Looming    head-on approach from start_dist down to body contact
//   Recession  exact time-reverse of the equivalent Looming course
//   TransR     lateral crossing left-to-right across the view at pass_range
//   TransL     exact horizontal mirror of the equivalent TransR course
//   Angular    straight drive at the viewer from angle_deg off the axis
// Throws std::runtime_error on non-positive speed or an angle outside the
// field of view.
Course gen_course(const CourseSpec& spec, const Params& params);

}  // namespace bugeye
