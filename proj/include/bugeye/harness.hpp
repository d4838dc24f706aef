#pragma once
// Experiment drivers shared by the CLI and the tests: open-loop telemetry
// runs, throughput measurement, and course directory I/O.

#include <string>
#include <vector>

#include "bugeye/agent.hpp"
#include "bugeye/params.hpp"
#include "bugeye/stimulus.hpp"
#include "bugeye/telemetry.hpp"

namespace bugeye {

// Feeds a frame sequence through one agent (pipeline + recognizer + motor)
// and returns one telemetry row per frame. Throws on a dimension mismatch
// between the frames and params.
std::vector<TelemetryRow> run_openloop(const std::vector<Frame>& frames,
                                       const Params& params,
                                       ModelVariant model);

struct BenchReport {
  long frames = 0;
  double seconds = 0.0;
  double fps = 0.0;
  int frame_w = 0;
  int frame_h = 0;
};

// Sustained full-pipeline throughput on synthetic drifting-stripe frames at
// the configured resolution, over at least `seconds` of wall time.
// Throws on a non-positive duration.
BenchReport run_bench(const Params& params, double seconds);

// Writes a course as numbered graymap frames plus a manifest.txt recording
// kind, speed, angle, fps, frame count, and seed.
void write_course(const std::string& dir, const Course& course,
                  const Params& params);

}  // namespace bugeye
