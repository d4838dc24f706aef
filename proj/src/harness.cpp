#include "bugeye/harness.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "bugeye/pgm.hpp"

namespace bugeye {

std::vector<TelemetryRow> run_openloop(const std::vector<Frame>& frames,
                                       const Params& params,
                                       ModelVariant model) {
  RobotAgent agent(params, model, params.rng_seed);
  std::vector<TelemetryRow> rows;
  rows.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const AgentStep step = agent.step(frames[i]);
    TelemetryRow r;
    r.frame = static_cast<int>(i);
    r.u_lgmd1 = step.neurons.u_lgmd1;
    r.u_lgmd2 = step.neurons.u_lgmd2;
    r.u_dsn = step.neurons.u_dsn;
    r.spikes_lgmd1 = step.neurons.spikes_lgmd1;
    r.spikes_lgmd2 = step.neurons.spikes_lgmd2;
    r.spikes_dsn_r = step.neurons.spikes_dsn_r;
    r.spikes_dsn_l = step.neurons.spikes_dsn_l;
    r.pattern = to_string(step.pattern);
    r.behavior = to_string(step.behavior);
    r.tr_prime = step.tr_prime;
    r.p_r = step.wheels.p_r;
    r.p_l = step.wheels.p_l;
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

// A bar pattern sliding one pixel per frame: cheap to make, yet it drives
// every layer with realistic nonzero work.
std::vector<Frame> bench_frames(const Params& params) {
  const int period = 16;
  std::vector<Frame> frames;
  frames.reserve(static_cast<std::size_t>(period));
  for (int t = 0; t < period; ++t) {
    Frame f;
    f.w = params.frame_w;
    f.h = params.frame_h;
    f.px.resize(static_cast<std::size_t>(f.w) * f.h);
    for (int y = 0; y < f.h; ++y) {
      for (int x = 0; x < f.w; ++x) {
        const int bar = ((x + t) / (period / 2)) % 2;
        f.px[static_cast<std::size_t>(y) * f.w + x] =
            static_cast<std::uint8_t>(bar ? 200 : 60);
      }
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

}  // namespace

BenchReport run_bench(const Params& params, double seconds) {
  if (seconds <= 0.0) {
    throw std::runtime_error("run_bench: duration must be positive");
  }
  const std::vector<Frame> frames = bench_frames(params);
  RobotAgent agent(params, ModelVariant::Full, params.rng_seed);

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  long count = 0;
  double elapsed = 0.0;
  while (elapsed < seconds) {
    agent.step(frames[static_cast<std::size_t>(count) % frames.size()]);
    ++count;
    elapsed = std::chrono::duration<double>(clock::now() - start).count();
  }
  BenchReport report;
  report.frames = count;
  report.seconds = elapsed;
  report.fps = count / elapsed;
  report.frame_w = params.frame_w;
  report.frame_h = params.frame_h;
  return report;
}

void write_course(const std::string& dir, const Course& course,
                  const Params& params) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < course.frames.size(); ++i) {
    write_pgm(dir + "/" + frame_filename(static_cast<int>(i)),
              course.frames[i]);
  }
  std::ofstream manifest(dir + "/manifest.txt");
  if (!manifest) {
    throw std::runtime_error("write_course: cannot open manifest in " + dir);
  }
  manifest << "kind=" << to_string(course.spec.kind) << "\n"
           << "speed=" << course.spec.speed_cm_s << "\n"
           << "angle=" << course.spec.angle_deg << "\n"
           << "fps=" << params.fps << "\n"
           << "frames=" << course.frames.size() << "\n"
           << "seed=" << course.spec.seed << "\n";
}

}  // namespace bugeye
