// Command-line front end: stimulus generation, open-loop telemetry runs,
// closed-loop arena experiments, and a throughput benchmark.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "bugeye/arena.hpp"
#include "bugeye/harness.hpp"
#include "bugeye/pgm.hpp"
#include "bugeye/stimulus.hpp"
#include "bugeye/telemetry.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bugeye::Params make_params(const std::string& config_path,
                           const std::optional<std::uint32_t>& seed) {
  bugeye::Params params;
  if (!config_path.empty()) {
    params = bugeye::load_params(read_file(config_path));
  }
  if (seed) {
    params.rng_seed = *seed;
    bugeye::validate_params(params);
  }
  return params;
}

struct CourseOptions {
  std::string kind = "looming";
  double speed = 8.0;
  double angle = 0.0;
  double range = 15.0;
  int reps = 1;
};

void add_course_options(CLI::App* cmd, CourseOptions& opts) {
  cmd->add_option("--kind", opts.kind,
                  "looming | recession | trans_r | trans_l | angular")
      ->capture_default_str();
  cmd->add_option("--speed", opts.speed, "object speed, cm/s")
      ->capture_default_str();
  cmd->add_option("--angle", opts.angle,
                  "approach angle in degrees (angular courses)")
      ->capture_default_str();
  cmd->add_option("--range", opts.range,
                  "lateral crossing range in cm (translation courses)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--reps", opts.reps,
                  "repetitions; each shifts the wall texture phase")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

bugeye::CourseSpec make_spec(const CourseOptions& opts,
                             const bugeye::Params& params, int rep) {
  bugeye::CourseSpec spec;
  spec.kind = bugeye::parse_course_kind(opts.kind);
  spec.speed_cm_s = opts.speed;
  spec.angle_deg = opts.angle;
  spec.pass_range = opts.range;
  spec.seed = params.rng_seed + static_cast<std::uint32_t>(rep);
  return spec;
}

std::string rep_dir(const std::string& out_dir, int rep) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "rep_%02d", rep);
  return out_dir + "/" + buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bugeye: insect-vision collision and translation perception toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint32_t> seed;
  std::string out_dir = "out";
  std::string model_name = "full";
  app.add_option("--config", config_path, "key=value parameter file");
  app.add_option("--seed", seed, "override the configured rng_seed");
  app.add_option("--out-dir", out_dir, "output directory")
      ->capture_default_str();
  app.add_option("--model", model_name, "lgmd2 | lgmds | full")
      ->capture_default_str();

  CLI::App* gen = app.add_subcommand(
      "gen", "render stimulus courses as numbered graymap frames");
  CourseOptions gen_opts;
  add_course_options(gen, gen_opts);

  CLI::App* openloop = app.add_subcommand(
      "openloop", "run the perception stack over frames, log telemetry");
  CourseOptions ol_opts;
  add_course_options(openloop, ol_opts);
  std::string frames_dir;
  openloop->add_option("--frames", frames_dir,
                       "directory of .pgm frames (instead of a course)");

  CLI::App* arena = app.add_subcommand(
      "arena", "closed-loop multi-robot experiment with event logging");
  int robots = 4;
  double duration = 60.0;
  bool trajectories = false;
  arena->add_option("--robots", robots, "number of robots")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  arena->add_option("--duration", duration, "simulated seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  arena->add_flag("--trajectories", trajectories,
                  "also write per-robot trajectory samples");

  CLI::App* bench =
      app.add_subcommand("bench", "measure sustained pipeline throughput");
  double seconds = 10.0;
  bench->add_option("--seconds", seconds, "minimum wall-clock duration")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const bugeye::Params params = make_params(config_path, seed);

    if (gen->parsed()) {
      std::filesystem::create_directories(out_dir);
      for (int rep = 0; rep < gen_opts.reps; ++rep) {
        const bugeye::Course course =
            bugeye::gen_course(make_spec(gen_opts, params, rep), params);
        bugeye::write_course(rep_dir(out_dir, rep), course, params);
      }
      std::cout << "wrote " << gen_opts.reps << " course(s) to " << out_dir
                << "\n";
      return 0;
    }

    if (openloop->parsed()) {
      const bugeye::ModelVariant model = bugeye::parse_model(model_name);
      std::filesystem::create_directories(out_dir);
      std::ofstream summary(out_dir + "/summary.csv");
      summary << "kind,speed,angle,rep,frames,spikes_lgmd1,spikes_lgmd2,"
                 "spikes_dsn_r,spikes_dsn_l\n";

      const int reps = frames_dir.empty() ? ol_opts.reps : 1;
      for (int rep = 0; rep < reps; ++rep) {
        std::vector<bugeye::Frame> frames;
        std::string kind_label;
        double speed_label = 0.0;
        double angle_label = 0.0;
        if (frames_dir.empty()) {
          const bugeye::Course course =
              bugeye::gen_course(make_spec(ol_opts, params, rep), params);
          frames = course.frames;
          kind_label = bugeye::to_string(course.spec.kind);
          speed_label = course.spec.speed_cm_s;
          angle_label = course.spec.angle_deg;
        } else {
          frames = bugeye::load_frame_dir(frames_dir);
          kind_label = "file";
        }
        const auto rows = bugeye::run_openloop(frames, params, model);
        char name[40];
        std::snprintf(name, sizeof name, "rep_%02d_telemetry.csv", rep);
        bugeye::write_telemetry(out_dir + "/" + name, rows);
        const bugeye::SpikeSummary s = bugeye::summarize(rows);
        summary << kind_label << ',' << speed_label << ',' << angle_label
                << ',' << rep << ',' << s.frames << ',' << s.lgmd1 << ','
                << s.lgmd2 << ',' << s.dsn_r << ',' << s.dsn_l << '\n';
      }
      std::cout << "telemetry written to " << out_dir << "\n";
      return 0;
    }

    if (arena->parsed()) {
      const bugeye::ModelVariant model = bugeye::parse_model(model_name);
      const bugeye::ArenaRunResult result = bugeye::run_arena(
          params, robots, duration, model, trajectories);
      std::filesystem::create_directories(out_dir);
      bugeye::write_events(out_dir + "/events.csv", result.events);
      bugeye::write_metrics(out_dir + "/metrics.txt", result.metrics);
      if (trajectories) {
        bugeye::write_trajectories(out_dir + "/trajectories.csv",
                                   result.trajectories);
      }
      std::cout << bugeye::format_metrics(result.metrics);
      return 0;
    }

    if (bench->parsed()) {
      const bugeye::BenchReport report = bugeye::run_bench(params, seconds);
      std::printf("%ld frames at %dx%d in %.2f s: %.1f fps\n", report.frames,
                  report.frame_w, report.frame_h, report.seconds, report.fps);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
