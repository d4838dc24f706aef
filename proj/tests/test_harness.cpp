#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bugeye/agent.hpp"
#include "bugeye/harness.hpp"
#include "bugeye/pgm.hpp"
#include "bugeye/stimulus.hpp"
#include "bugeye/telemetry.hpp"

using namespace bugeye;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test case, removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("bugeye_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::vector<Frame> constant_frames(const Params& p, int count,
                                   std::uint8_t lum) {
  return std::vector<Frame>(count, Frame(p.frame_w, p.frame_h, lum));
}

}  // namespace

TEST_CASE("graymap files round-trip exactly") {
  TempDir tmp;
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> lum(0, 255);
  Frame f(33, 21);
  for (auto& px : f.px) px = static_cast<std::uint8_t>(lum(rng));

  const std::string path = tmp.file("frame.pgm");
  write_pgm(path, f);
  const Frame g = read_pgm(path);
  REQUIRE(g.w == f.w);
  REQUIRE(g.h == f.h);
  CHECK(std::equal(f.px.begin(), f.px.end(), g.px.begin()));
}

TEST_CASE("graymap reader rejects malformed input") {
  TempDir tmp;
  const std::string bad = tmp.file("bad.pgm");

  std::ofstream(bad) << "P6\n2 2\n255\n....";
  CHECK_THROWS_AS(read_pgm(bad), std::runtime_error);

  std::ofstream(bad, std::ios::trunc) << "P5\n2 2\n255\nab";  // short payload
  CHECK_THROWS_AS(read_pgm(bad), std::runtime_error);

  std::ofstream(bad, std::ios::trunc) << "P5\n2 2\n65535\nabcd";
  CHECK_THROWS_AS(read_pgm(bad), std::runtime_error);

  CHECK_THROWS_AS(read_pgm(tmp.file("missing.pgm")), std::runtime_error);
}

TEST_CASE("frame filenames sort in sequence order") {
  CHECK(frame_filename(0) == "frame_000000.pgm");
  CHECK(frame_filename(42) == "frame_000042.pgm");
  CHECK(frame_filename(123456) == "frame_123456.pgm");
}

TEST_CASE("telemetry files round-trip exactly") {
  TempDir tmp;
  std::vector<TelemetryRow> rows(3);
  rows[0].frame = 0;
  rows[0].u_lgmd1 = 0.7310585786300049;
  rows[0].u_dsn = -0.12345678901234567;
  rows[0].spikes_lgmd1 = 3;
  rows[0].pattern = "potential_looming";
  rows[1].frame = 1;
  rows[1].u_lgmd2 = 0.9999999999999;
  rows[1].behavior = "avoiding";
  rows[1].p_r = -35.0;
  rows[1].p_l = 35.0;
  rows[2].frame = 2;
  rows[2].tr_prime = 5.767898383371824;

  const std::string path = tmp.file("telemetry.csv");
  write_telemetry(path, rows);
  const std::vector<TelemetryRow> got = read_telemetry(path);

  REQUIRE(got.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(got[i].frame == rows[i].frame);
    CHECK(got[i].u_lgmd1 == rows[i].u_lgmd1);
    CHECK(got[i].u_lgmd2 == rows[i].u_lgmd2);
    CHECK(got[i].u_dsn == rows[i].u_dsn);
    CHECK(got[i].spikes_lgmd1 == rows[i].spikes_lgmd1);
    CHECK(got[i].spikes_lgmd2 == rows[i].spikes_lgmd2);
    CHECK(got[i].spikes_dsn_r == rows[i].spikes_dsn_r);
    CHECK(got[i].spikes_dsn_l == rows[i].spikes_dsn_l);
    CHECK(got[i].pattern == rows[i].pattern);
    CHECK(got[i].behavior == rows[i].behavior);
    CHECK(got[i].tr_prime == rows[i].tr_prime);
    CHECK(got[i].p_r == rows[i].p_r);
    CHECK(got[i].p_l == rows[i].p_l);
  }
}

TEST_CASE("telemetry reader checks the schema line") {
  TempDir tmp;
  const std::string path = tmp.file("t.csv");
  std::ofstream(path) << "frame,u_lgmd1\n0,0.5\n";
  CHECK_THROWS_AS(read_telemetry(path), std::runtime_error);
}

TEST_CASE("spike summary totals the spike columns") {
  std::vector<TelemetryRow> rows(4);
  rows[0].spikes_lgmd1 = 2;
  rows[1].spikes_lgmd1 = 1;
  rows[1].spikes_lgmd2 = 5;
  rows[2].spikes_dsn_r = 3;
  rows[3].spikes_dsn_l = 4;
  const SpikeSummary s = summarize(rows);
  CHECK(s.frames == 4);
  CHECK(s.lgmd1 == 3);
  CHECK(s.lgmd2 == 5);
  CHECK(s.dsn_r == 3);
  CHECK(s.dsn_l == 4);
}

TEST_CASE("event and metrics files have the expected shape") {
  TempDir tmp;
  std::vector<EventRecord> events;
  events.push_back(EventRecord{EventKind::ALR, 1.25, 2, 3});
  events.push_back(EventRecord{EventKind::CwP, 2.5, 0, std::nullopt});

  const std::string epath = tmp.file("events.csv");
  write_events(epath, events);
  std::ifstream in(epath);
  std::string line;
  std::getline(in, line);
  CHECK(line == "time_s,robot_id,other_id,kind");
  std::getline(in, line);
  CHECK(line == "1.250,2,3,ALR");
  std::getline(in, line);
  CHECK(line == "2.500,0,,CwP");

  ArenaMetrics m = compute_metrics(events);
  const std::string text = format_metrics(m);
  CHECK(text.find("ALR=1") != std::string::npos);
  CHECK(text.find("CwP=1") != std::string::npos);
  CHECK(text.find("SR1=0.0") != std::string::npos);
  CHECK(text.find("SR2=100.0") != std::string::npos);

  const ArenaMetrics empty = compute_metrics({});
  CHECK(format_metrics(empty).find("SR1=n/a") != std::string::npos);
}

TEST_CASE("open-loop on a blank scene stays at baseline") {
  Params p;
  p.frame_w = 24;
  p.frame_h = 18;
  const std::vector<TelemetryRow> rows =
      run_openloop(constant_frames(p, 20, 128), p, ModelVariant::Full);

  REQUIRE(rows.size() == 20);
  for (const TelemetryRow& r : rows) {
    CHECK(r.u_lgmd1 == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.u_lgmd2 == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.u_dsn == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.spikes_lgmd1 == 0);
    CHECK(r.spikes_lgmd2 == 0);
    CHECK(r.spikes_dsn_r == 0);
    CHECK(r.spikes_dsn_l == 0);
    CHECK(r.pattern == "irrelevant");
    CHECK(r.behavior == "wandering");
    // Cruise drive with no steering.
    CHECK(r.p_r == doctest::Approx(p.g_v * p.v_i));
    CHECK(r.p_l == doctest::Approx(p.g_v * p.v_i));
  }

  const SpikeSummary s = summarize(rows);
  CHECK(s.lgmd1 + s.lgmd2 + s.dsn_r + s.dsn_l == 0);
}

TEST_CASE("ablation masks only remove outputs, never change shared ones") {
  const Params p;
  CourseSpec spec;
  spec.kind = CourseKind::Looming;
  spec.speed_cm_s = 12.0;
  const Course course = gen_course(spec, p);

  const std::vector<TelemetryRow> full =
      run_openloop(course.frames, p, ModelVariant::Full);
  const std::vector<TelemetryRow> pair =
      run_openloop(course.frames, p, ModelVariant::LgmdPair);
  const std::vector<TelemetryRow> solo =
      run_openloop(course.frames, p, ModelVariant::Lgmd2Only);

  REQUIRE(full.size() == pair.size());
  REQUIRE(full.size() == solo.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    // The dark-looming detector is identical across all three variants.
    CHECK(full[i].u_lgmd2 == pair[i].u_lgmd2);
    CHECK(full[i].u_lgmd2 == solo[i].u_lgmd2);
    CHECK(full[i].spikes_lgmd2 == pair[i].spikes_lgmd2);
    CHECK(full[i].spikes_lgmd2 == solo[i].spikes_lgmd2);
    // The paired variant keeps the first looming detector too.
    CHECK(full[i].u_lgmd1 == pair[i].u_lgmd1);
    CHECK(full[i].spikes_lgmd1 == pair[i].spikes_lgmd1);
    // Masked neurons sit at baseline.
    CHECK(solo[i].u_lgmd1 == 0.5);
    CHECK(solo[i].spikes_lgmd1 == 0);
    CHECK(pair[i].u_dsn == 0.0);
    CHECK(pair[i].spikes_dsn_r == 0);
    CHECK(pair[i].spikes_dsn_l == 0);
    CHECK(solo[i].u_dsn == 0.0);
  }
}

TEST_CASE("model names parse both ways") {
  CHECK(parse_model("lgmd2") == ModelVariant::Lgmd2Only);
  CHECK(parse_model("lgmds") == ModelVariant::LgmdPair);
  CHECK(parse_model("full") == ModelVariant::Full);
  CHECK_THROWS_AS(parse_model("noop"), std::runtime_error);
  CHECK(to_string(ModelVariant::LgmdPair) == "lgmds");
}

TEST_CASE("course directories land on disk with a manifest") {
  TempDir tmp;
  Params p;
  p.frame_w = 24;
  p.frame_h = 18;
  CourseSpec spec;
  spec.kind = CourseKind::TransR;
  spec.speed_cm_s = 10.0;
  const Course course = gen_course(spec, p);

  const std::string dir = (tmp.path / "course").string();
  write_course(dir, course, p);

  const std::vector<Frame> frames = load_frame_dir(dir);
  REQUIRE(frames.size() == course.frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    CHECK(std::equal(frames[i].px.begin(), frames[i].px.end(),
                     course.frames[i].px.begin()));
  }

  std::ifstream manifest(dir + "/manifest.txt");
  REQUIRE(manifest.good());
  std::string text((std::istreambuf_iterator<char>(manifest)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("kind=trans_r") != std::string::npos);
  CHECK(text.find("speed=10") != std::string::npos);
  CHECK(text.find("frames=" + std::to_string(course.frames.size())) !=
        std::string::npos);
}

TEST_CASE("load_frame_dir rejects an empty directory") {
  TempDir tmp;
  CHECK_THROWS_AS(load_frame_dir(tmp.path.string()), std::runtime_error);
}

TEST_CASE("throughput driver validates its duration and reports honestly") {
  Params p;
  CHECK_THROWS_AS(run_bench(p, 0.0), std::runtime_error);

  p.frame_w = 24;
  p.frame_h = 18;
  const BenchReport r = run_bench(p, 0.2);
  CHECK(r.frames > 0);
  CHECK(r.seconds >= 0.2);
  CHECK(r.fps == doctest::Approx(r.frames / r.seconds).epsilon(1e-9));
  CHECK(r.frame_w == 24);
  CHECK(r.frame_h == 18);
}
