#pragma once
// CSV writers and readers for everything the tools log: per-frame telemetry,
// arena event logs, metrics summaries, and trajectories. Formats are
// versioned by a schema comment so regression diffs fail loudly.

#include <string>
#include <vector>

#include "bugeye/arena.hpp"

namespace bugeye {

struct TelemetryRow {
  int frame = 0;
  double u_lgmd1 = 0.5;
  double u_lgmd2 = 0.5;
  double u_dsn = 0.0;
  int spikes_lgmd1 = 0;
  int spikes_lgmd2 = 0;
  int spikes_dsn_r = 0;
  int spikes_dsn_l = 0;
  std::string pattern = "irrelevant";
  std::string behavior = "wandering";
  double tr_prime = 0.0;
  double p_r = 0.0;
  double p_l = 0.0;
};

// Reals are written in shortest round-trip form, so read_telemetry
// reproduces the rows exactly.
void write_telemetry(const std::string& path,
                     const std::vector<TelemetryRow>& rows);
std::vector<TelemetryRow> read_telemetry(const std::string& path);

struct SpikeSummary {
  int frames = 0;
  long lgmd1 = 0;
  long lgmd2 = 0;
  long dsn_r = 0;
  long dsn_l = 0;
};

SpikeSummary summarize(const std::vector<TelemetryRow>& rows);

// Event log: time_s,robot_id,other_id,kind — other_id empty for wall events.
void write_events(const std::string& path,
                  const std::vector<EventRecord>& events);

// Human-readable counts plus the two survival rates ("n/a" when undefined).
std::string format_metrics(const ArenaMetrics& m);
void write_metrics(const std::string& path, const ArenaMetrics& m);

void write_trajectories(const std::string& path,
                        const std::vector<TrajectorySample>& samples);

}  // namespace bugeye
