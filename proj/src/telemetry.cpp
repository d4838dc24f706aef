#include "bugeye/telemetry.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bugeye {

namespace {

constexpr const char* kTelemetrySchema = "# schema=telemetry/1";
constexpr const char* kTelemetryHeader =
    "frame,u_lgmd1,u_lgmd2,u_dsn,spikes_lgmd1,spikes_lgmd2,spikes_dsn_r,"
    "spikes_dsn_l,pattern,behavior,tr_prime,p_r,p_l";

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& s, const char* what) {
  double v = 0.0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw std::runtime_error(std::string("telemetry: bad ") + what + ": '" +
                             s + "'");
  }
  return v;
}

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw std::runtime_error(std::string("telemetry: bad ") + what + ": '" +
                             s + "'");
  }
  return v;
}

}  // namespace

void write_telemetry(const std::string& path,
                     const std::vector<TelemetryRow>& rows) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_telemetry: cannot open " + path);
  }
  out << kTelemetrySchema << "\n" << kTelemetryHeader << "\n";
  for (const TelemetryRow& r : rows) {
    out << r.frame << ',' << fmt(r.u_lgmd1) << ',' << fmt(r.u_lgmd2) << ','
        << fmt(r.u_dsn) << ',' << r.spikes_lgmd1 << ',' << r.spikes_lgmd2
        << ',' << r.spikes_dsn_r << ',' << r.spikes_dsn_l << ',' << r.pattern
        << ',' << r.behavior << ',' << fmt(r.tr_prime) << ',' << fmt(r.p_r)
        << ',' << fmt(r.p_l) << '\n';
  }
}

std::vector<TelemetryRow> read_telemetry(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_telemetry: cannot open " + path);
  }
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind(kTelemetrySchema, 0) != 0) {
    throw std::runtime_error("read_telemetry: missing schema line in " + path);
  }
  if (!std::getline(in, line) || line.rfind("frame,", 0) != 0) {
    throw std::runtime_error("read_telemetry: missing header in " + path);
  }
  std::vector<TelemetryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 13) {
      throw std::runtime_error("read_telemetry: bad column count in " + path);
    }
    TelemetryRow r;
    r.frame = parse_int(f[0], "frame");
    r.u_lgmd1 = parse_real(f[1], "u_lgmd1");
    r.u_lgmd2 = parse_real(f[2], "u_lgmd2");
    r.u_dsn = parse_real(f[3], "u_dsn");
    r.spikes_lgmd1 = parse_int(f[4], "spikes_lgmd1");
    r.spikes_lgmd2 = parse_int(f[5], "spikes_lgmd2");
    r.spikes_dsn_r = parse_int(f[6], "spikes_dsn_r");
    r.spikes_dsn_l = parse_int(f[7], "spikes_dsn_l");
    r.pattern = f[8];
    r.behavior = f[9];
    r.tr_prime = parse_real(f[10], "tr_prime");
    r.p_r = parse_real(f[11], "p_r");
    r.p_l = parse_real(f[12], "p_l");
    rows.push_back(std::move(r));
  }
  return rows;
}

SpikeSummary summarize(const std::vector<TelemetryRow>& rows) {
  SpikeSummary s;
  s.frames = static_cast<int>(rows.size());
  for (const TelemetryRow& r : rows) {
    s.lgmd1 += r.spikes_lgmd1;
    s.lgmd2 += r.spikes_lgmd2;
    s.dsn_r += r.spikes_dsn_r;
    s.dsn_l += r.spikes_dsn_l;
  }
  return s;
}

void write_events(const std::string& path,
                  const std::vector<EventRecord>& events) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_events: cannot open " + path);
  }
  out << "time_s,robot_id,other_id,kind\n";
  char buf[32];
  for (const EventRecord& e : events) {
    std::snprintf(buf, sizeof buf, "%.3f", e.time_s);
    out << buf << ',' << e.robot_id << ',';
    if (e.other_id) out << *e.other_id;
    out << ',' << to_string(e.kind) << '\n';
  }
}

std::string format_metrics(const ArenaMetrics& m) {
  std::ostringstream out;
  out << "CwR=" << m.cwr << "\nCwP=" << m.cwp << "\nALR=" << m.alr
      << "\nATR=" << m.atr << "\nAP=" << m.ap << "\n";
  char buf[32];
  if (m.sr1) {
    std::snprintf(buf, sizeof buf, "%.1f", *m.sr1);
    out << "SR1=" << buf << "\n";
  } else {
    out << "SR1=n/a\n";
  }
  if (m.sr2) {
    std::snprintf(buf, sizeof buf, "%.1f", *m.sr2);
    out << "SR2=" << buf << "\n";
  } else {
    out << "SR2=n/a\n";
  }
  return out.str();
}

void write_metrics(const std::string& path, const ArenaMetrics& m) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_metrics: cannot open " + path);
  }
  out << format_metrics(m);
}

void write_trajectories(const std::string& path,
                        const std::vector<TrajectorySample>& samples) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_trajectories: cannot open " + path);
  }
  out << "time_s,robot_id,x,y,heading\n";
  char buf[32];
  for (const TrajectorySample& s : samples) {
    std::snprintf(buf, sizeof buf, "%.3f", s.time_s);
    out << buf << ',' << s.robot_id << ',' << fmt(s.x) << ',' << fmt(s.y)
        << ',' << fmt(s.heading) << '\n';
  }
}

}  // namespace bugeye
