#include "bugeye/params.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

namespace bugeye {

Kernel Params::make_center_kernel() {
  // 3x3 binomial: center 1/4, edges 1/8, corners 1/16. Sums to exactly 1.
  // Deliberately tight: spreading the excitatory mass over a wider support
  // smears a moving edge over more cells, and every quantity downstream of
  // the rectifier that multiplies two fields pays for that twice.
  Kernel k;
  k.radius = 1;
  k.taps = {1.0 / 16, 1.0 / 8, 1.0 / 16,  //
            1.0 / 8,  1.0 / 4, 1.0 / 8,   //
            1.0 / 16, 1.0 / 8, 1.0 / 16};
  return k;
}

Kernel Params::make_surround_kernel() {
  // 7x7 Gaussian (sigma = 12.0, i.e. essentially flat), normalized so the
  // taps sum to exactly 1 — twice the center kernel's support per side.
  // The flat profile casts the shallowest possible inhibition onto a moving
  // edge band, and the rebound lobe it leaves around a traveling edge is
  // low and nearly constant frame to frame, so the fast-adaptation stage
  // downstream sees almost no rise there and passes little of it on.
  Kernel k;
  k.radius = 3;
  k.taps.resize(49);
  const double sigma = 12.0;
  double total = 0.0;
  for (int dy = -3; dy <= 3; ++dy) {
    for (int dx = -3; dx <= 3; ++dx) {
      const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      k.taps[static_cast<std::size_t>((dy + 3) * 7 + (dx + 3))] = g;
      total += g;
    }
  }
  for (double& t : k.taps) t /= total;
  return k;
}

Kernel Params::make_lateral_kernel() {
  // Hollow 3x3: nothing at the center, 1/4 at the 4-neighbours, 1/8 at the
  // diagonals. Sums to 1.5, i.e. lateral spread amplifies extended edges.
  Kernel k;
  k.radius = 1;
  k.taps = {1.0 / 8, 1.0 / 4, 1.0 / 8,  //
            1.0 / 4, 0.0,     1.0 / 4,  //
            1.0 / 8, 1.0 / 4, 1.0 / 8};
  return k;
}

namespace {

// One row of the key table: a name bound to a pointer-to-member, so the
// parser and the serializer always agree on the key set.
struct FieldDef {
  std::string_view key;
  std::variant<int Params::*, double Params::*, std::uint32_t Params::*>
      member;
};

const std::vector<FieldDef>& field_table() {
  static const std::vector<FieldDef> table = {
      {"n_i", &Params::n_i},
      {"u", &Params::u},
      {"tau1", &Params::tau1},
      {"tau2", &Params::tau2},
      {"tau_s", &Params::tau_s},
      {"w1", &Params::w1},
      {"w2", &Params::w2},
      {"d", &Params::d},
      {"n_c", &Params::n_c},
      {"lgmd1_theta1", &Params::lgmd1_theta1},
      {"lgmd1_theta2", &Params::lgmd1_theta2},
      {"lgmd2_theta1", &Params::lgmd2_theta1},
      {"lgmd2_theta2", &Params::lgmd2_theta2},
      {"theta3", &Params::theta3},
      {"k_sig", &Params::k_sig},
      {"delta_c", &Params::delta_c},
      {"k_sp", &Params::k_sp},
      {"t_sp_lgmd", &Params::t_sp_lgmd},
      {"t_sp_dsn", &Params::t_sp_dsn},
      {"n_sp", &Params::n_sp},
      {"n_t", &Params::n_t},
      {"sigma1", &Params::sigma1},
      {"tau3", &Params::tau3},
      {"g_v", &Params::g_v},
      {"g_w", &Params::g_w},
      {"v_i", &Params::v_i},
      {"avoid_turn_radians", &Params::avoid_turn_radians},
      {"avoid_wheel_speed", &Params::avoid_wheel_speed},
      {"frame_w", &Params::frame_w},
      {"frame_h", &Params::frame_h},
      {"fps", &Params::fps},
      {"fov_deg", &Params::fov_deg},
      {"arena_w", &Params::arena_w},
      {"arena_h", &Params::arena_h},
      {"robot_diameter", &Params::robot_diameter},
      {"max_speed", &Params::max_speed},
      {"wall_lum_dark", &Params::wall_lum_dark},
      {"wall_lum_light", &Params::wall_lum_light},
      {"wall_stripe_period", &Params::wall_stripe_period},
      {"wall_base_lum", &Params::wall_base_lum},
      {"wall_base_height", &Params::wall_base_height},
      {"floor_lum", &Params::floor_lum},
      {"robot_lum", &Params::robot_lum},
      {"encounter_disc", &Params::encounter_disc},
      {"encounter_cone_deg", &Params::encounter_cone_deg},
      {"encounter_range_rate", &Params::encounter_range_rate},
      {"encounter_wall_ttc", &Params::encounter_wall_ttc},
      {"rng_seed", &Params::rng_seed},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
void parse_value(std::string_view key, std::string_view value, T& out) {
  const char* first = value.data();
  const char* last = value.data() + value.size();
  T v{};
  auto r = std::from_chars(first, last, v);
  if (r.ec != std::errc{} || r.ptr != last) {
    throw std::runtime_error("config: bad value for key '" + std::string(key) +
                             "': '" + std::string(value) + "'");
  }
  out = v;
}

void parse_into(const FieldDef& def, std::string_view value, Params& p) {
  std::visit([&](auto member) { parse_value(def.key, value, p.*member); },
             def.member);
}

std::string format_field(const FieldDef& def, const Params& p) {
  char buf[64];
  char* end = std::visit(
      [&](auto member) {
        return std::to_chars(buf, buf + sizeof buf, p.*member).ptr;
      },
      def.member);
  return std::string(buf, end);
}

void check_kernel(const Kernel& k, const char* name, double expect_sum,
                  std::vector<std::string>& errors) {
  double s = 0.0;
  for (double t : k.taps) {
    if (t < 0.0) {
      errors.push_back(std::string(name) + ": negative tap");
      return;
    }
    s += t;
  }
  if (std::abs(s - expect_sum) > 1e-12) {
    errors.push_back(std::string(name) + ": taps must sum to " +
                     std::to_string(expect_sum));
  }
}

}  // namespace

Params load_params(const std::string& text) {
  Params p;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = line;
    if (auto hash = sv.find('#'); hash != std::string_view::npos) {
      sv = sv.substr(0, hash);
    }
    sv = trim(sv);
    if (sv.empty()) continue;
    auto eq = sv.find('=');
    if (eq == std::string_view::npos) {
      throw std::runtime_error("config: line " + std::to_string(line_no) +
                               " is not key=value: '" + std::string(sv) + "'");
    }
    std::string_view key = trim(sv.substr(0, eq));
    std::string_view value = trim(sv.substr(eq + 1));
    bool matched = false;
    for (const auto& def : field_table()) {
      if (def.key == key) {
        parse_into(def, value, p);
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw std::runtime_error("config: unknown key '" + std::string(key) +
                               "'");
    }
  }
  validate_params(p);
  return p;
}

std::string serialize_params(const Params& p) {
  std::string out;
  for (const auto& def : field_table()) {
    out += def.key;
    out += '=';
    out += format_field(def, p);
    out += '\n';
  }
  return out;
}

void validate_params(const Params& p) {
  std::vector<std::string> errors;
  auto require = [&](bool ok, const char* msg) {
    if (!ok) errors.emplace_back(msg);
  };

  require(p.n_i >= 1, "n_i: must be >= 1");
  require(p.u > 0.0, "u: must be > 0");
  require(p.tau1 > 0.0, "tau1: must be > 0");
  require(p.tau2 > 0.0, "tau2: must be > 0");
  require(p.tau1 <= p.tau2,
          "tau1: must be <= tau2 (fast attack, slow release)");
  require(p.tau_s >= 10.0 && p.tau_s <= 200.0, "tau_s: must be in [10, 200]");
  require(p.tau3 > 0.0, "tau3: must be > 0");
  require(p.w1 >= 0.0, "w1: must be >= 0");
  require(p.w2 >= 0.0, "w2: must be >= 0");
  require(p.d >= 2 && p.d <= 4, "d: must be in [2, 4]");
  require(p.n_c >= 2 && p.n_c <= 4, "n_c: must be in [2, 4]");
  require(p.k_sig >= 0.1 && p.k_sig <= 0.6, "k_sig: must be in [0.1, 0.6]");
  require(p.delta_c >= 0.0 && p.delta_c <= 1.0, "delta_c: must be in [0, 1]");
  require(p.k_sp >= 1.0 && p.k_sp <= 6.0, "k_sp: must be in [1, 6]");
  require(p.t_sp_lgmd > 0.0 && p.t_sp_lgmd < 1.0,
          "t_sp_lgmd: must be in (0, 1)");
  require(p.t_sp_dsn > 0.0 && p.t_sp_dsn < 1.0, "t_sp_dsn: must be in (0, 1)");
  require(p.t_sp_dsn < p.t_sp_lgmd, "t_sp_dsn: must be < t_sp_lgmd");
  require(p.n_sp >= 1, "n_sp: must be >= 1");
  require(p.n_t >= 0, "n_t: must be >= 0");
  require(p.sigma1 > 0.0, "sigma1: must be > 0");
  require(p.g_v > 0.0, "g_v: must be > 0");
  require(p.g_w > 0.0, "g_w: must be > 0");
  require(p.v_i >= 0.0, "v_i: must be >= 0");
  require(p.avoid_turn_radians > 3.141592653589793,
          "avoid_turn_radians: must exceed pi (turn past a half circle)");
  require(p.avoid_wheel_speed > 0.0 && p.avoid_wheel_speed <= p.max_speed,
          "avoid_wheel_speed: must be in (0, max_speed]");
  require(p.frame_w >= 4, "frame_w: must be >= 4");
  require(p.frame_h >= 4, "frame_h: must be >= 4");
  require(p.fps > 0.0, "fps: must be > 0");
  require(p.fov_deg > 0.0 && p.fov_deg < 180.0, "fov_deg: must be in (0, 180)");
  require(p.robot_diameter > 0.0, "robot_diameter: must be > 0");
  require(p.arena_w > 4.0 * p.robot_diameter,
          "arena_w: too small for the robot diameter");
  require(p.arena_h > 4.0 * p.robot_diameter,
          "arena_h: too small for the robot diameter");
  require(p.max_speed > 0.0, "max_speed: must be > 0");
  require(p.wall_stripe_period > 0.0, "wall_stripe_period: must be > 0");
  auto lum_ok = [](int l) { return l >= 0 && l <= 255; };
  require(lum_ok(p.wall_lum_dark), "wall_lum_dark: must be in [0, 255]");
  require(lum_ok(p.wall_lum_light), "wall_lum_light: must be in [0, 255]");
  require(lum_ok(p.wall_base_lum), "wall_base_lum: must be in [0, 255]");
  require(lum_ok(p.floor_lum), "floor_lum: must be in [0, 255]");
  require(lum_ok(p.robot_lum), "robot_lum: must be in [0, 255]");
  require(p.wall_lum_dark < p.wall_lum_light,
          "wall_lum_dark: must be < wall_lum_light");
  require(p.wall_base_height >= 0.0 && p.wall_base_height <= 4.0,
          "wall_base_height: must be in [0, 4] cm (stripes stay visible)");
  require(p.robot_lum < p.wall_lum_dark && p.robot_lum < p.floor_lum,
          "robot_lum: robots must render darker than walls and floor");
  require(p.encounter_disc > p.robot_diameter,
          "encounter_disc: must exceed robot_diameter");
  require(p.encounter_cone_deg > 0.0 && p.encounter_cone_deg <= 90.0,
          "encounter_cone_deg: must be in (0, 90]");
  require(p.encounter_range_rate > 0.0, "encounter_range_rate: must be > 0");
  require(p.encounter_wall_ttc > 0.0, "encounter_wall_ttc: must be > 0");

  // Kernel invariants. The center and surround kernels are unit-mass
  // smoothers; the lateral kernel is hollow with total mass 1.5. All taps of
  // the surround must stay within [1/128, 1/4] so its support is meaningful.
  check_kernel(p.w_e, "w_e", 1.0, errors);
  check_kernel(p.w_i, "w_i", 1.0, errors);
  check_kernel(p.w_l, "w_l", 1.5, errors);
  if (p.w_e.radius < 1) errors.emplace_back("w_e: radius must be >= 1");
  // The surround must cover twice the center's support per side
  // ((2r+1) -> 2(2r+1)+1, i.e. 3->7, 5->11).
  if (p.w_i.radius != 2 * p.w_e.radius + 1) {
    errors.emplace_back("w_i: support must be twice w_e's per side");
  }
  if (p.w_l.radius != 1) errors.emplace_back("w_l: radius must be 1");
  if (p.w_l.taps.size() == 9 && p.w_l.taps[4] != 0.0) {
    errors.emplace_back("w_l: center tap must be 0");
  }
  for (const Kernel* k : {&p.w_e, &p.w_i}) {
    const char* name = k == &p.w_e ? "w_e" : "w_i";
    for (double t : k->taps) {
      if (t < 1.0 / 128 || t > 0.25) {
        errors.emplace_back(std::string(name) +
                            ": taps must lie in [1/128, 1/4]");
        break;
      }
    }
  }

  if (!errors.empty()) {
    std::string msg = "invalid parameters:";
    for (const auto& e : errors) {
      msg += "\n  ";
      msg += e;
    }
    throw std::runtime_error(msg);
  }
}

}  // namespace bugeye
