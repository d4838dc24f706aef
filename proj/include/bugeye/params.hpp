#pragma once
// Runtime parameters for the whole engine: pipeline constants, recognizer and
// motor gains, camera geometry, arena dimensions and the simulation knobs.
// Loaded from a flat key=value text document ('#' starts a comment); every
// field has a default, so an empty document is a valid configuration.

#include <cstdint>
#include <string>

#include "bugeye/field.hpp"

namespace bugeye {

struct Params {
  // --- retina / lamina -------------------------------------------------
  int n_i = 2;        // residual depth of the temporal high-pass, frames
  double u = 1.0;     // residual decay rate (a_i = 1/(1+e^{u*i}))
  double tau1 = 1.0;  // adaptation attack time constant, ms
  double tau2 = 100.0;  // adaptation release time constant, ms

  // --- medulla ----------------------------------------------------------
  double tau_s = 30.0;  // delay-line time constant, ms (valid 10..200)
  double w1 = 0.3;      // ON-pathway lateral inhibition weight
  double w2 = 0.6;      // OFF-pathway direct inhibition weight
  int d = 2;            // correlator sampling distance, px (2..4)
  int n_c = 4;          // correlator connected-cell count (2..4)

  // --- ON/OFF combination ------------------------------------------------
  double lgmd1_theta1 = 1.0;  // looming detector #1: ON weight
  double lgmd1_theta2 = 1.0;  //                      OFF weight
  // The second looming detector is driven by darkening and actively vetoed
  // by brightening: the negative ON weight lets a receding (brightening)
  // silhouette's incidental OFF fringe be cancelled by its dominant ON mass,
  // while a darkening approach keeps a strong net drive. The pair is
  // calibrated so a fast approach crosses threshold while it still fills
  // well under nine tenths of the view, with slow approaches and recessions
  // at any tested speed staying below threshold by a safe margin.
  double lgmd2_theta1 = -0.775;  // ON weight (inhibitory)
  double lgmd2_theta2 = 1.45;    // OFF weight
  double theta3 = 0.0;        // shared multiplicative ON*OFF weight

  // --- lobula / spiking ----------------------------------------------------
  double k_sig = 0.1;      // sigmoid scale (valid 0.1..0.6)
  double delta_c = 0.0;    // sigmoid offset (valid 0..1)
  double k_sp = 4.0;       // spike-count gain (valid 1..6)
  double t_sp_lgmd = 0.7;  // looming-detector spiking threshold
  double t_sp_dsn = 0.2;   // direction-detector spiking threshold

  // --- recognizer / motor ---------------------------------------------------
  int n_sp = 6;         // spikes required within the confirmation window
  int n_t = 4;          // confirmation window reaches back n_t frames
  double sigma1 = 15.0;  // turning-response gain
  double tau3 = 10.0;    // turning-response smoothing, ms
  double g_v = 1.0;      // forward motor gain
  double g_w = 10.0;     // steering motor gain
  double v_i = 10.0;     // cruise speed, cm/s
  double avoid_turn_radians = 3.5;   // in-place turn per avoidance maneuver
  double avoid_wheel_speed = 35.0;   // wheel speed during the turn, cm/s

  // --- camera -----------------------------------------------------------
  int frame_w = 99;
  int frame_h = 72;
  double fps = 30.0;
  double fov_deg = 70.0;

  // --- arena ------------------------------------------------------------
  double arena_w = 70.0;        // cm
  double arena_h = 55.0;        // cm
  double robot_diameter = 4.0;  // cm; also the wheel track width
  double max_speed = 35.0;      // wheel power clamp, cm/s
  int wall_lum_dark = 170;      // stripe luminances, 8-bit
  int wall_lum_light = 255;
  double wall_stripe_period = 5.0;  // cm along the perimeter
  // Dark skirting strip along the wall base. Stripe boundaries feed the ON
  // and OFF channels evenly, so an approaching wall reads as neither dark
  // nor bright motion; the skirt is what gives a wall the same dark-looming
  // signature as a robot body. Its top stands above the camera line, so as
  // the wall nears BOTH its edges sweep away from the horizon, claiming
  // bright pixels (stripes above, floor below) into black: a pure darkening
  // beacon with no brightening side at all. From afar it projects as a thin
  // static band on the horizon, hidden behind any robot silhouette.
  int wall_base_lum = 0;
  double wall_base_height = 2.0;  // cm up from the floor; camera is at 1.5
  int floor_lum = 255;              // floor/backdrop fill
  int robot_lum = 0;               // robots render darker than everything

  // --- encounter bookkeeping ----------------------------------------------
  double encounter_disc = 15.0;      // proximity disc radius, cm
  double encounter_cone_deg = 25.0;  // frontal cone half-angle for looming
  double encounter_range_rate = 1.0;   // approach speed threshold, cm/s
  double encounter_wall_ttc = 1.5;     // wall time-to-contact threshold, s

  std::uint32_t rng_seed = 1;

  // Fixed spatial kernels (not configurable; rebuilt deterministically).
  Kernel w_e = make_center_kernel();
  Kernel w_i = make_surround_kernel();
  Kernel w_l = make_lateral_kernel();

  static Kernel make_center_kernel();    // 3x3 binomial, sums to 1
  static Kernel make_surround_kernel();  // 7x7 normalized Gaussian, sums to 1
  static Kernel make_lateral_kernel();   // 3x3, hollow center, 1/4 + 1/8 ring
};

// Parses a flat key=value document. Unknown keys, malformed lines and
// out-of-range values throw std::runtime_error naming the offending key.
// The returned Params is fully validated.
Params load_params(const std::string& text);

// Emits every scalar key in a form load_params parses back to an identical
// Params (shortest round-trip float formatting).
std::string serialize_params(const Params& p);

// Range/consistency checks; throws std::runtime_error listing every violated
// key. load_params calls this; call it again after mutating fields by hand.
void validate_params(const Params& p);

}  // namespace bugeye
