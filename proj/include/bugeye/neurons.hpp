#pragma once
// Medulla and lobula layers plus the spike encoder: looming-detector ON/OFF
// interaction, paired direction-selective correlator ensembles, spatial
// summation through a sigmoid, and exponential spike counts. Pipeline ties
// the whole per-frame stack together.

#include "bugeye/field.hpp"
#include "bugeye/lamina.hpp"
#include "bugeye/params.hpp"

namespace bugeye {

// Low-passed ("delayed") copies of the adaptation outputs.
struct MedullaState {
  SignalField dprime_on;
  SignalField dprime_off;
};

MedullaState make_medulla_state(const Params& p);

// Everything the recognizer needs from one processed frame. Baseline values
// (blank scene) are 0.5 membrane potential for the looming detectors, 0 for
// the direction detector, and no spikes anywhere.
struct NeuronFrameOutput {
  double u_lgmd1 = 0.5;  // in [0.5, 1)
  double u_lgmd2 = 0.5;  // in [0.5, 1)
  double u_dsn = 0.0;    // in (-1, 1); positive = rightward motion
  int spikes_lgmd1 = 0;
  int spikes_lgmd2 = 0;
  int spikes_dsn_r = 0;  // nonzero only when u_dsn > 0
  int spikes_dsn_l = 0;  // nonzero only when u_dsn < 0
};

// First-order low-pass of F with time constant tau_s; returns the new
// delayed fields and stores them in the state.
OnOffField delay_fields(const OnOffField& f, MedullaState& state, double dt_ms,
                        double tau_s);

// Looming-detector summation cells:
//   S_on  = F_on - w1 * (D'_on * W_l)
//   S_off = (D'_off * W_l) - w2 * F_off
// each clamped at 0 from below.
OnOffField lgmd_medulla(const OnOffField& f, const OnOffField& dprime,
                        const Params& params);

// Channel mixer: per cell S = theta1*S_on + theta2*S_off + theta3*S_on*S_off.
SignalField lgmd_combine(const OnOffField& s, double theta1, double theta2,
                         double theta3);

// Direction-selective ensemble. Per cell, a signed sum of pairwise
// correlations against cells i = d, 2d, ..., n_c*d to the right:
//   D'_on(x,y)*F_on(x+i,y) - D'_on(x+i,y)*F_on(x,y)   (+ the same for OFF)
// Out-of-bounds partners are skipped. Positive output = rightward motion.
SignalField dsn_medulla(const OnOffField& f, const OnOffField& dprime,
                        const Params& params);

// Membrane potential from a field's spatial sum x. Unsigned mode (looming
// detectors): 1/(1+e^{-|x|/(n*k_sig)}) - delta_c, range [0.5, 1) at
// delta_c = 0. Signed mode (direction detector): the odd extension
// sign(x) * 2 * (sigma(|x|) - 0.5), range (-1, 1).
double lobula_activate(const SignalField& field, int n, double k_sig,
                       double delta_c, bool is_signed);

// Spike count for one neuron in one frame: floor(e^{k_sp*(u - t_sp)}).
// Values below threshold round down to zero; u = t_sp yields exactly 1.
int spike_encode(double u, double k_sp, double t_sp);

// One robot's complete vision stack. Owns its parameter copy and all layer
// state; process() consumes camera frames in order, one call per frame.
class Pipeline {
 public:
  explicit Pipeline(const Params& params);

  // Runs every layer on the next frame and returns potentials plus spikes.
  // Throws std::runtime_error if the frame dimensions do not match.
  NeuronFrameOutput process(const Frame& frame);

  double dt_ms() const { return 1000.0 / params_.fps; }
  const Params& params() const { return params_; }

 private:
  Params params_;
  LaminaState lamina_;
  MedullaState medulla_;
};

}  // namespace bugeye
