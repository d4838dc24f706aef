#pragma once
// First two layers of the vision pipeline: temporal high-pass photoreceptors,
// spatial band-pass edge extraction, ON/OFF half-wave split, and per-cell
// fast-onset/slow-decay adaptation.

#include <vector>

#include "bugeye/field.hpp"
#include "bugeye/params.hpp"

namespace bugeye {

// Per-pipeline mutable state for this stage. Create with make_lamina_state;
// the first retina_highpass call self-primes from its input frame.
struct LaminaState {
  Frame prev_luminance;
  std::vector<SignalField> p_history;  // ring of the last n_i high-pass fields
  int head = 0;                        // ring slot holding the most recent one
  SignalField d_on;                    // adaptation states, one per channel
  SignalField d_off;
  std::vector<double> a_coeffs;  // residual weights a_i = 1/(1+e^{u*i})
  bool primed = false;
};

LaminaState make_lamina_state(const Params& p);

// Temporal high-pass: P(t) = L(t) - L(t-1) + sum_i a_i * P(t-i).
// Mutates the history ring and the stored previous frame. The first call
// primes the state from `frame` and therefore returns an all-zero field.
// Throws std::runtime_error on a dimension mismatch.
SignalField retina_highpass(const Frame& frame, LaminaState& state);

// Spatial band-pass: P' = (P * W_e) - (P * W_i), replicate-edge borders.
SignalField lamina_bandpass(const SignalField& p, const Params& params);

// Half-wave split: on = max(P', 0), off = max(-P', 0) per cell.
OnOffField rectify_split(const SignalField& p_prime);

// Fast-onset/slow-decay adaptation. Per cell the state D follows the input
// X through a first-order low-pass whose constant is tau1 while X >= D
// (attack) and tau2 otherwise (release); the output is max(X - D, 0).
// Mutates state.d_on/d_off.
OnOffField fdsr_adapt(const OnOffField& rectified, LaminaState& state,
                      double dt_ms, const Params& params);

}  // namespace bugeye
