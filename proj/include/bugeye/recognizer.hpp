#pragma once
// Frame-by-frame motion interpretation: spike-rate competition between the
// looming and direction detectors, collision confirmation over a short spike
// window, the smoothed turning response, and the behavior state machine.

#include <random>
#include <string>
#include <vector>

#include "bugeye/neurons.hpp"
#include "bugeye/params.hpp"

namespace bugeye {

enum class MotionPattern {
  Irrelevant,
  Recession,
  PotentialLooming,
  LoomingConfirmed,
  TranslationRight,
  TranslationLeft,
};

enum class BehaviorKind { Wandering, Tracking, Avoiding };

struct BehaviorState {
  BehaviorKind kind = BehaviorKind::Wandering;
  double turn_progress = 0.0;  // radians turned so far while Avoiding
  int turn_dir = 1;            // +1 = positive angular velocity, -1 = negative
};

struct RecognizerState {
  std::vector<int> lgmd_spike_window;  // ring buffer, length n_t + 1
  int window_pos = 0;                  // slot the next push overwrites
  double tr_prime = 0.0;               // smoothed turning response
};

RecognizerState make_recognizer_state(const Params& p);

// Decides the frame's motion pattern from the spike competition and updates
// the collision window: the window receives the combined looming-detector
// count on frames those detectors win, and 0 on every other frame (the
// losing side is fully inhibited).
MotionPattern classify(const NeuronFrameOutput& out, RecognizerState& state,
                       const Params& params);

// True iff the collision window (current frame plus the n_t before it) sums
// to at least n_sp spikes.
bool confirm_collision(const RecognizerState& state, const Params& params);

// Advances the smoothed turning response toward sigma1 * u_dsn through a
// first-order low-pass with time constant tau3; returns the new value.
double turning_response(double u_dsn, RecognizerState& state, double dt_ms,
                        const Params& params);

// Behavior dispatch. An unfinished avoidance turn is sticky; otherwise a
// confirmed looming starts Avoiding with a direction drawn from rng, the
// translations map to Tracking, and everything else maps to Wandering.
BehaviorState step_behavior(MotionPattern pattern, const BehaviorState& current,
                            std::mt19937& rng, const Params& params);

std::string to_string(MotionPattern p);
std::string to_string(BehaviorKind k);

}  // namespace bugeye
