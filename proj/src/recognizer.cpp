#include "bugeye/recognizer.hpp"

#include <numeric>

namespace bugeye {

RecognizerState make_recognizer_state(const Params& p) {
  RecognizerState st;
  st.lgmd_spike_window.assign(static_cast<std::size_t>(p.n_t) + 1, 0);
  return st;
}

namespace {

void push_window(RecognizerState& state, int spikes) {
  state.lgmd_spike_window[static_cast<std::size_t>(state.window_pos)] = spikes;
  state.window_pos = (state.window_pos + 1) %
                     static_cast<int>(state.lgmd_spike_window.size());
}

}  // namespace

MotionPattern classify(const NeuronFrameOutput& out, RecognizerState& state,
                       const Params& params) {
  const int dsn_spikes = out.spikes_dsn_r + out.spikes_dsn_l;
  const int lgmd_spikes = out.spikes_lgmd1 + out.spikes_lgmd2;

  MotionPattern pattern;
  if (lgmd_spikes == 0 && dsn_spikes == 0) {
    pattern = MotionPattern::Irrelevant;
  } else if (out.spikes_lgmd1 > 0 && out.spikes_lgmd2 == 0 &&
             dsn_spikes == 0) {
    // Only the broader looming detector fires: the object is withdrawing.
    pattern = MotionPattern::Recession;
  } else if (lgmd_spikes >= dsn_spikes) {
    // Ties go to the looming side: avoidance is the safety-critical call.
    pattern = MotionPattern::PotentialLooming;
  } else {
    pattern = out.u_dsn > 0.0 ? MotionPattern::TranslationRight
                              : MotionPattern::TranslationLeft;
  }

  // The window tracks looming-detector spike frequency on every frame the
  // looming side wins or ties the rate competition — recession frames
  // included, because during an approach the broad detector fires well
  // before the dark-selective one joins, and that early evidence should
  // count the moment the competition tips to looming. When the direction
  // pair out-spikes the looming pair the losing side is fully inhibited and
  // contributes nothing. Only the looming label can cash the window in, so
  // a withdrawing object never confirms.
  push_window(state, lgmd_spikes >= dsn_spikes ? lgmd_spikes : 0);
  if (pattern == MotionPattern::PotentialLooming &&
      confirm_collision(state, params)) {
    pattern = MotionPattern::LoomingConfirmed;
  }
  return pattern;
}

bool confirm_collision(const RecognizerState& state, const Params& params) {
  const int total = std::accumulate(state.lgmd_spike_window.begin(),
                                    state.lgmd_spike_window.end(), 0);
  return total >= params.n_sp;
}

double turning_response(double u_dsn, RecognizerState& state, double dt_ms,
                        const Params& params) {
  const double target = params.sigma1 * u_dsn;
  const double alpha = dt_ms / (params.tau3 + dt_ms);
  state.tr_prime += alpha * (target - state.tr_prime);
  return state.tr_prime;
}

BehaviorState step_behavior(MotionPattern pattern,
                            const BehaviorState& current, std::mt19937& rng,
                            const Params& params) {
  if (current.kind == BehaviorKind::Avoiding &&
      current.turn_progress < params.avoid_turn_radians) {
    return current;  // maneuver runs to completion regardless of input
  }
  switch (pattern) {
    case MotionPattern::LoomingConfirmed: {
      BehaviorState next;
      next.kind = BehaviorKind::Avoiding;
      next.turn_progress = 0.0;
      next.turn_dir = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
      return next;
    }
    case MotionPattern::TranslationRight:
    case MotionPattern::TranslationLeft:
      return BehaviorState{BehaviorKind::Tracking, 0.0, 1};
    default:
      return BehaviorState{BehaviorKind::Wandering, 0.0, 1};
  }
}

std::string to_string(MotionPattern p) {
  switch (p) {
    case MotionPattern::Irrelevant:
      return "irrelevant";
    case MotionPattern::Recession:
      return "recession";
    case MotionPattern::PotentialLooming:
      return "potential_looming";
    case MotionPattern::LoomingConfirmed:
      return "looming_confirmed";
    case MotionPattern::TranslationRight:
      return "translation_right";
    case MotionPattern::TranslationLeft:
      return "translation_left";
  }
  return "unknown";
}

std::string to_string(BehaviorKind k) {
  switch (k) {
    case BehaviorKind::Wandering:
      return "wandering";
    case BehaviorKind::Tracking:
      return "tracking";
    case BehaviorKind::Avoiding:
      return "avoiding";
  }
  return "unknown";
}

}  // namespace bugeye
