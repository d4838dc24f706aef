#pragma once
// Differential wheel powers from the behavior state and turning response.

#include "bugeye/params.hpp"
#include "bugeye/recognizer.hpp"

namespace bugeye {

// Wheel rim speeds in cm/s; |p_r|, |p_l| <= Params.max_speed after clamping.
struct WheelPowers {
  double p_r = 0.0;
  double p_l = 0.0;
};

// Wandering/Tracking: p_r = g_v*v_i - g_w*TR', p_l = g_v*v_i + g_w*TR',
// clamped to +/-max_speed. Avoiding: opposite wheel signs at the configured
// avoidance speed, spinning in the state's chosen direction.
WheelPowers motor_power(const BehaviorState& behavior, double tr_prime,
                        const Params& params);

}  // namespace bugeye
