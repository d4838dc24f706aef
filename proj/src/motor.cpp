#include "bugeye/motor.hpp"

#include <algorithm>

namespace bugeye {

WheelPowers motor_power(const BehaviorState& behavior, double tr_prime,
                        const Params& params) {
  if (behavior.kind == BehaviorKind::Avoiding) {
    // In-place spin: positive turn direction means the heading angle grows,
    // which the kinematics produce when the left wheel leads.
    const double s = params.avoid_wheel_speed;
    if (behavior.turn_dir > 0) {
      return WheelPowers{-s, s};
    }
    return WheelPowers{s, -s};
  }
  const double forward = params.g_v * params.v_i;
  const double steer = params.g_w * tr_prime;
  WheelPowers w;
  w.p_r = std::clamp(forward - steer, -params.max_speed, params.max_speed);
  w.p_l = std::clamp(forward + steer, -params.max_speed, params.max_speed);
  return w;
}

}  // namespace bugeye
