#include "bugeye/agent.hpp"

#include <stdexcept>

namespace bugeye {

ModelVariant parse_model(const std::string& name) {
  if (name == "lgmd2") return ModelVariant::Lgmd2Only;
  if (name == "lgmds") return ModelVariant::LgmdPair;
  if (name == "full") return ModelVariant::Full;
  throw std::runtime_error("unknown model '" + name +
                           "' (expected lgmd2, lgmds, or full)");
}

std::string to_string(ModelVariant m) {
  switch (m) {
    case ModelVariant::Lgmd2Only:
      return "lgmd2";
    case ModelVariant::LgmdPair:
      return "lgmds";
    case ModelVariant::Full:
      return "full";
  }
  return "unknown";
}

NeuronFrameOutput apply_model_mask(const NeuronFrameOutput& out,
                                   ModelVariant model) {
  NeuronFrameOutput masked = out;
  if (model == ModelVariant::Lgmd2Only) {
    masked.u_lgmd1 = 0.5;
    masked.spikes_lgmd1 = 0;
  }
  if (model != ModelVariant::Full) {
    masked.u_dsn = 0.0;
    masked.spikes_dsn_r = 0;
    masked.spikes_dsn_l = 0;
  }
  return masked;
}

RobotAgent::RobotAgent(const Params& params, ModelVariant model,
                       std::uint32_t seed)
    : params_(params),
      model_(model),
      pipeline_(params),
      recognizer_(make_recognizer_state(params)),
      rng_(seed) {}

AgentStep RobotAgent::step(const Frame& frame) {
  AgentStep result;
  const double dt_ms = pipeline_.dt_ms();

  result.neurons = apply_model_mask(pipeline_.process(frame), model_);
  result.pattern = classify(result.neurons, recognizer_, params_);

  const bool translating = result.pattern == MotionPattern::TranslationRight ||
                           result.pattern == MotionPattern::TranslationLeft;
  result.tr_prime = turning_response(
      translating ? result.neurons.u_dsn : 0.0, recognizer_, dt_ms, params_);

  const BehaviorState before = behavior_;
  behavior_ = step_behavior(result.pattern, behavior_, rng_, params_);
  result.entered_avoiding = behavior_.kind == BehaviorKind::Avoiding &&
                            before.kind != BehaviorKind::Avoiding;
  result.behavior = behavior_.kind;
  result.wheels = motor_power(behavior_, result.tr_prime, params_);

  if (behavior_.kind == BehaviorKind::Avoiding) {
    // In-place spin at the configured wheel speed; track the heading swept
    // this frame so the maneuver ends after the configured angle.
    const double omega =
        2.0 * params_.avoid_wheel_speed / params_.robot_diameter;
    behavior_.turn_progress += omega * (dt_ms / 1000.0);
  }
  return result;
}

}  // namespace bugeye
