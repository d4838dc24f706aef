#pragma once
// One robot's full perception-to-action loop: vision pipeline, ablation
// masking, pattern recognition, behavior dispatch and wheel powers.

#include <random>
#include <string>

#include "bugeye/motor.hpp"
#include "bugeye/neurons.hpp"
#include "bugeye/params.hpp"
#include "bugeye/recognizer.hpp"

namespace bugeye {

// Which neuron set participates in the competition. Masked neurons are held
// at their baseline outputs (potential 0.5 for looming detectors, 0 for the
// direction pair) and contribute no spikes.
enum class ModelVariant {
  Lgmd2Only,  // "lgmd2": the dark-looming detector alone
  LgmdPair,   // "lgmds": both looming detectors, no direction pair
  Full,       // "full": looming detectors plus direction pair
};

// Parses "lgmd2" / "lgmds" / "full"; throws std::runtime_error otherwise.
ModelVariant parse_model(const std::string& name);
std::string to_string(ModelVariant m);

// Forces masked neurons back to baseline potentials and zero spikes.
NeuronFrameOutput apply_model_mask(const NeuronFrameOutput& out,
                                   ModelVariant model);

// Everything one perception-action step produces, for telemetry and the
// arena loop.
struct AgentStep {
  NeuronFrameOutput neurons;  // after masking
  MotionPattern pattern = MotionPattern::Irrelevant;
  BehaviorKind behavior = BehaviorKind::Wandering;
  bool entered_avoiding = false;  // true on the frame a maneuver starts
  double tr_prime = 0.0;
  WheelPowers wheels;
};

class RobotAgent {
 public:
  RobotAgent(const Params& params, ModelVariant model, std::uint32_t seed);

  // Consumes one camera frame: perceive, classify, dispatch behavior, and
  // produce wheel powers. The turning response follows the direction
  // detector only on translation frames and relaxes to zero otherwise.
  AgentStep step(const Frame& frame);

  const BehaviorState& behavior() const { return behavior_; }
  ModelVariant model() const { return model_; }

 private:
  Params params_;
  ModelVariant model_;
  Pipeline pipeline_;
  RecognizerState recognizer_;
  BehaviorState behavior_;
  std::mt19937 rng_;
};

}  // namespace bugeye
