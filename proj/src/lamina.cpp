#include "bugeye/lamina.hpp"

#include <cmath>
#include <stdexcept>

namespace bugeye {

LaminaState make_lamina_state(const Params& p) {
  LaminaState st;
  st.prev_luminance = Frame(p.frame_w, p.frame_h, 0);
  const SignalField zero(p.frame_w, p.frame_h, 0.0);
  st.p_history.assign(static_cast<std::size_t>(p.n_i), zero);
  st.d_on = zero;
  st.d_off = zero;
  st.a_coeffs.resize(static_cast<std::size_t>(p.n_i));
  for (int i = 1; i <= p.n_i; ++i) {
    st.a_coeffs[static_cast<std::size_t>(i - 1)] =
        1.0 / (1.0 + std::exp(p.u * i));
  }
  return st;
}

SignalField retina_highpass(const Frame& frame, LaminaState& state) {
  if (!state.prev_luminance.same_dims(frame.w, frame.h)) {
    throw std::runtime_error("retina_highpass: frame dimensions do not match "
                             "the pipeline state");
  }
  if (!state.primed) {
    // First frame: treat the previous frame as identical and the residual
    // history as silent, so the output is exactly zero.
    state.prev_luminance = frame;
    state.primed = true;
  }

  const int n = static_cast<int>(state.p_history.size());
  SignalField out;
  out.w = frame.w;
  out.h = frame.h;
  out.v.resize(frame.px.size());
  for (std::size_t idx = 0; idx < frame.px.size(); ++idx) {
    double acc = static_cast<double>(frame.px[idx]) -
                 static_cast<double>(state.prev_luminance.px[idx]);
    for (int i = 1; i <= n; ++i) {
      const int slot = (state.head - (i - 1) + n) % n;
      acc += state.a_coeffs[static_cast<std::size_t>(i - 1)] *
             state.p_history[static_cast<std::size_t>(slot)].v[idx];
    }
    out.v[idx] = acc;
  }

  // Advance: the slot after `head` holds the oldest entry; overwrite it and
  // make it the new most-recent.
  state.head = (state.head + 1) % n;
  state.p_history[static_cast<std::size_t>(state.head)] = out;
  state.prev_luminance = frame;
  return out;
}

SignalField lamina_bandpass(const SignalField& p, const Params& params) {
  SignalField center = convolve(p, params.w_e);
  const SignalField surround = convolve(p, params.w_i);
  for (std::size_t i = 0; i < center.v.size(); ++i) {
    center.v[i] -= surround.v[i];
  }
  return center;
}

OnOffField rectify_split(const SignalField& p_prime) {
  OnOffField out;
  out.on.w = out.off.w = p_prime.w;
  out.on.h = out.off.h = p_prime.h;
  out.on.v.resize(p_prime.v.size());
  out.off.v.resize(p_prime.v.size());
  for (std::size_t i = 0; i < p_prime.v.size(); ++i) {
    const double v = p_prime.v[i];
    out.on.v[i] = v > 0.0 ? v : 0.0;
    out.off.v[i] = v < 0.0 ? -v : 0.0;
  }
  return out;
}

namespace {

void fdsr_channel(const SignalField& x, SignalField& d, SignalField& out,
                  double alpha_attack, double alpha_release) {
  out.w = x.w;
  out.h = x.h;
  out.v.resize(x.v.size());
  for (std::size_t i = 0; i < x.v.size(); ++i) {
    const double xi = x.v[i];
    const double dprev = d.v[i];
    const double alpha = xi >= dprev ? alpha_attack : alpha_release;
    const double dnew = dprev + alpha * (xi - dprev);
    d.v[i] = dnew;
    const double f = xi - dnew;
    out.v[i] = f > 0.0 ? f : 0.0;
  }
}

}  // namespace

OnOffField fdsr_adapt(const OnOffField& rectified, LaminaState& state,
                      double dt_ms, const Params& params) {
  const double alpha_attack = dt_ms / (params.tau1 + dt_ms);
  const double alpha_release = dt_ms / (params.tau2 + dt_ms);
  OnOffField out;
  fdsr_channel(rectified.on, state.d_on, out.on, alpha_attack, alpha_release);
  fdsr_channel(rectified.off, state.d_off, out.off, alpha_attack,
               alpha_release);
  return out;
}

}  // namespace bugeye
