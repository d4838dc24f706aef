#include "bugeye/neurons.hpp"

#include <cmath>
#include <cstddef>

namespace bugeye {

MedullaState make_medulla_state(const Params& p) {
  MedullaState st;
  st.dprime_on.w = st.dprime_off.w = p.frame_w;
  st.dprime_on.h = st.dprime_off.h = p.frame_h;
  st.dprime_on.v.assign(static_cast<std::size_t>(p.frame_w) * p.frame_h, 0.0);
  st.dprime_off.v = st.dprime_on.v;
  return st;
}

namespace {

void lowpass_into(const SignalField& x, SignalField& state, double alpha) {
  for (std::size_t i = 0; i < x.v.size(); ++i) {
    state.v[i] += alpha * (x.v[i] - state.v[i]);
  }
}

}  // namespace

OnOffField delay_fields(const OnOffField& f, MedullaState& state, double dt_ms,
                        double tau_s) {
  const double alpha = dt_ms / (tau_s + dt_ms);
  lowpass_into(f.on, state.dprime_on, alpha);
  lowpass_into(f.off, state.dprime_off, alpha);
  OnOffField out;
  out.on = state.dprime_on;
  out.off = state.dprime_off;
  return out;
}

OnOffField lgmd_medulla(const OnOffField& f, const OnOffField& dprime,
                        const Params& params) {
  const SignalField inhib_on = convolve(dprime.on, params.w_l);
  const SignalField spread_off = convolve(dprime.off, params.w_l);
  OnOffField s;
  s.on.w = s.off.w = f.on.w;
  s.on.h = s.off.h = f.on.h;
  s.on.v.resize(f.on.v.size());
  s.off.v.resize(f.off.v.size());
  for (std::size_t i = 0; i < f.on.v.size(); ++i) {
    const double on = f.on.v[i] - params.w1 * inhib_on.v[i];
    const double off = spread_off.v[i] - params.w2 * f.off.v[i];
    s.on.v[i] = on > 0.0 ? on : 0.0;
    s.off.v[i] = off > 0.0 ? off : 0.0;
  }
  return s;
}

SignalField lgmd_combine(const OnOffField& s, double theta1, double theta2,
                         double theta3) {
  SignalField out;
  out.w = s.on.w;
  out.h = s.on.h;
  out.v.resize(s.on.v.size());
  for (std::size_t i = 0; i < s.on.v.size(); ++i) {
    out.v[i] = theta1 * s.on.v[i] + theta2 * s.off.v[i] +
               theta3 * s.on.v[i] * s.off.v[i];
  }
  return out;
}

SignalField dsn_medulla(const OnOffField& f, const OnOffField& dprime,
                        const Params& params) {
  SignalField out;
  out.w = f.on.w;
  out.h = f.on.h;
  out.v.assign(f.on.v.size(), 0.0);
  const int w = f.on.w;
  const int h = f.on.h;
  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int step = 1; step <= params.n_c; ++step) {
        const int xi = x + step * params.d;
        if (xi >= w) break;
        const std::size_t here = row + static_cast<std::size_t>(x);
        const std::size_t there = row + static_cast<std::size_t>(xi);
        acc += dprime.on.v[here] * f.on.v[there] -
               dprime.on.v[there] * f.on.v[here];
        acc += dprime.off.v[here] * f.off.v[there] -
               dprime.off.v[there] * f.off.v[here];
      }
      out.v[row + static_cast<std::size_t>(x)] = acc;
    }
  }
  return out;
}

double lobula_activate(const SignalField& field, int n, double k_sig,
                       double delta_c, bool is_signed) {
  const double x = field_sum(field);
  const double mag = std::abs(x);
  const double sig = 1.0 / (1.0 + std::exp(-mag / (n * k_sig)));
  if (!is_signed) {
    return sig - delta_c;
  }
  const double folded = 2.0 * (sig - 0.5);
  return x < 0.0 ? -folded : folded;
}

int spike_encode(double u, double k_sp, double t_sp) {
  const double rate = std::exp(k_sp * (u - t_sp));
  // u < 1 and k_sp <= 6 keep this tiny, but guard the cast anyway.
  if (rate >= 1e9) return 1000000000;
  return static_cast<int>(std::floor(rate));
}

Pipeline::Pipeline(const Params& params)
    : params_(params),
      lamina_(make_lamina_state(params)),
      medulla_(make_medulla_state(params)) {
  validate_params(params_);
}

NeuronFrameOutput Pipeline::process(const Frame& frame) {
  const double dt = dt_ms();
  const SignalField p = retina_highpass(frame, lamina_);
  const SignalField p_prime = lamina_bandpass(p, params_);
  const OnOffField rectified = rectify_split(p_prime);
  const OnOffField f = fdsr_adapt(rectified, lamina_, dt, params_);
  const OnOffField dprime = delay_fields(f, medulla_, dt, params_.tau_s);

  const OnOffField s = lgmd_medulla(f, dprime, params_);
  const SignalField s1 = lgmd_combine(s, params_.lgmd1_theta1,
                                      params_.lgmd1_theta2, params_.theta3);
  const SignalField s2 = lgmd_combine(s, params_.lgmd2_theta1,
                                      params_.lgmd2_theta2, params_.theta3);
  const SignalField dsn = dsn_medulla(f, dprime, params_);

  const int n = params_.frame_w * params_.frame_h;
  NeuronFrameOutput out;
  out.u_lgmd1 =
      lobula_activate(s1, n, params_.k_sig, params_.delta_c, /*signed=*/false);
  out.u_lgmd2 =
      lobula_activate(s2, n, params_.k_sig, params_.delta_c, /*signed=*/false);
  out.u_dsn =
      lobula_activate(dsn, n, params_.k_sig, params_.delta_c, /*signed=*/true);

  out.spikes_lgmd1 = spike_encode(out.u_lgmd1, params_.k_sp, params_.t_sp_lgmd);
  out.spikes_lgmd2 = spike_encode(out.u_lgmd2, params_.k_sp, params_.t_sp_lgmd);
  const int dsn_spikes =
      spike_encode(std::abs(out.u_dsn), params_.k_sp, params_.t_sp_dsn);
  if (out.u_dsn > 0.0) {
    out.spikes_dsn_r = dsn_spikes;
  } else if (out.u_dsn < 0.0) {
    out.spikes_dsn_l = dsn_spikes;
  }
  return out;
}

}  // namespace bugeye
