#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "bugeye/field.hpp"
#include "bugeye/neurons.hpp"
#include "bugeye/params.hpp"

using namespace bugeye;

namespace {

constexpr double kDt = 33.3;

Params small_params(int w = 8, int h = 8) {
  Params p;
  p.frame_w = w;
  p.frame_h = h;
  return p;
}

OnOffField random_onoff(int w, int h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  OnOffField f(w, h);
  for (double& v : f.on.v) v = dist(rng);
  for (double& v : f.off.v) v = dist(rng);
  return f;
}

// Reference convolution written as the plainest possible nested loop.
SignalField conv_ref(const SignalField& in, const Kernel& k) {
  SignalField out(in.w, in.h);
  for (int y = 0; y < in.h; ++y) {
    for (int x = 0; x < in.w; ++x) {
      double acc = 0.0;
      for (int dy = -k.radius; dy <= k.radius; ++dy) {
        for (int dx = -k.radius; dx <= k.radius; ++dx) {
          const int sx = std::clamp(x + dx, 0, in.w - 1);
          const int sy = std::clamp(y + dy, 0, in.h - 1);
          acc += k.at(dx, dy) * in.at(sx, sy);
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

// Reference looming-detector medulla, straight from the definition.
OnOffField lgmd_ref(const OnOffField& f, const OnOffField& dprime,
                    const Params& p) {
  const SignalField spread_on = conv_ref(dprime.on, p.w_l);
  const SignalField spread_off = conv_ref(dprime.off, p.w_l);
  OnOffField s(f.on.w, f.on.h);
  for (std::size_t i = 0; i < s.on.size(); ++i) {
    s.on.v[i] = std::max(f.on.v[i] - p.w1 * spread_on.v[i], 0.0);
    s.off.v[i] = std::max(spread_off.v[i] - p.w2 * f.off.v[i], 0.0);
  }
  return s;
}

// Reference direction-selective ensemble, straight from the definition.
SignalField dsn_ref(const OnOffField& f, const OnOffField& dprime,
                    const Params& p) {
  SignalField out(f.on.w, f.on.h);
  for (int y = 0; y < out.h; ++y) {
    for (int x = 0; x < out.w; ++x) {
      double acc = 0.0;
      for (int step = 1; step <= p.n_c; ++step) {
        const int xi = x + step * p.d;
        if (xi >= out.w) break;
        acc += dprime.on.at(x, y) * f.on.at(xi, y) -
               dprime.on.at(xi, y) * f.on.at(x, y);
        acc += dprime.off.at(x, y) * f.off.at(xi, y) -
               dprime.off.at(xi, y) * f.off.at(x, y);
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("delayed fields follow a first-order low-pass") {
  const Params p = small_params(4, 4);
  MedullaState st = make_medulla_state(p);

  OnOffField quiet(4, 4);
  OnOffField d0 = delay_fields(quiet, st, kDt, p.tau_s);
  CHECK(d0.on.at(1, 1) == 0.0);

  OnOffField step(4, 4);
  for (double& v : step.on.v) v = 1.0;
  const OnOffField d1 = delay_fields(step, st, kDt, p.tau_s);
  // alpha = 33.3 / (30 + 33.3).
  CHECK(d1.on.at(2, 2) == doctest::Approx(0.5260663507109005).epsilon(1e-13));
  CHECK(d1.off.at(2, 2) == 0.0);

  // A tiny constant hugs the input: alpha -> 1.
  MedullaState fast = make_medulla_state(p);
  const OnOffField d2 = delay_fields(step, fast, kDt, 1e-9);
  CHECK(d2.on.at(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("looming medulla passes fresh excitation and spread inhibition") {
  const Params p = small_params();

  OnOffField f(8, 8);
  OnOffField dprime(8, 8);
  f.on.at(4, 4) = 1.0;
  OnOffField s = lgmd_medulla(f, dprime, p);
  CHECK(s.on.at(4, 4) == 1.0);  // nothing delayed yet, no inhibition
  CHECK(s.off.at(4, 4) == 0.0);

  // OFF side: uniform delayed excitation spreads with total gain 1.5 at an
  // interior cell; the direct path subtracts w2 of the fresh signal.
  OnOffField f2(8, 8);
  OnOffField d2(8, 8);
  f2.off.at(4, 4) = 1.0;
  for (double& v : d2.off.v) v = 1.0;
  s = lgmd_medulla(f2, d2, p);
  CHECK(s.off.at(4, 4) == doctest::Approx(1.5 - 0.6).epsilon(1e-12));
  CHECK(s.off.at(2, 2) == doctest::Approx(1.5).epsilon(1e-12));

  // Strong delayed inhibition on the ON side clamps at zero.
  OnOffField f3(8, 8);
  OnOffField d3(8, 8);
  f3.on.at(4, 4) = 0.1;
  for (double& v : d3.on.v) v = 10.0;
  s = lgmd_medulla(f3, d3, p);
  CHECK(s.on.at(4, 4) == 0.0);
}

TEST_CASE("looming medulla matches the reference loops bitwise") {
  const Params p = small_params();
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    const OnOffField f = random_onoff(8, 8, 100 + seed);
    const OnOffField dprime = random_onoff(8, 8, 200 + seed);
    const OnOffField got = lgmd_medulla(f, dprime, p);
    const OnOffField want = lgmd_ref(f, dprime, p);
    for (std::size_t i = 0; i < got.on.size(); ++i) {
      CHECK(got.on.v[i] == want.on.v[i]);
      CHECK(got.off.v[i] == want.off.v[i]);
    }
  }
}

TEST_CASE("channel mixer weighs ON, OFF and their product") {
  OnOffField s(2, 1);
  s.on.at(0, 0) = 1.0;
  s.off.at(0, 0) = 1.0;
  s.on.at(1, 0) = 2.0;
  s.off.at(1, 0) = 0.5;

  const SignalField both = lgmd_combine(s, 0.5, 0.5, 0.0);
  CHECK(both.at(0, 0) == doctest::Approx(1.0));
  CHECK(both.at(1, 0) == doctest::Approx(1.25));

  const SignalField off_only = lgmd_combine(s, 0.0, 1.0, 0.0);
  CHECK(off_only.at(0, 0) == doctest::Approx(1.0));
  CHECK(off_only.at(1, 0) == doctest::Approx(0.5));

  const SignalField with_product = lgmd_combine(s, 0.0, 0.0, 2.0);
  CHECK(with_product.at(1, 0) == doctest::Approx(2.0));
}

TEST_CASE("direction ensemble is silent on static scenes") {
  const Params p = small_params();
  OnOffField f(8, 8);
  OnOffField dprime = random_onoff(8, 8, 3);  // history without fresh input
  const SignalField out = dsn_medulla(f, dprime, p);
  for (double v : out.v) CHECK(v == 0.0);
}

TEST_CASE("direction ensemble matches the reference loops bitwise") {
  Params p = small_params();
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    p.d = 2 + static_cast<int>(seed % 3);
    p.n_c = 2 + static_cast<int>((seed / 3) % 3);
    const OnOffField f = random_onoff(8, 8, 300 + seed);
    const OnOffField dprime = random_onoff(8, 8, 400 + seed);
    const SignalField got = dsn_medulla(f, dprime, p);
    const SignalField want = dsn_ref(f, dprime, p);
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got.v[i] == want.v[i]);
    }
  }
}

TEST_CASE("mirroring the world flips the direction ensemble's sign") {
  const Params p = small_params(10, 6);
  const OnOffField f = random_onoff(10, 6, 5);
  const OnOffField dprime = random_onoff(10, 6, 6);

  OnOffField fm;
  fm.on = mirror_h(f.on);
  fm.off = mirror_h(f.off);
  OnOffField dm;
  dm.on = mirror_h(dprime.on);
  dm.off = mirror_h(dprime.off);

  const double fwd = field_sum(dsn_medulla(f, dprime, p));
  const double rev = field_sum(dsn_medulla(fm, dm, p));
  CHECK(fwd == doctest::Approx(-rev).epsilon(1e-12));
}

TEST_CASE("membrane potential saturates through the sigmoid") {
  SignalField f(4, 4, 0.0);
  const int n = 16;

  // Zero drive sits at the resting values.
  CHECK(lobula_activate(f, n, 0.2, 0.0, false) == doctest::Approx(0.5));
  CHECK(lobula_activate(f, n, 0.2, 0.0, true) == doctest::Approx(0.0));

  // Spatial sum equal to n*k_sig lands exactly one sigmoid unit up.
  f.at(0, 0) = n * 0.2;
  CHECK(lobula_activate(f, n, 0.2, 0.0, false) ==
        doctest::Approx(0.7310585786300049).epsilon(1e-14));
  CHECK(lobula_activate(f, n, 0.2, 0.0, true) ==
        doctest::Approx(2.0 * (0.7310585786300049 - 0.5)).epsilon(1e-13));

  // The signed form is odd, the unsigned form ignores sign.
  f.at(0, 0) = -n * 0.2;
  CHECK(lobula_activate(f, n, 0.2, 0.0, false) ==
        doctest::Approx(0.7310585786300049).epsilon(1e-14));
  CHECK(lobula_activate(f, n, 0.2, 0.0, true) ==
        doctest::Approx(-2.0 * (0.7310585786300049 - 0.5)).epsilon(1e-13));

  // delta_c rides the unsigned output down.
  f.at(0, 0) = 0.0;
  CHECK(lobula_activate(f, n, 0.2, 0.25, false) == doctest::Approx(0.25));

  // Monotone in the drive and bounded. Large drives round to exactly 1.0
  // in double precision, so the ceiling is inclusive.
  double prev = 0.4;
  for (double x : {0.0, 1.0, 4.0, 20.0, 1000.0}) {
    f.at(0, 0) = x;
    const double u = lobula_activate(f, n, 0.2, 0.0, false);
    CHECK(u >= prev);
    CHECK(u <= 1.0);
    prev = u;
  }
}

TEST_CASE("spike encoder counts exponentially above threshold") {
  CHECK(spike_encode(0.5, 4.0, 0.7) == 0);
  CHECK(spike_encode(0.7, 4.0, 0.7) == 1);  // e^0 rounds down to exactly one
  CHECK(spike_encode(0.875, 4.0, 0.7) == 2);

  int prev = 0;
  for (double u = 0.0; u <= 0.999; u += 0.01) {
    const int s = spike_encode(u, 4.0, 0.7);
    CHECK(s >= prev);
    prev = s;
  }
}

TEST_CASE("pipeline rests at baseline on a blank scene") {
  Params p = small_params(16, 12);
  Pipeline pipe(p);
  const Frame frame(16, 12, 128);
  for (int t = 0; t < 4; ++t) {
    const NeuronFrameOutput out = pipe.process(frame);
    CHECK(out.u_lgmd1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.u_lgmd2 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.u_dsn == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(out.spikes_lgmd1 == 0);
    CHECK(out.spikes_lgmd2 == 0);
    CHECK(out.spikes_dsn_r == 0);
    CHECK(out.spikes_dsn_l == 0);
  }
}

TEST_CASE("pipeline output stays inside its declared ranges") {
  Params p = small_params(16, 12);
  Pipeline pipe(p);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> lum(0, 255);
  for (int t = 0; t < 30; ++t) {
    Frame f(16, 12);
    for (auto& px : f.px) px = static_cast<std::uint8_t>(lum(rng));
    const NeuronFrameOutput out = pipe.process(f);
    CHECK(out.u_lgmd1 >= 0.5 - p.delta_c);
    CHECK(out.u_lgmd1 < 1.0);
    CHECK(out.u_lgmd2 >= 0.5 - p.delta_c);
    CHECK(out.u_lgmd2 < 1.0);
    CHECK(out.u_dsn > -1.0);
    CHECK(out.u_dsn < 1.0);
    CHECK(out.spikes_lgmd1 >= 0);
    CHECK(out.spikes_lgmd2 >= 0);
    // Only one direction channel may fire, and only with matching sign.
    CHECK((out.spikes_dsn_r == 0 || out.spikes_dsn_l == 0));
    if (out.u_dsn <= 0.0) CHECK(out.spikes_dsn_r == 0);
    if (out.u_dsn >= 0.0) CHECK(out.spikes_dsn_l == 0);
  }
}

TEST_CASE("a rightward-moving edge drives the direction ensemble positive") {
  Params p = small_params(12, 4);
  Pipeline pipe(p);

  double last_u = 0.0;
  for (int t = 0; t < 6; ++t) {
    Frame f(12, 4);
    // Dark bar whose leading edge advances one column per frame.
    for (int y = 0; y < 4; ++y) {
      for (int x = 0; x < 12; ++x) {
        f.at(x, y) = x <= 2 + t ? 40 : 200;
      }
    }
    last_u = pipe.process(f).u_dsn;
  }
  CHECK(last_u > 0.0);
}

TEST_CASE("zero ON weight disconnects the ON channel from a looming detector") {
  // With theta1 = 0 and the OFF channels empty the drive field is identically
  // zero, so the potential stays at rest no matter what the ON channels do.
  const Params p = small_params();
  OnOffField f = random_onoff(8, 8, 21);
  OnOffField dprime = random_onoff(8, 8, 22);
  f.off.zero();
  dprime.off.zero();
  const OnOffField s = lgmd_medulla(f, dprime, p);
  const SignalField drive = lgmd_combine(s, 0.0, p.lgmd2_theta2, p.theta3);
  const double u = lobula_activate(drive, 64, p.k_sig, p.delta_c, false);
  CHECK(u == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(spike_encode(u, p.k_sp, p.t_sp_lgmd) == 0);
}
