#include "bugeye/field.hpp"

#include <algorithm>

namespace bugeye {

double Kernel::sum() const {
  double s = 0.0;
  for (double t : taps) s += t;
  return s;
}

SignalField convolve(const SignalField& in, const Kernel& k) {
  const int w = in.w, h = in.h, r = k.radius, side = k.side();
  SignalField out(w, h);
  for (int y = 0; y < h; ++y) {
    const bool y_interior = (y >= r && y < h - r);
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      if (y_interior && x >= r && x < w - r) {
        // Interior fast path: no index clamping. Tap order matches the
        // clamped path so results are bit-identical everywhere.
        for (int dy = -r; dy <= r; ++dy) {
          const double* row = &in.v[static_cast<std::size_t>(y + dy) * w + x];
          const double* kr = &k.taps[static_cast<std::size_t>(dy + r) * side + r];
          for (int dx = -r; dx <= r; ++dx) acc += row[dx] * kr[dx];
        }
      } else {
        for (int dy = -r; dy <= r; ++dy) {
          const int yy = std::clamp(y + dy, 0, h - 1);
          for (int dx = -r; dx <= r; ++dx) {
            const int xx = std::clamp(x + dx, 0, w - 1);
            acc += in.at(xx, yy) * k.at(dx, dy);
          }
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

double field_sum(const SignalField& f) {
  double s = 0.0;
  for (double x : f.v) s += x;
  return s;
}

Frame mirror_h(const Frame& f) {
  Frame out(f.w, f.h);
  for (int y = 0; y < f.h; ++y)
    for (int x = 0; x < f.w; ++x) out.at(x, y) = f.at(f.w - 1 - x, y);
  return out;
}

SignalField mirror_h(const SignalField& f) {
  SignalField out(f.w, f.h);
  for (int y = 0; y < f.h; ++y)
    for (int x = 0; x < f.w; ++x) out.at(x, y) = f.at(f.w - 1 - x, y);
  return out;
}

}  // namespace bugeye
