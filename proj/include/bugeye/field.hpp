#pragma once
// Dense grid primitives shared by every stage of the vision pipeline:
// 8-bit camera frames, real-valued signal fields, rectified ON/OFF channel
// pairs and the small square convolution kernels of the lamina/medulla.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bugeye {

struct Frame {
  int w = 0, h = 0;
  std::vector<std::uint8_t> px;  // row-major, y*w + x

  Frame() = default;
  Frame(int width, int height, std::uint8_t fill = 0)
      : w(width), h(height),
        px(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  std::uint8_t& at(int x, int y) { return px[static_cast<std::size_t>(y) * w + x]; }
  std::uint8_t at(int x, int y) const { return px[static_cast<std::size_t>(y) * w + x]; }
  bool same_dims(int width, int height) const { return w == width && h == height; }
};

struct SignalField {
  int w = 0, h = 0;
  std::vector<double> v;  // row-major, y*w + x

  SignalField() = default;
  SignalField(int width, int height, double fill = 0.0)
      : w(width), h(height),
        v(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  double& at(int x, int y) { return v[static_cast<std::size_t>(y) * w + x]; }
  double at(int x, int y) const { return v[static_cast<std::size_t>(y) * w + x]; }
  std::size_t size() const { return v.size(); }
  void zero() { v.assign(v.size(), 0.0); }
};

// Parallel luminance-increment / luminance-decrement channels. Both fields are
// non-negative and disjoint (per-cell product zero) at the rectifier output.
struct OnOffField {
  SignalField on, off;

  OnOffField() = default;
  OnOffField(int w, int h) : on(w, h), off(w, h) {}
};

// Odd-sided square kernel, taps row-major. at(dx, dy) indexes offsets in
// [-radius, radius].
struct Kernel {
  int radius = 0;
  std::vector<double> taps;

  int side() const { return 2 * radius + 1; }
  double at(int dx, int dy) const {
    return taps[static_cast<std::size_t>(dy + radius) * side() + (dx + radius)];
  }
  double sum() const;
};

// 2D convolution with replicate-edge padding (border pixels clamp to the rim
// instead of reading phantom zeros, which would register as edges).
SignalField convolve(const SignalField& in, const Kernel& k);

double field_sum(const SignalField& f);

// Horizontal mirror (column c -> w-1-c); used by the translation stimuli and
// the antisymmetry tests.
Frame mirror_h(const Frame& f);
SignalField mirror_h(const SignalField& f);

}  // namespace bugeye
