#pragma once
// Binary 8-bit grayscale image files (portable graymap, P5) and the numbered
// frame-sequence convention used by every tool here.

#include <string>
#include <vector>

#include "bugeye/field.hpp"

namespace bugeye {

// Writes one frame as a P5 graymap with maxval 255. Throws on I/O failure.
void write_pgm(const std::string& path, const Frame& frame);

// Reads a P5 graymap with maxval 255. Throws std::runtime_error on malformed
// input or an unsupported variant.
Frame read_pgm(const std::string& path);

// Zero-padded sequence name: frame_000042.pgm
std::string frame_filename(int index);

// All *.pgm files in a directory, lexicographically sorted, loaded in order.
// Throws if the directory holds none.
std::vector<Frame> load_frame_dir(const std::string& dir);

}  // namespace bugeye
