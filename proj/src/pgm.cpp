#include "bugeye/pgm.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace bugeye {

void write_pgm(const std::string& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_pgm: cannot open " + path);
  }
  out << "P5\n" << frame.w << " " << frame.h << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.px.data()),
            static_cast<std::streamsize>(frame.px.size()));
  if (!out) {
    throw std::runtime_error("write_pgm: write failed for " + path);
  }
}

namespace {

// Reads one whitespace-delimited token, skipping '#' comment lines.
std::string next_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  return tok;
}

}  // namespace

Frame read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_pgm: cannot open " + path);
  }
  if (next_token(in) != "P5") {
    throw std::runtime_error("read_pgm: not a binary graymap: " + path);
  }
  Frame frame;
  try {
    frame.w = std::stoi(next_token(in));
    frame.h = std::stoi(next_token(in));
    const int maxval = std::stoi(next_token(in));
    if (maxval != 255) {
      throw std::runtime_error("read_pgm: only maxval 255 supported: " + path);
    }
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("read_pgm: malformed header: " + path);
  }
  if (frame.w <= 0 || frame.h <= 0) {
    throw std::runtime_error("read_pgm: bad dimensions: " + path);
  }
  frame.px.resize(static_cast<std::size_t>(frame.w) * frame.h);
  in.read(reinterpret_cast<char*>(frame.px.data()),
          static_cast<std::streamsize>(frame.px.size()));
  if (in.gcount() != static_cast<std::streamsize>(frame.px.size())) {
    throw std::runtime_error("read_pgm: truncated pixel data: " + path);
  }
  return frame;
}

std::string frame_filename(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06d.pgm", index);
  return buf;
}

std::vector<Frame> load_frame_dir(const std::string& dir) {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      names.push_back(entry.path().string());
    }
  }
  if (names.empty()) {
    throw std::runtime_error("load_frame_dir: no .pgm frames in " + dir);
  }
  std::sort(names.begin(), names.end());
  std::vector<Frame> frames;
  frames.reserve(names.size());
  for (const std::string& name : names) {
    frames.push_back(read_pgm(name));
  }
  return frames;
}

}  // namespace bugeye
