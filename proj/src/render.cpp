#include "sasoca/render.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sasoca/errors.hpp"

namespace sasoca {

namespace {

char glyph(std::uint8_t b) { return b ? '#' : '.'; }

std::uint8_t pixel(std::uint8_t b) { return b ? 255 : 0; }

std::string tag(const std::string& prefix, int value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%04d", prefix.c_str(), value);
  return buf;
}

}  // namespace

std::string ascii_render(const Trajectory& traj) {
  if (traj.frames.empty()) return "";
  const auto& dims = traj.frames[0].dims;
  std::ostringstream out;

  if (dims.size() == 1) {
    for (const Configuration& f : traj.frames) {
      for (std::uint8_t b : f.bits) out << glyph(b);
      out << '\n';
    }
    return out.str();
  }

  const int rows = dims.size() == 2 ? dims[0] : dims[1];
  const int cols = dims.size() == 2 ? dims[1] : dims[2];
  const int slices = dims.size() == 2 ? 1 : dims[0];
  for (std::size_t t = 0; t < traj.frames.size(); ++t) {
    out << "t=" << t << '\n';
    const auto& bits = traj.frames[t].bits;
    for (int z = 0; z < slices; ++z) {
      if (dims.size() == 3) out << "z=" << z << '\n';
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          out << glyph(bits[(static_cast<std::size_t>(z) * rows + r) * cols + c]);
        }
        out << '\n';
      }
    }
    out << '\n';
  }
  return out.str();
}

void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& pixels) {
  if (width < 1 || height < 1 ||
      pixels.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("write_pgm: pixel buffer does not match size");
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "P5\n" << width << ' ' << height << "\n255\n";
  f.write(reinterpret_cast<const char*>(pixels.data()),
          static_cast<std::streamsize>(pixels.size()));
  if (!f) throw IoError("write failed: " + path.string());
}

void export_trajectory_pgm(const std::filesystem::path& dir,
                           const std::string& stem, const Trajectory& traj) {
  if (traj.frames.empty()) throw std::invalid_argument("empty trajectory");
  const auto& dims = traj.frames[0].dims;

  if (dims.size() == 1) {
    const int w = dims[0];
    const int h = static_cast<int>(traj.frames.size());
    std::vector<std::uint8_t> px;
    px.reserve(static_cast<std::size_t>(w) * h);
    for (const Configuration& f : traj.frames) {
      for (std::uint8_t b : f.bits) px.push_back(pixel(b));
    }
    write_pgm(dir / (stem + ".pgm"), w, h, px);
    return;
  }

  if (dims.size() == 2) {
    const int h = dims[0], w = dims[1];
    for (std::size_t t = 0; t < traj.frames.size(); ++t) {
      std::vector<std::uint8_t> px;
      px.reserve(static_cast<std::size_t>(w) * h);
      for (std::uint8_t b : traj.frames[t].bits) px.push_back(pixel(b));
      write_pgm(dir / (stem + "_" + tag("t", static_cast<int>(t)) + ".pgm"), w, h, px);
    }
    // Contact sheet: frames tiled left-to-right, top-to-bottom in a roughly
    // square grid with 1-pixel mid-gray separators.
    const int n = static_cast<int>(traj.frames.size());
    const int grid_cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    const int grid_rows = (n + grid_cols - 1) / grid_cols;
    const int sheet_w = grid_cols * (w + 1) - 1;
    const int sheet_h = grid_rows * (h + 1) - 1;
    std::vector<std::uint8_t> sheet(
        static_cast<std::size_t>(sheet_w) * sheet_h, 128);
    for (int t = 0; t < n; ++t) {
      const int gx = (t % grid_cols) * (w + 1);
      const int gy = (t / grid_cols) * (h + 1);
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
          sheet[static_cast<std::size_t>(gy + r) * sheet_w + gx + c] =
              pixel(traj.frames[t].bits[static_cast<std::size_t>(r) * w + c]);
        }
      }
    }
    write_pgm(dir / (stem + "_sheet.pgm"), sheet_w, sheet_h, sheet);
    return;
  }

  const int slices = dims[0], h = dims[1], w = dims[2];
  for (std::size_t t = 0; t < traj.frames.size(); ++t) {
    for (int z = 0; z < slices; ++z) {
      std::vector<std::uint8_t> px;
      px.reserve(static_cast<std::size_t>(w) * h);
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
          px.push_back(pixel(
              traj.frames[t].bits[(static_cast<std::size_t>(z) * h + r) * w + c]));
        }
      }
      write_pgm(dir / (stem + "_" + tag("t", static_cast<int>(t)) + "_" +
                       tag("z", z) + ".pgm"),
                w, h, px);
    }
  }
}

void export_trajectory_ascii(const std::filesystem::path& dir,
                             const std::string& stem, const Trajectory& traj) {
  std::ofstream f(dir / (stem + ".txt"));
  if (!f) throw IoError("cannot open " + (dir / (stem + ".txt")).string());
  f << ascii_render(traj);
  if (!f) throw IoError("write failed: " + (dir / (stem + ".txt")).string());
}

}  // namespace sasoca
