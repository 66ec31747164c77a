#pragma once

#include <filesystem>
#include <string>

#include "sasoca/ca.hpp"

namespace sasoca {

// Plain-text space-time rendering, '.' = state 0, '#' = state 1.
// 1-D: one row per step. 2-D: a "t=<k>" block of rows per step. 3-D: per
// step, one block per slice along the first dimension.
std::string ascii_render(const Trajectory& traj);

// Binary PGM (P5), pixel 0 = state 0, pixel 255 = state 1.
void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& pixels);

// Writes a trajectory as PGM images under dir with the given stem:
//   1-D: <stem>.pgm, one image, row t = configuration at step t;
//   2-D: <stem>_t<step>.pgm per step plus <stem>_sheet.pgm, a tiled
//        contact sheet of all steps with 1-pixel gray separators;
//   3-D: <stem>_t<step>_z<slice>.pgm, one image per first-dimension slice
//        per step.
void export_trajectory_pgm(const std::filesystem::path& dir,
                           const std::string& stem, const Trajectory& traj);

// Writes ascii_render(traj) to <dir>/<stem>.txt.
void export_trajectory_ascii(const std::filesystem::path& dir,
                             const std::string& stem, const Trajectory& traj);

}  // namespace sasoca
