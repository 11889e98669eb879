#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "meshref/camera.hpp"
#include "meshref/geometry.hpp"
#include "meshref/image.hpp"

namespace meshref {

// --- meshes ---------------------------------------------------------------

// Loads ASCII/binary-little-endian PLY or ASCII OBJ, by extension.
// Vertices and triangular faces only; anything else is skipped and reported
// through `warnings` when non-null.
TriMesh load_mesh(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

// ASCII PLY with full double precision (bit-exact reload).
void save_mesh_ply(const TriMesh& mesh, const std::filesystem::path& path);
void save_mesh_obj(const TriMesh& mesh, const std::filesystem::path& path);

// --- cameras ----------------------------------------------------------------

// One camera per line: id fx fy cx cy width height r11..r33 t1 t2 t3
// ('#' starts a comment). Images are not part of the file.
std::vector<CameraView> load_cameras(const std::filesystem::path& path);
void save_cameras(const std::vector<CameraView>& cams, const std::filesystem::path& path);

// Attaches images from `dir` to the cameras, trying cam_<id>.pgm/.png then
// <id>.pgm/.png. Throws IoError when an image is missing.
void attach_images(std::vector<CameraView>& cams, const std::filesystem::path& dir);

// --- images -----------------------------------------------------------------

// 8-bit PGM (binary P5 or ASCII P2) or grayscale/color PNG, by extension;
// color is reduced to luminance 0.299 R + 0.587 G + 0.114 B.
Image load_image(const std::filesystem::path& path);
void save_pgm(const Image& img, const std::filesystem::path& path);
void save_png8(const Image& img, const std::filesystem::path& path);

// 32-bit float PFM ("Pf", negative scale = little endian).
void save_pfm(const std::vector<float>& values, int width, int height, const std::filesystem::path& path);
std::vector<float> load_pfm(const std::filesystem::path& path, int& width, int& height);

// 16-bit grayscale PNG of values normalized to [lo, hi].
void save_png16_normalized(const std::vector<double>& values, int width, int height,
                           double lo, double hi, const std::filesystem::path& path);

} // namespace meshref
