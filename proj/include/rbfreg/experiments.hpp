#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rbfreg/registration.hpp"
#include "rbfreg/topology.hpp"

namespace rbfreg {

struct GridSpec {
  Point2 origin = Point2::Zero();
  Eigen::Vector2d extent = Eigen::Vector2d::Ones();
  int lines = 21;
  int samples_per_line = 201;

  void validate() const;
};

struct DeformedGrid {
  /// Images of the horizontal lines (bottom to top), then the vertical ones.
  std::vector<std::vector<Point2>> polylines;
  std::vector<Point2> source_landmarks;
  std::vector<Point2> target_landmarks;
};

DeformedGrid deform_grid(const Transformation& t, const GridSpec& grid);

/// Attaches landmark markers to a deformed grid for rendering.
DeformedGrid with_landmarks(DeformedGrid grid, const LandmarkPairs& pairs);

/// SVG 1.1 document: grid polylines, circles at sources, asterisk paths at
/// targets. Coordinates carry exactly six decimals; output is deterministic.
std::string render_svg(const DeformedGrid& grid);

enum class FieldKind { Displacement, Determinant };

/// "x,y,v1[,v2]" over the lines x lines lattice of the grid rectangle
/// (y outer, x inner). Determinants at skipped M1/2 nodes are left empty.
std::string export_field_csv(const Transformation& t, const GridSpec& grid, FieldKind what);

/// 8-bit grayscale raster in row-major order, row 0 at the top.
struct RasterImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint8_t> pixels;

  RasterImage() = default;
  RasterImage(int w, int h, std::uint8_t fill = 0);

  [[nodiscard]] std::uint8_t at(int col, int row) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  std::uint8_t& at(int col, int row) { return pixels[static_cast<std::size_t>(row) * width + col]; }
  void validate() const;
};

/// Reads portable graymap data (P2 or P5, maxval <= 255).
RasterImage parse_pgm(std::string_view bytes);
RasterImage read_pgm(const std::filesystem::path& path);
std::string encode_pgm(const RasterImage& img, bool binary = true);

/// Backward warp: fits the inverse map (targets -> sources), sends every
/// output pixel centre ((col + 0.5)/width, (row + 0.5)/height) through it and
/// samples bilinearly with edge clamping.
RasterImage warp_image(const RasterImage& img, const LandmarkPairs& pairs, const KernelSpec& kernel);

enum class PresetName { Fig1, Fig2, Fig3, Table1 };

std::string_view preset_name(PresetName name);
std::optional<PresetName> parse_preset(std::string_view name);

/// Complete configuration of one reproduction run.
struct RunManifest {
  PresetName name = PresetName::Fig1;
  LandmarkPairs pairs;
  std::vector<KernelSpec> kernels;
  GridSpec grid;
  /// Landmark shift: the one-landmark Delta for fig1, the rhombus shift for fig2.
  double delta = 0.0;
  double y_max = 0.0;
  int samples = 0;
  int scan_resolution = 0;
  std::vector<SupportBound> table_rows;
};

RunManifest preset(PresetName name);

struct PresetOutput {
  std::vector<std::filesystem::path> files;
  /// Human-readable summary for the output stream.
  std::string summary;
};

/// Runs the preset and writes its files into `outdir` (created if missing).
PresetOutput write_preset(const RunManifest& manifest, const std::filesystem::path& outdir);

}  // namespace rbfreg
