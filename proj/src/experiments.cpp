#include "rbfreg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rbfreg/format.hpp"
#include "rbfreg/rhombus.hpp"

namespace rbfreg {

namespace {

std::string svg_point(const Point2& p) { return format_fixed(p.x()) + "," + format_fixed(p.y()); }

// Three strokes through the centre, 60 degrees apart.
std::string asterisk_path(const Point2& centre, double radius) {
  std::string d;
  for (int k = 0; k < 3; ++k) {
    const double angle = k * std::numbers::pi / 3.0;
    const Eigen::Vector2d arm(radius * std::cos(angle), radius * std::sin(angle));
    d += (k == 0 ? "M" : " M") + svg_point(centre + arm) + " L" + svg_point(centre - arm);
  }
  return d;
}

}  // namespace

void GridSpec::validate() const {
  if (!origin.allFinite() || !(extent.x() > 0.0) || !(extent.y() > 0.0) || !extent.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "grid extent must be positive and finite");
  }
  if (lines < 2 || samples_per_line < 2) {
    throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 lines and 2 samples per line");
  }
}

DeformedGrid deform_grid(const Transformation& t, const GridSpec& grid) {
  grid.validate();
  DeformedGrid out;
  out.polylines.reserve(2 * static_cast<std::size_t>(grid.lines));
  const int n = grid.samples_per_line;
  for (int axis = 0; axis < 2; ++axis) {
    for (int i = 0; i < grid.lines; ++i) {
      std::vector<Point2> line;
      line.reserve(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        // axis 0: horizontal line i, sampled along x; axis 1: vertical line i.
        const Point2 p = axis == 0
                             ? lattice_point(grid.origin, grid.extent, grid.lines, n, i, k)
                             : lattice_point(grid.origin, grid.extent, n, grid.lines, k, i);
        line.push_back(map_point(t, p));
      }
      out.polylines.push_back(std::move(line));
    }
  }
  return out;
}

DeformedGrid with_landmarks(DeformedGrid grid, const LandmarkPairs& pairs) {
  grid.source_landmarks = pairs.source;
  grid.target_landmarks = pairs.target;
  return grid;
}

std::string render_svg(const DeformedGrid& grid) {
  Eigen::Vector2d lo = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector2d hi = -lo;
  auto grow = [&](const Point2& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  };
  for (const auto& line : grid.polylines) std::for_each(line.begin(), line.end(), grow);
  std::for_each(grid.source_landmarks.begin(), grid.source_landmarks.end(), grow);
  std::for_each(grid.target_landmarks.begin(), grid.target_landmarks.end(), grow);
  if (!lo.allFinite() || !hi.allFinite()) {
    lo.setZero();
    hi.setOnes();
  }
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9});
  const double margin = 0.05 * span;
  lo.array() -= margin;
  hi.array() += margin;
  const Eigen::Vector2d size = hi - lo;
  const double stroke = 0.002 * span;
  const double marker = 0.015 * span;
  const int pixel_width = 600;
  const int pixel_height = static_cast<int>(std::lround(pixel_width * size.y() / size.x()));

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << pixel_width
      << "\" height=\"" << pixel_height << "\" viewBox=\"" << format_fixed(lo.x()) << ' '
      << format_fixed(-hi.y()) << ' ' << format_fixed(size.x()) << ' ' << format_fixed(size.y())
      << "\">\n";
  // World y points up; flip once for the whole drawing.
  svg << "<g transform=\"scale(1,-1)\">\n";
  svg << "<g fill=\"none\" stroke=\"#1f3b73\" stroke-width=\"" << format_fixed(stroke) << "\">\n";
  for (const auto& line : grid.polylines) {
    svg << "<polyline points=\"";
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (k) svg << ' ';
      svg << svg_point(line[k]);
    }
    svg << "\"/>\n";
  }
  svg << "</g>\n";
  for (const auto& p : grid.source_landmarks) {
    svg << "<circle class=\"source\" cx=\"" << format_fixed(p.x()) << "\" cy=\"" << format_fixed(p.y())
        << "\" r=\"" << format_fixed(marker) << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\""
        << format_fixed(2 * stroke) << "\"/>\n";
  }
  for (const auto& p : grid.target_landmarks) {
    svg << "<path class=\"target\" d=\"" << asterisk_path(p, marker)
        << "\" fill=\"none\" stroke=\"#117a43\" stroke-width=\"" << format_fixed(2 * stroke) << "\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

std::string export_field_csv(const Transformation& t, const GridSpec& grid, FieldKind what) {
  grid.validate();
  const bool cusp = has_cusp_at_origin(t.kernel().family);
  std::ostringstream out;
  out << (what == FieldKind::Displacement ? "x,y,v1,v2\n" : "x,y,v1\n");
  for (int i = 0; i < grid.lines; ++i) {
    for (int j = 0; j < grid.lines; ++j) {
      const Point2 p = lattice_point(grid.origin, grid.extent, grid.lines, grid.lines, i, j);
      out << format_sig(p.x()) << ',' << format_sig(p.y()) << ',';
      if (what == FieldKind::Displacement) {
        const Eigen::Vector2d d = displace(t, p);
        out << format_sig(d.x()) << ',' << format_sig(d.y());
      } else if (!(cusp && nearest_node_distance(t, p) <= kCuspSkipRadius)) {
        out << format_sig(jacobian(t, p).determinant());
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string_view preset_name(PresetName name) {
  switch (name) {
    case PresetName::Fig1: return "fig1";
    case PresetName::Fig2: return "fig2";
    case PresetName::Fig3: return "fig3";
    case PresetName::Table1: return "table1";
  }
  return "unknown";
}

std::optional<PresetName> parse_preset(std::string_view name) {
  for (auto p : {PresetName::Fig1, PresetName::Fig2, PresetName::Fig3, PresetName::Table1}) {
    if (preset_name(p) == name) return p;
  }
  return std::nullopt;
}

RunManifest preset(PresetName name) {
  RunManifest m;
  m.name = name;
  switch (name) {
    case PresetName::Fig1:
      m.pairs.source = {Point2(0.5, 0.5)};
      m.pairs.target = {Point2(0.6, 0.7)};
      m.kernels = {{KernelFamily::Wendland31, 0.6}, {KernelFamily::Wu12, 0.58},
                   {KernelFamily::Gaussian, 0.25},  {KernelFamily::Matern12, 0.22},
                   {KernelFamily::Matern32, 0.105}, {KernelFamily::Matern52, 0.08}};
      m.delta = 0.2;
      m.scan_resolution = 101;
      break;
    case PresetName::Fig3:
      m.pairs.source = {Point2(0.5, 0.65), Point2(0.35, 0.5), Point2(0.65, 0.5), Point2(0.5, 0.35)};
      m.pairs.target = {Point2(0.5, 0.65), Point2(0.35, 0.5), Point2(0.65, 0.5), Point2(0.5, 0.25)};
      m.kernels = {{KernelFamily::Wendland31, 100.0}, {KernelFamily::Wu12, 100.0},
                   {KernelFamily::Gaussian, 50.0},     {KernelFamily::Matern12, 100.0},
                   {KernelFamily::Matern32, 100.0},    {KernelFamily::Matern52, 100.0}};
      m.delta = 0.1;
      m.scan_resolution = 101;
      break;
    case PresetName::Fig2: {
      // The fig3 rhombus (half-diagonal 0.15, shift 0.1) rescaled to the unit rhombus.
      constexpr double half_diagonal = 0.15;
      m.kernels = {{KernelFamily::Wendland31, 100.0 / half_diagonal},
                   {KernelFamily::Wu12, 100.0 / half_diagonal},
                   {KernelFamily::Gaussian, 50.0 / half_diagonal},
                   {KernelFamily::Matern12, 100.0 / half_diagonal},
                   {KernelFamily::Matern32, 100.0 / half_diagonal},
                   {KernelFamily::Matern52, 100.0 / half_diagonal}};
      m.delta = 0.1 / half_diagonal;
      m.y_max = 5.0;
      m.samples = 400;
      break;
    }
    case PresetName::Table1:
      for (auto family : kAllFamilies) {
        for (auto mode : {BoundMode::Paper, BoundMode::Strict}) {
          m.table_rows.push_back(min_support_ratio(family, mode));
        }
      }
      break;
  }
  return m;
}

PresetOutput write_preset(const RunManifest& manifest, const std::filesystem::path& outdir) {
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory " + outdir.string());

  PresetOutput result;
  std::ostringstream summary;
  const std::string prefix(preset_name(manifest.name));

  switch (manifest.name) {
    case PresetName::Fig1:
    case PresetName::Fig3: {
      std::ostringstream scan_csv;
      scan_csv << "kernel,locality,min_det,argmin_x,argmin_y,negative_count,skipped_nodes,"
                  "condition_estimate\n";
      summary << "kernel,locality,min_det,negative_count\n";
      const int res = manifest.scan_resolution;
      char label = 'a';
      for (const auto& kernel : manifest.kernels) {
        const auto [t, diag] = fit(manifest.pairs, kernel);
        const auto svg = render_svg(with_landmarks(deform_grid(t, manifest.grid), manifest.pairs));
        const auto path = outdir / (prefix + "_" + label++ + "_" + std::string(family_name(kernel.family)) + ".svg");
        write_file_atomic(path, svg);
        result.files.push_back(path);

        const auto report = scan_jacobian(t, manifest.grid.origin, manifest.grid.extent, res, res);
        scan_csv << family_name(kernel.family) << ',' << format_sig(kernel.locality) << ','
                 << format_sig(report.min_det) << ',' << format_sig(report.argmin.x()) << ','
                 << format_sig(report.argmin.y()) << ',' << report.negative_count << ','
                 << report.skipped_nodes << ',' << format_sig(diag.condition_estimate, 3) << '\n';
        summary << family_name(kernel.family) << ',' << format_sig(kernel.locality) << ','
                << format_sig(report.min_det) << ',' << report.negative_count << '\n';
      }
      const auto scan_path = outdir / (prefix + "_scan.csv");
      write_file_atomic(scan_path, scan_csv.str());
      result.files.push_back(scan_path);
      break;
    }
    case PresetName::Fig2: {
      const auto profiles = fig2_profile(manifest.kernels, manifest.delta, manifest.y_max, manifest.samples);
      const auto path = outdir / "fig2_profiles.csv";
      write_file_atomic(path, profiles_csv(profiles));
      result.files.push_back(path);
      summary << "kernel,locality,min_exact,max_exact\n";
      for (const auto& p : profiles) {
        const auto [mn, mx] = std::minmax_element(p.exact.begin(), p.exact.end());
        summary << family_name(p.kernel.family) << ',' << format_sig(p.kernel.locality) << ','
                << format_sig(*mn) << ',' << format_sig(*mx) << '\n';
      }
      break;
    }
    case PresetName::Table1: {
      std::ostringstream csv;
      csv << "family,parameter,mode,ratio\n";
      for (const auto& row : manifest.table_rows) {
        csv << family_name(row.family) << ','
            << (row.family == KernelFamily::Gaussian ? "sigma" : "c") << ',' << mode_name(row.mode)
            << ',' << format_sig(row.ratio) << '\n';
      }
      const auto path = outdir / "table1.csv";
      write_file_atomic(path, csv.str());
      result.files.push_back(path);
      summary << csv.str();
      break;
    }
  }
  result.summary = summary.str();
  return result;
}

}  // namespace rbfreg
