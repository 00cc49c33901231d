#include "rbfreg/cli.hpp"

#include <CLI11.hpp>
#include <functional>
#include <string>
#include <vector>

#include "rbfreg/experiments.hpp"
#include "rbfreg/format.hpp"
#include "rbfreg/rhombus.hpp"
#include "rbfreg/topology.hpp"

namespace rbfreg::cli {

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
      return kIoError;
    case ErrorKind::SingularSystem:
    case ErrorKind::SingularGradient:
    case ErrorKind::DegenerateConfiguration:
    case ErrorKind::InternalConsistency:
      return kNumericalFailure;
    default:
      return kUsageError;
  }
}

struct KernelOptions {
  std::string kernel;
  double locality = 0.0;

  [[nodiscard]] KernelSpec spec() const {
    const auto family = parse_family(kernel);
    if (!family) throw Error(ErrorKind::Usage, "unknown kernel '" + kernel + "'");
    KernelSpec s{*family, locality};
    s.validate();
    return s;
  }
};

void add_kernel_options(CLI::App* cmd, KernelOptions& opts, bool with_locality = true) {
  cmd->add_option("--kernel", opts.kernel,
                  "gaussian | wendland31 | wu12 | matern12 | matern32 | matern52")
      ->required();
  if (with_locality) {
    cmd->add_option("--locality", opts.locality, "support size c (sigma for gaussian)")->required();
  }
}

void print_warnings(const SolveDiagnostics& diag, std::ostream& err) {
  for (const auto& w : diag.warnings) err << "warning: " << w << '\n';
}

std::string extension_of(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  std::string lower;
  for (char c : ext) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Landmark-based RBF registration with topology-preservation checks", "rbfreg"};
  app.require_subcommand(1);

  KernelOptions kopts;
  std::string landmarks_path;
  std::string out_path;
  std::string in_path;
  double r = 0.0;
  double delta = 0.0;
  std::string mode = "paper";
  int grid = 101;
  int lines = 21;
  int samples = 201;
  std::vector<double> origin = {0.0, 0.0};
  std::vector<double> extent = {1.0, 1.0};
  std::string field = "displacement";
  bool ascii = false;
  double y_max = 5.0;
  int profile_samples = 400;
  std::string preset_arg;
  std::string outdir;

  std::function<int()> action;

  auto* kernel_eval = app.add_subcommand("kernel-eval", "print Phi(r) and dPhi/dr");
  add_kernel_options(kernel_eval, kopts);
  kernel_eval->add_option("--r", r, "distance")->required();
  kernel_eval->callback([&] {
    action = [&] {
      const auto spec = kopts.spec();
      out << "value=" << format_sig(eval(spec, r)) << '\n';
      out << "derivative=" << format_sig(radial_derivative(spec, r)) << '\n';
      if (r == 0.0 && has_cusp_at_origin(spec.family)) {
        err << "note: matern12 is not differentiable at r = 0; printed the radial limit\n";
      }
      return int(kSuccess);
    };
  });

  auto* fit_cmd = app.add_subcommand("fit", "fit a transformation and print its coefficients");
  fit_cmd->add_option("--landmarks", landmarks_path, "landmark file (sx sy tx ty per line)")->required();
  add_kernel_options(fit_cmd, kopts);
  fit_cmd->callback([&] {
    action = [&] {
      const auto [t, diag] = fit(read_landmarks(landmarks_path), kopts.spec());
      print_warnings(diag, err);
      out << "method=" << method_name(diag.method) << '\n'
          << "condition_estimate=" << format_sig(diag.condition_estimate) << '\n'
          << "max_residual=" << format_sig(diag.max_residual) << '\n'
          << "node,x,y,alpha1,alpha2\n";
      for (Eigen::Index j = 0; j < t.size(); ++j) {
        out << j << ',' << format_sig(t.nodes()(j, 0)) << ',' << format_sig(t.nodes()(j, 1)) << ','
            << format_sig(t.coefficients()(j, 0)) << ',' << format_sig(t.coefficients()(j, 1)) << '\n';
      }
      return int(kSuccess);
    };
  });

  auto add_grid_options = [&](CLI::App* cmd) {
    cmd->add_option("--origin", origin, "lower-left corner x y")->expected(2);
    cmd->add_option("--extent", extent, "width height")->expected(2);
  };
  auto grid_rect = [&] {
    return std::pair<Point2, Eigen::Vector2d>{Point2(origin[0], origin[1]),
                                              Eigen::Vector2d(extent[0], extent[1])};
  };

  auto* warp_grid = app.add_subcommand("warp-grid", "deform a regular grid (SVG) or sample a field (CSV)");
  warp_grid->add_option("--landmarks", landmarks_path)->required();
  add_kernel_options(warp_grid, kopts);
  warp_grid->add_option("--out", out_path, "output .svg or .csv")->required();
  warp_grid->add_option("--lines", lines, "grid lines per axis (CSV: lattice points per axis)");
  warp_grid->add_option("--samples", samples, "samples per grid line");
  warp_grid->add_option("--field", field, "CSV field: displacement | det");
  add_grid_options(warp_grid);
  warp_grid->callback([&] {
    action = [&] {
      const auto pairs = read_landmarks(landmarks_path);
      const auto [t, diag] = fit(pairs, kopts.spec());
      print_warnings(diag, err);
      const auto [o, e] = grid_rect();
      const GridSpec g{o, e, lines, samples};
      const auto ext = extension_of(out_path);
      if (ext == ".svg") {
        write_file_atomic(out_path, render_svg(with_landmarks(deform_grid(t, g), pairs)));
      } else if (ext == ".csv") {
        FieldKind kind;
        if (field == "displacement") {
          kind = FieldKind::Displacement;
        } else if (field == "det") {
          kind = FieldKind::Determinant;
        } else {
          throw Error(ErrorKind::Usage, "--field must be displacement or det");
        }
        write_file_atomic(out_path, export_field_csv(t, g, kind));
      } else {
        throw Error(ErrorKind::Usage, "--out must end in .svg or .csv");
      }
      out << "wrote " << out_path << '\n';
      return int(kSuccess);
    };
  });

  auto* warp_img = app.add_subcommand("warp-image", "backward-warp a PGM image");
  warp_img->add_option("--in", in_path, "input P2/P5 graymap")->required();
  warp_img->add_option("--out", out_path, "output graymap")->required();
  warp_img->add_option("--landmarks", landmarks_path, "landmarks in normalized [0,1]^2 image coordinates")
      ->required();
  add_kernel_options(warp_img, kopts);
  warp_img->add_flag("--ascii", ascii, "write P2 instead of P5");
  warp_img->callback([&] {
    action = [&] {
      const auto img = read_pgm(in_path);
      const auto warped = warp_image(img, read_landmarks(landmarks_path), kopts.spec());
      write_file_atomic(out_path, encode_pgm(warped, !ascii));
      out << "wrote " << out_path << '\n';
      return int(kSuccess);
    };
  });

  auto* scan = app.add_subcommand("jacobian-scan", "scan det J on a lattice");
  scan->add_option("--landmarks", landmarks_path)->required();
  add_kernel_options(scan, kopts);
  scan->add_option("--grid", grid, "lattice points per axis")->required();
  add_grid_options(scan);
  scan->callback([&] {
    action = [&] {
      const auto [t, diag] = fit(read_landmarks(landmarks_path), kopts.spec());
      print_warnings(diag, err);
      const auto [o, e] = grid_rect();
      const auto report = scan_jacobian(t, o, e, grid, grid);
      out << "grid_rows=" << report.grid_rows << '\n'
          << "grid_cols=" << report.grid_cols << '\n'
          << "min_det=" << format_sig(report.min_det) << '\n'
          << "argmin_x=" << format_sig(report.argmin.x()) << '\n'
          << "argmin_y=" << format_sig(report.argmin.y()) << '\n'
          << "negative_count=" << report.negative_count << '\n'
          << "skipped_nodes=" << report.skipped_nodes << '\n';
      return int(kSuccess);
    };
  });

  auto* min_support = app.add_subcommand("min-support", "minimum locality for a one-landmark shift");
  add_kernel_options(min_support, kopts, false);
  min_support->add_option("--delta", delta, "landmark shift")->required();
  min_support->add_option("--mode", mode, "paper | strict");
  min_support->callback([&] {
    action = [&] {
      const auto family = parse_family(kopts.kernel);
      if (!family) throw Error(ErrorKind::Usage, "unknown kernel '" + kopts.kernel + "'");
      const auto m = parse_mode(mode);
      if (!m) throw Error(ErrorKind::Usage, "--mode must be paper or strict");
      if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "--delta must be positive");
      const auto bound = min_support_ratio(*family, *m);
      out << "ratio=" << format_sig(bound.ratio) << '\n'
          << "c_min=" << format_sig(bound.ratio * delta) << '\n';
      return int(kSuccess);
    };
  });

  auto* check = app.add_subcommand(
      "check",
      "exit 0 if the one-landmark topology guarantee holds (strict bound), 3 otherwise");
  add_kernel_options(check, kopts);
  check->add_option("--delta", delta, "landmark shift max(dx, dy)")->required();
  check->callback([&] {
    action = [&] {
      const bool ok = check_one_landmark(delta, kopts.spec());
      out << (ok ? "guaranteed" : "not guaranteed") << '\n';
      return int(ok ? kSuccess : kTopologyNotGuaranteed);
    };
  });

  auto* rhombus = app.add_subcommand("rhombus", "four-landmark rhombus model and det J(0, y) profile");
  add_kernel_options(rhombus, kopts);
  rhombus->add_option("--delta", delta, "downward shift of the lower vertex")->required();
  rhombus->add_option("--out", out_path, "profile CSV")->required();
  rhombus->add_option("--y-max", y_max, "upper end of the y range");
  rhombus->add_option("--samples", profile_samples, "number of y samples");
  rhombus->callback([&] {
    action = [&] {
      const auto spec = kopts.spec();
      const auto model = build_rhombus(spec, delta);
      print_warnings(model.fit_diagnostics, err);
      out << "alpha=" << format_sig(model.alpha_adj) << '\n' << "beta=" << format_sig(model.beta_opp) << '\n';
      for (int i = 0; i < 4; ++i) out << "c2_" << (i + 1) << '=' << format_sig(model.c2(i)) << '\n';
      const auto profiles = fig2_profile({spec}, delta, y_max, profile_samples);
      write_file_atomic(out_path, profiles_csv(profiles));
      out << "wrote " << out_path << '\n';
      return int(kSuccess);
    };
  });

  auto* reproduce = app.add_subcommand("reproduce", "write every file of a reproduction preset");
  reproduce->add_option("preset", preset_arg, "fig1 | fig2 | fig3 | table1")->required();
  reproduce->add_option("--outdir", outdir, "output directory")->required();
  reproduce->callback([&] {
    action = [&] {
      const auto name = parse_preset(preset_arg);
      if (!name) throw Error(ErrorKind::Usage, "unknown preset '" + preset_arg + "'");
      const auto result = write_preset(preset(*name), outdir);
      out << result.summary;
      for (const auto& f : result.files) out << "wrote " << f.generic_string() << '\n';
      return int(kSuccess);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto selected = app.get_subcommands();
    out << (selected.empty() ? app.help() : selected.front()->help());
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    return action ? action() : int(kUsageError);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace rbfreg::cli
