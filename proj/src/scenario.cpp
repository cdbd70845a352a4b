// Copyright 2026 The vdwforce Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vdw/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "vdw/casimir_polder.hpp"
#include "vdw/force.hpp"
#include "vdw/parallel.hpp"

namespace vdw {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> force_header(bool vector_columns) {
  const std::vector<std::string> quantities = {"F_A_res", "F_A_nonres", "F_A_total", "F_B_res",
                                               "F_B_total"};
  std::vector<std::string> h = {"r_m", "t_s"};
  for (const auto& q : quantities) {
    if (vector_columns) {
      for (const char* axis : {"x", "y", "z"}) h.push_back(q + "_" + axis + "_N");
    } else {
      h.push_back(q + "_N");
    }
  }
  h.push_back("quad_err_est");
  return h;
}

void write_atomically(const std::vector<std::pair<fs::path, std::string>>& files) {
  std::vector<fs::path> staged;
  try {
    for (const auto& [path, content] : files) {
      fs::path tmp = path;
      tmp += ".partial";
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw Error("cannot write " + tmp.string());
      staged.push_back(tmp);
      out << content;
      out.close();
      if (!out) throw Error("failed writing " + tmp.string());
    }
    for (std::size_t i = 0; i < files.size(); ++i) fs::rename(staged[i], files[i].first);
  } catch (...) {
    std::error_code ec;
    for (const auto& p : staged) fs::remove(p, ec);
    throw;
  }
}

std::string number(double v) { return fmt::format("{:.17g}", v == 0.0 ? 0.0 : v); }

}  // namespace

ScanTable run_force_scan(const ScenarioConfig& config, std::size_t workers) {
  if (!config.atom_b) throw ValidationError("force scan needs two atoms");
  const bool by_distance = config.command == Subcommand::ForceVsDistance;
  const std::vector<double> scan = config.scan_values();
  const bool vector_columns = !std::holds_alternative<FreeSpace>(config.environment);

  ScanTable table;
  table.header = force_header(vector_columns);
  table.rows.resize(scan.size());
  std::vector<double> errors(scan.size(), 0.0);

  const Vec3 origin = config.atom_a.species.position();
  const AtomicSpecies& a = config.atom_a.species;
  parallel_for(scan.size(), workers, [&](std::size_t i) {
    const double r = by_distance ? scan[i] : *config.distance;
    const double t = by_distance ? config.time.value_or(0.0) : scan[i];
    const AtomicSpecies b = config.atom_b->species.at(origin + r * config.direction);
    const ForceBreakdown f = total_force(a, config.atom_a.initial, b, config.atom_b->initial,
                                         config.environment, t, config.quadrature);
    std::vector<double> row = {r, t};
    const std::array<Vec3, 5> forces = {f.on_A_resonant, f.on_A_nonresonant, f.on_A(),
                                        f.on_B_resonant, f.on_B()};
    for (std::size_t k = 0; k < forces.size(); ++k) {
      if (vector_columns) {
        for (int c = 0; c < 3; ++c) row.push_back(forces[k][c]);
      } else {
        const Vec3 outward = k < 3 ? -config.direction : config.direction;
        row.push_back(forces[k].dot(outward));
      }
    }
    row.push_back(f.quadrature_error);
    errors[i] = f.quadrature_error;
    table.rows[i] = std::move(row);
  });
  table.max_quadrature_error = *std::max_element(errors.begin(), errors.end());
  return table;
}

ScanTable run_cp_consistency(const ScenarioConfig& config, std::size_t workers) {
  const auto* body = std::get_if<DiluteBody>(&config.environment);
  if (!body) throw ValidationError("cp-consistency needs a dilute body");
  const std::vector<double> times = config.scan_values();
  ScanTable table;
  table.header = {"t_s",         "Fx_single_N",   "Fy_single_N",   "Fz_single_N",
                  "Fx_pairwise_N", "Fy_pairwise_N", "Fz_pairwise_N", "rel_diff"};
  const AtomicSpecies& atom = config.atom_a.species;
  for (double t : times) {
    const PopulationState pops = evolve_populations(atom, config.atom_a.initial, t);
    const Vec3 single = single_atom_cp_resonant(atom, pops, *body, t);
    const Vec3 pairwise = pairwise_cp_sum(atom, pops, *body, t, workers);
    const double scale = std::max(single.norm(), pairwise.norm());
    const double rel = scale > 0.0 ? (single - pairwise).norm() / scale : 0.0;
    table.rows.push_back({t, single.x(), single.y(), single.z(), pairwise.x(), pairwise.y(),
                          pairwise.z(), rel});
  }
  return table;
}

std::string format_csv(const ScanTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out += (i ? "," : "") + table.header[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string format_csv(const std::vector<kernels::CheckRow>& rows) {
  std::string out = "check,samples,max_deviation,tolerance,pass\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{},{}\n", r.name, r.samples, number(r.max_deviation),
                       number(r.tolerance), r.pass ? "true" : "false");
  return out;
}

std::string render_svg(const ScanTable& table, std::size_t x_column, bool log_x,
                       const std::string& title) {
  constexpr double width = 800, height = 500, left = 80, right = 200, top = 40, bottom = 60;
  const double plot_w = width - left - right, plot_h = height - top - bottom;

  std::vector<std::size_t> series;
  for (std::size_t c = 0; c < table.header.size(); ++c)
    if (table.header[c].rfind("F", 0) == 0) series.push_back(c);

  auto xv = [&](double x) { return log_x ? std::log10(x) : x; };
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, fmax = 0.0;
  for (const auto& row : table.rows) {
    xmin = std::min(xmin, xv(row[x_column]));
    xmax = std::max(xmax, xv(row[x_column]));
    for (std::size_t c : series) fmax = std::max(fmax, std::abs(row[c]));
  }
  if (table.rows.empty() || !(xmax > xmin)) {
    xmin = table.rows.empty() ? 0.0 : xmin - 0.5;
    xmax = xmin + 1.0;
  }
  const double threshold = fmax > 0.0 ? 1e-6 * fmax : 1.0;
  auto yv = [&](double f) { return std::copysign(std::log10(1.0 + std::abs(f) / threshold), f); };
  const double ylim = std::max(yv(fmax), 1.0);
  auto px = [&](double x) { return left + (xv(x) - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double f) { return top + (1.0 - (yv(f) + ylim) / (2.0 * ylim)) * plot_h; };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      width, height);
  svg += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);
  svg += fmt::format("<text x=\"{}\" y=\"24\" font-size=\"15\">{}</text>\n", left, title);
  svg += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left,
      top, plot_w, plot_h);
  svg += fmt::format("<line x1=\"{}\" y1=\"{:.2f}\" x2=\"{}\" y2=\"{:.2f}\" stroke=\"#999\" "
                     "stroke-dasharray=\"4 3\"/>\n",
                     left, py(0.0), left + plot_w, py(0.0));
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}{}</text>\n",
                     left + plot_w / 2, height - 20, table.header.at(x_column),
                     log_x ? " (log scale)" : "");
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>\n", left,
                     height - 40, log_x ? std::pow(10.0, xmin) : xmin);
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>\n",
                     left + plot_w, height - 40, log_x ? std::pow(10.0, xmax) : xmax);
  svg += fmt::format(
      "<text x=\"20\" y=\"{}\" transform=\"rotate(-90 20 {})\" text-anchor=\"middle\">"
      "sign(F) log10(1 + |F| / {:.3g} N)</text>\n",
      top + plot_h / 2, top + plot_h / 2, threshold);

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = colors[s % std::size(colors)];
    std::string points;
    for (const auto& row : table.rows)
      points += fmt::format("{:.2f},{:.2f} ", px(row[x_column]), py(row[series[s]]));
    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                       color, points);
    const double ly = top + 16.0 * static_cast<double>(s) + 10.0;
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                       left + plot_w + 10, ly, left + plot_w + 30, ly, color);
    svg += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", left + plot_w + 36, ly + 4,
                       table.header[series[s]]);
  }
  svg += "</svg>\n";
  return svg;
}

RunResult run_scenario(const ScenarioConfig& config, const fs::path& out_dir, std::size_t workers) {
  if (config.command == Subcommand::KernelCheck)
    throw ValidationError("kernel-check is run through run_kernel_check");

  const bool cp = config.command == Subcommand::CpConsistency;
  const ScanTable table = cp ? run_cp_consistency(config, workers) : run_force_scan(config, workers);

  fs::create_directories(out_dir);
  const fs::path csv = out_dir / config.output.csv;
  std::vector<std::pair<fs::path, std::string>> files = {{csv, format_csv(table)}};
  if (config.output.svg) {
    fs::path svg = csv;
    svg.replace_extension(".svg");
    const bool log_x = config.command == Subcommand::ForceVsDistance &&
                       config.distance_grid->spacing == Grid::Spacing::Log;
    const std::size_t x_column = config.command == Subcommand::ForceVsDistance ? 0 : (cp ? 0 : 1);
    files.emplace_back(svg, render_svg(table, x_column, log_x, to_string(config.command)));
  }
  write_atomically(files);

  RunResult result;
  for (const auto& [path, content] : files) result.files.push_back(path);
  if (cp) {
    double worst = 0.0;
    for (const auto& row : table.rows) worst = std::max(worst, row.back());
    result.summary = fmt::format("{}: {} rows written to {}; max relative difference {:.3e}",
                                 to_string(config.command), table.rows.size(), csv.string(), worst);
  } else {
    result.summary =
        fmt::format("{}: {} rows written to {}; max quadrature error estimate {:.3e} N",
                    to_string(config.command), table.rows.size(), csv.string(),
                    table.max_quadrature_error);
  }
  return result;
}

RunResult run_kernel_check(const kernels::CheckOptions& options, const fs::path& out_dir) {
  const auto rows = kernels::run_checks(options);
  fs::create_directories(out_dir);
  const fs::path csv = out_dir / "kernel_check.csv";
  write_atomically({{csv, format_csv(rows)}});

  RunResult result;
  result.files.push_back(csv);
  double worst = 0.0;
  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (!r.pass) ++failed;
    if (std::isfinite(r.tolerance)) worst = std::max(worst, r.max_deviation / r.tolerance);
  }
  result.pass = failed == 0;
  result.summary = fmt::format("kernel-check: {} checks, {} failed; worst deviation/tolerance {:.3e}",
                               rows.size(), failed, worst);
  return result;
}

}  // namespace vdw
