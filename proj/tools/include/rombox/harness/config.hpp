#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rombox/integrators.hpp"
#include "rombox/linalg.hpp"

namespace rombox::harness {

enum class CaseKind { adv1d, adv2d };

/// One experiment. Defaults are the 1d-paper preset.
struct ExperimentConfig {
  CaseKind kind = CaseKind::adv1d;

  // [case]
  int nx = 1000;
  int ny = 1;
  double length = 2.0 * kPi;  ///< 1D [0, length); 2D [-length/2, length/2]^2
  double c = 1.0;
  double nu = 0.0;
  std::optional<std::string> snapshots;  ///< reuse an RSNP file instead of running the FOM

  // [time]
  double dt = 0.01;
  double t_end = 5.0;
  int stride = 1;

  // [split]
  double train_end = 1.0;
  double val_start = 1.0;
  double val_end = 2.0;

  // [rom]
  std::string method = "lopod";  ///< gpod, lpod, lopod or coarse_fom
  int subdomains_x = 10;
  int subdomains_y = 1;
  int modes = 6;
  int rank = 60;
  std::optional<Scheme> integrator;
  std::optional<double> rom_dt;
  int coarse_factor = 2;
  int replicas = 1;

  // [sweep]
  std::vector<int> sweep_subdomains;
  std::vector<int> sweep_modes;
  std::vector<double> sweep_dts;
  double threshold = 1e-2;

  // [output]
  std::string output_dir = ".";
  std::uint64_t seed = 0;

  int dims() const noexcept { return kind == CaseKind::adv1d ? 1 : 2; }
  IntegratorSpec fom_spec() const { return IntegratorSpec{Scheme::rk4, dt, t_end, stride}; }
};

/// "1d-paper" or "2d-paper". Throws ErrorCode::config for other names.
ExperimentConfig preset(const std::string& name);

/// Line-oriented `key = value` text with `[section]` headers and `#` comments.
/// A top-level `preset = name` line seeds the defaults. Unknown sections or
/// keys and malformed values throw ErrorCode::config naming the line.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Checks cross-field consistency (grid vs case, split order, positive steps).
void validate(const ExperimentConfig& config);

Scheme parse_scheme(const std::string& name);
const char* scheme_name(Scheme scheme) noexcept;

/// "8" -> {8}, "8,4" -> {8, 4}.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

}  // namespace rombox::harness
