#include "rombox/kernels.hpp"

#include <cmath>
#include <random>

#include "rombox/error.hpp"

namespace rombox {
namespace {

double wrap_from(double x, double start, double length) {
  double d = std::fmod(x - start, length);
  if (d < 0.0) d += length;
  return start + d;
}

void require_overlap(const SubdomainLayout& layout) {
  if (layout.mode != LayoutMode::overlap) {
    throw Error(ErrorCode::kernel, "partition-of-unity kernels need an overlapping layout");
  }
}

void require_subdomain(const SubdomainLayout& layout, int subdomain) {
  if (subdomain < 0 || subdomain >= layout.subdomain_count()) {
    throw Error(ErrorCode::kernel, "subdomain index out of range");
  }
}

// Normalized bump along one axis of a subdomain spanning [alpha, beta).
double bump_axis(double x, double alpha, double beta, double length) {
  const double xw = wrap_from(x, alpha, length);
  if (xw >= beta) return 0.0;
  const double xhat = 2.0 * (xw - alpha) / (beta - alpha) - 1.0;
  return bump_normalized(xhat);
}

}  // namespace

KernelSpec default_kernel(const SubdomainLayout& layout) {
  return KernelSpec{layout.dims == 2 ? KernelFamily::bump_2d : KernelFamily::sin2_1d};
}

double sin2_kernel(const SubdomainLayout& layout, int subdomain, double x) {
  require_overlap(layout);
  if (layout.dims != 1) throw Error(ErrorCode::kernel, "sin2 kernel is defined for 1D layouts");
  require_subdomain(layout, subdomain);
  const double a0 = layout.alpha_x[subdomain];
  const double a2 = layout.beta_x[subdomain];
  const double a1 = 0.5 * (a0 + a2);
  const double xw = wrap_from(x, a0, layout.length_x);
  if (xw < a1) {
    const double s = std::sin(0.5 * kPi * (xw - a0) / (a1 - a0));
    return s * s;
  }
  if (xw < a2) {
    const double c = std::cos(0.5 * kPi * (xw - a1) / (a2 - a1));
    return c * c;
  }
  return 0.0;
}

double bump_raw(double x) {
  const double ax = std::abs(x);
  if (ax >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - ax));
}

double bump_normalized(double x) {
  const double ax = std::abs(x);
  if (ax >= 1.0) return 0.0;
  const double p = bump_raw(x);
  return p / (p + bump_raw(1.0 - ax));
}

double bump_kernel_2d(const SubdomainLayout& layout, int subdomain, double x, double y) {
  require_overlap(layout);
  if (layout.dims != 2) throw Error(ErrorCode::kernel, "bump kernel is defined for 2D layouts");
  require_subdomain(layout, subdomain);
  const int sx = layout.subdomain_x(subdomain);
  const int sy = layout.subdomain_y(subdomain);
  const double kx = bump_axis(x, layout.alpha_x[sx], layout.beta_x[sx], layout.length_x);
  if (kx == 0.0) return 0.0;
  return kx * bump_axis(y, layout.alpha_y[sy], layout.beta_y[sy], layout.length_y);
}

double kernel_value(const KernelSpec& kernel, const SubdomainLayout& layout, int subdomain,
                    double x, double y) {
  switch (kernel.family) {
    case KernelFamily::sin2_1d:
      return sin2_kernel(layout, subdomain, x);
    case KernelFamily::bump_2d:
      return bump_kernel_2d(layout, subdomain, x, y);
  }
  throw Error(ErrorCode::kernel, "unknown kernel family");
}

std::vector<Vector> kernel_weights(const SubdomainLayout& layout, const KernelSpec& kernel) {
  const double hx = layout.length_x / layout.grid_nx;
  const double hy = layout.dims == 2 ? layout.length_y / layout.grid_ny : 0.0;
  std::vector<Vector> weights(layout.subdomain_count());
  for (int s = 0; s < layout.subdomain_count(); ++s) {
    const auto& idx = layout.indices[s];
    Vector w(static_cast<Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const Index g = idx[k];
      const double x = layout.origin_x + (double(g % layout.grid_nx) + 0.5) * hx;
      const double y = layout.dims == 2 ? layout.origin_y + (double(g / layout.grid_nx) + 0.5) * hy
                                        : 0.0;
      w[static_cast<Index>(k)] = kernel_value(kernel, layout, s, x, y);
    }
    weights[s] = std::move(w);
  }
  return weights;
}

double verify_partition_of_unity(const SubdomainLayout& layout, const KernelSpec& kernel,
                                 int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(layout.origin_x, layout.origin_x + layout.length_x);
  std::uniform_real_distribution<double> uy(layout.origin_y, layout.origin_y + layout.length_y);
  double worst = 0.0;
  for (int n = 0; n < samples; ++n) {
    const double x = ux(rng);
    const double y = layout.dims == 2 ? uy(rng) : 0.0;
    double sum = 0.0;
    for (int s = 0; s < layout.subdomain_count(); ++s) sum += kernel_value(kernel, layout, s, x, y);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

double partition_of_unity_deviation(const SubdomainLayout& layout, const KernelSpec& kernel) {
  const auto weights = kernel_weights(layout, kernel);
  Vector sum = Vector::Zero(layout.grid_size());
  for (int s = 0; s < layout.subdomain_count(); ++s) {
    const auto& idx = layout.indices[s];
    for (std::size_t k = 0; k < idx.size(); ++k) sum[idx[k]] += weights[s][static_cast<Index>(k)];
  }
  return (sum.array() - 1.0).abs().maxCoeff();
}

}  // namespace rombox
