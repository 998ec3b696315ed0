#pragma once

#include <cstdint>
#include <vector>

#include "rombox/layout.hpp"
#include "rombox/linalg.hpp"

namespace rombox {

enum class KernelFamily : std::uint8_t { sin2_1d = 0, bump_2d = 1 };

struct KernelSpec {
  KernelFamily family = KernelFamily::sin2_1d;
};

/// sin2 for 1D layouts, bump for 2D layouts.
KernelSpec default_kernel(const SubdomainLayout& layout);

/// Rising sin^2 branch on [alpha_i, alpha_{i+1}), falling branch on
/// [alpha_{i+1}, alpha_{i+2}), zero elsewhere; x is wrapped periodically.
/// Throws ErrorCode::kernel on non-overlapping or 2D layouts.
double sin2_kernel(const SubdomainLayout& layout, int subdomain, double x);

/// exp(-1 / (1 - |x|)) for |x| < 1, else 0.
double bump_raw(double x);

/// bump_raw(x) / (bump_raw(x) + bump_raw(1 - |x|)) for |x| < 1, else 0.
/// Satisfies bump_normalized(x) + bump_normalized(x - 1) = 1 on (0, 1).
double bump_normalized(double x);

/// Product of normalized bumps in the coordinates mapped to [-1, 1) over the
/// subdomain's extent along each axis.
double bump_kernel_2d(const SubdomainLayout& layout, int subdomain, double x, double y);

/// Dispatch on the family; `y` is ignored in 1D.
double kernel_value(const KernelSpec& kernel, const SubdomainLayout& layout,
                    int subdomain, double x, double y = 0.0);

/// weights[s][k] = k_s evaluated at local point k of subdomain s (cell centers).
std::vector<Vector> kernel_weights(const SubdomainLayout& layout, const KernelSpec& kernel);

/// max |sum_s k_s(x) - 1| over `samples` uniformly random points (fixed seed).
double verify_partition_of_unity(const SubdomainLayout& layout, const KernelSpec& kernel,
                                 int samples, std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

/// max |sum_s k_s(x_j) - 1| over all grid points x_j.
double partition_of_unity_deviation(const SubdomainLayout& layout, const KernelSpec& kernel);

}  // namespace rombox
