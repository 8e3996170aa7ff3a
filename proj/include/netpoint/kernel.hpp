#pragma once

#include <string_view>

namespace netpoint {

enum class KernelFamily { Epanechnikov, Gaussian, Box };

struct KernelSpec {
  KernelFamily family = KernelFamily::Epanechnikov;
  double bandwidth = 1.0;
};

/// Throws BadBandwidth unless the bandwidth is positive and finite.
void validate(const KernelSpec& kernel);

/// Kernel density at x, integrating to one over the real line.
double evaluate(const KernelSpec& kernel, double x) noexcept;

/// Half-width of the support; infinity for the Gaussian.
double support_radius(const KernelSpec& kernel) noexcept;

KernelFamily parse_kernel_family(std::string_view name);
std::string_view to_string(KernelFamily family) noexcept;

}  // namespace netpoint
