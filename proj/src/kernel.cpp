#include "netpoint/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "netpoint/error.hpp"
#include "netpoint/types.hpp"

namespace netpoint {

void validate(const KernelSpec& kernel) {
  if (!(kernel.bandwidth > 0.0) || !std::isfinite(kernel.bandwidth)) {
    fail(ErrorCode::BadBandwidth, "bandwidth must be positive and finite");
  }
}

double evaluate(const KernelSpec& kernel, double x) noexcept {
  const double h = kernel.bandwidth;
  const double u = x / h;
  switch (kernel.family) {
    case KernelFamily::Epanechnikov:
      return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) / h : 0.0;
    case KernelFamily::Gaussian:
      return std::exp(-0.5 * u * u) / (h * std::sqrt(2.0 * std::numbers::pi));
    case KernelFamily::Box:
      return std::abs(u) <= 1.0 ? 0.5 / h : 0.0;
  }
  return 0.0;
}

double support_radius(const KernelSpec& kernel) noexcept {
  return kernel.family == KernelFamily::Gaussian ? kInfinity : kernel.bandwidth;
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "epanechnikov") return KernelFamily::Epanechnikov;
  if (name == "gaussian") return KernelFamily::Gaussian;
  if (name == "box") return KernelFamily::Box;
  fail(ErrorCode::InvalidArgument, "unknown kernel '" + std::string(name) + "'");
}

std::string_view to_string(KernelFamily family) noexcept {
  switch (family) {
    case KernelFamily::Epanechnikov: return "epanechnikov";
    case KernelFamily::Gaussian: return "gaussian";
    case KernelFamily::Box: return "box";
  }
  return "unknown";
}

}  // namespace netpoint
