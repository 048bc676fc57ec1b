#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace spacedcl {

/// Retention kernels f(x, tau), each non-increasing in x with f(0) = 1.
enum class KernelKind : std::uint8_t { lap, sec, cos, qua, lin };

inline constexpr std::array<KernelKind, 5> all_kernel_kinds = {KernelKind::lap, KernelKind::sec, KernelKind::cos,
                                                               KernelKind::qua, KernelKind::lin};

std::string_view to_string(KernelKind kind) noexcept;
std::optional<KernelKind> parse_kernel_kind(std::string_view s) noexcept;

struct KernelOptions {
  /// Use 0.5 cos(tau pi x) + 1 instead of the raised cosine 0.5 (cos(tau pi x) + 1).
  /// The literal form starts at 1.5 and drops to 0 past x = 1/tau.
  bool literal_cosine = false;
};

/// lap exp(-x tau); sec 2 / (exp(-tau x^2) + exp(tau x^2)); cos raised cosine
/// on x < 1/tau; qua 1 - tau x^2 on x^2 < 1/tau; lin 1 - tau x on x < 1/tau.
/// Zero outside the support.
double kernel_eval(KernelKind kind, double x, double tau, KernelOptions opts = {});

/// Largest x >= 0 with f(x, tau) = eta, in closed form.
double solve_delay_x(KernelKind kind, double eta, double tau, KernelOptions opts = {});

struct TauBounds {
  double min = 1e-6;
  double max = 1e6;
};

/// One observation for the tau fit: scaled difficulty and observed recall.
struct TauSample {
  double x = 0.0;
  double p = 0.0;
};

/// Sum over samples with p >= eta of (f(x, tau) - p)^2.
double tau_objective(KernelKind kind, std::span<const TauSample> samples, double eta, double tau,
                     KernelOptions opts = {});

/// Minimises tau_objective over [bounds.min, bounds.max]: a log-spaced scan
/// brackets the minimum, then golden-section search on log tau refines it to
/// 1e-6. A flat objective returns bounds.min; when no sample has p >= eta the
/// previous tau is returned unchanged. DomainError on an empty sample list.
double fit_tau(KernelKind kind, std::span<const TauSample> samples, double eta, double previous_tau,
               TauBounds bounds = {}, KernelOptions opts = {});

/// Mean over samples of x* gamma / max(d_j, 1e-8), each term and the mean
/// clipped to [.., remaining] and the mean to [1, remaining]. gamma is
/// clamped to >= 1e-6.
double compute_delay(KernelKind kind, double eta, double tau, std::span<const double> losses, double gamma,
                     double remaining, KernelOptions opts = {});

}  // namespace spacedcl
