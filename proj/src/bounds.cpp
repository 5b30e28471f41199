#include "catzero/bounds.hpp"

#include "catzero/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace catzero::bounds {

namespace {

using std::numbers::pi;

const double kSqrtPi = std::sqrt(pi);

// e^{−k r²/D²} with the D → 0⁺ limit for a point mass.
double gaussian_factor(double k, double r, double diameter) {
  if (diameter == 0.0) return r > 0.0 ? 0.0 : 1.0;
  return std::exp(-k * r * r / (diameter * diameter));
}

double dimension_exponent(int m) {
  return static_cast<double>(m + 1) / static_cast<double>(4 * m - 2);
}

double sum_of_squares(std::span<const double> diameters) {
  if (diameters.empty()) throw DomainError("at least one factor diameter is required");
  double total = 0.0;
  for (double d : diameters) {
    if (!(d > 0.0)) throw DomainError("factor diameters must be positive");
    total += d * d;
  }
  return total;
}

BranchValue smaller(double first, double second) {
  return first <= second ? BranchValue{first, Branch::kFirst} : BranchValue{second, Branch::kSecond};
}

}  // namespace

void BoundQuery::validate() const {
  if (n < 1) throw DomainError("n must be at least 1");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("r must be a finite nonnegative number");
  if (!(diameter >= 0.0) || !std::isfinite(diameter)) throw DomainError("D must be finite and nonnegative");
  if (m < 1) throw DomainError("m must be at least 1");
}

double rtree_tail_bound(const BoundQuery& q) {
  q.validate();
  return 4.0 * std::exp(4.0 / 75.0) * gaussian_factor(static_cast<double>(q.n) / 150.0, q.r, q.diameter);
}

double claim_tail_bound(const BoundQuery& q) {
  q.validate();
  return 4.0 * gaussian_factor(static_cast<double>(q.n) / 75.0, q.r, q.diameter);
}

HadamardConstants hadamard_constants(int m) {
  if (m < 1) throw DomainError("m must be at least 1");
  const double md = static_cast<double>(m);
  const double growth = std::exp(dimension_exponent(m));
  return {std::exp(1.0 / (2.0 * md)) * (1.0 + kSqrtPi * growth * std::exp(pi * pi) / 2.0),
          std::exp(1.0 / (4.0 * md)) * (1.0 + kSqrtPi * growth)};
}

BranchValue hadamard_tail_bound(const BoundQuery& q) {
  q.validate();
  const auto [a, a_tilde] = hadamard_constants(q.m);
  const double nm = static_cast<double>(q.n) / static_cast<double>(q.m);
  return smaller(a * gaussian_factor(nm / 16.0, q.r, q.diameter),
                 a_tilde * gaussian_factor(nm / 32.0, q.r, q.diameter));
}

double ledoux_deviation_bound(double r, std::span<const double> diameters) {
  if (!(r >= 0.0)) throw DomainError("r must be nonnegative");
  return 2.0 * std::exp(-r * r / (2.0 * sum_of_squares(diameters)));
}

double ledoux_concentration_bound(double r, std::span<const double> diameters) {
  if (!(r >= 0.0)) throw DomainError("r must be nonnegative");
  return std::exp(-r * r / (8.0 * sum_of_squares(diameters)));
}

double crad_bound(std::size_t n, double kappa, double diameter) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw DomainError("kappa must lie in (0, 1)");
  if (n < 1) throw DomainError("n must be at least 1");
  if (!(diameter >= 0.0)) throw DomainError("D must be nonnegative");
  const double factor = kappa < 0.5 ? 2.0 : 3.0;
  return 5.0 * diameter * std::sqrt(factor / static_cast<double>(n) * std::log(4.0 / kappa));
}

double mean_drift_bound(std::size_t n, double diameter) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (!(diameter >= 0.0)) throw DomainError("D must be nonnegative");
  return 2.0 * diameter / std::sqrt(static_cast<double>(n));
}

GeneralHadamardConstants general_hadamard_constants(const ConcentrationProfile& profile, int m) {
  if (!(profile.C > 0.0) || !(profile.c > 0.0)) throw DomainError("concentration profile must be positive");
  if (m < 1) throw DomainError("m must be at least 1");
  const double growth = std::exp(dimension_exponent(m));
  const double pc = pi * profile.C;
  const double spread = std::max(std::exp(pc * pc / 2.0), 2.0 * profile.C * std::exp(pc * pc));
  return {1.0 + kSqrtPi * growth / 2.0 * spread, 1.0 + kSqrtPi * profile.C * growth};
}

BranchValue general_hadamard_bound(double r, const ConcentrationProfile& profile, int m) {
  if (!(r >= 0.0)) throw DomainError("r must be nonnegative");
  const auto [a, a_tilde] = general_hadamard_constants(profile, m);
  const double md = static_cast<double>(m);
  return smaller(a * std::exp(-(profile.c / (8.0 * md)) * r * r),
                 a_tilde * std::exp(-(profile.c / (16.0 * md)) * r * r));
}

}  // namespace catzero::bounds
