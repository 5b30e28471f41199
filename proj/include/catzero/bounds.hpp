#pragma once

#include <cstddef>
#include <span>

namespace catzero::bounds {

/// Sample count n, deviation radius r, support diameter D and (for Hadamard
/// targets) manifold dimension m.
struct BoundQuery {
  std::size_t n = 1;
  double r = 0.0;
  double diameter = 1.0;
  int m = 1;

  /// Throws DomainError unless n ≥ 1, r ≥ 0, D ≥ 0, m ≥ 1. D = 0 (a point
  /// mass) is admitted and read as the D → 0⁺ limit of each bound.
  void validate() const;
};

/// α_X(r) ≤ C·e^{−c r²}.
struct ConcentrationProfile {
  double C = 1.0;
  double c = 1.0;
};

enum class Branch { kFirst, kSecond };

struct BranchValue {
  double value;
  Branch branch;  // kFirst: the A-constant branch, kSecond: the Ã-constant branch
};

struct HadamardConstants {
  double a;        // A_m
  double a_tilde;  // Ã_m
};

/// R-tree tail: 4·e^{4/75}·e^{−n r²/(150 D²)}.
double rtree_tail_bound(const BoundQuery& q);

/// Centered intermediate tail: 4·e^{−n r²/(75 D²)}.
double claim_tail_bound(const BoundQuery& q);

/// A_m = e^{1/(2m)}{1 + √π e^{(m+1)/(4m−2)} e^{π²}/2},
/// Ã_m = e^{1/(4m)}{1 + √π e^{(m+1)/(4m−2)}}.
HadamardConstants hadamard_constants(int m);

/// min{A_m e^{−n r²/(16 D² m)}, Ã_m e^{−n r²/(32 D² m)}}.
BranchValue hadamard_tail_bound(const BoundQuery& q);

/// 2·e^{−r²/(2ΣDᵢ²)}: deviation of a 1-Lipschitz function on an ℓ¹ product.
double ledoux_deviation_bound(double r, std::span<const double> diameters);

/// e^{−r²/(8ΣDᵢ²)}: concentration function of an ℓ¹ product.
double ledoux_concentration_bound(double r, std::span<const double> diameters);

/// Central radius of the inductive-mean law: 5D√((2/n)log(4/κ)) for κ < ½,
/// 5D√((3/n)log(4/κ)) otherwise.
double crad_bound(std::size_t n, double kappa, double diameter);

/// 2D/√n, the square root of the 4D²/n bound on d(𝔼 sₙ, b(ν))².
double mean_drift_bound(std::size_t n, double diameter);

struct GeneralHadamardConstants {
  double a;        // A_{m,X}
  double a_tilde;  // Ã_{m,X}
};

GeneralHadamardConstants general_hadamard_constants(const ConcentrationProfile& profile, int m);

/// min{A_{m,X} e^{−(c/(8m)) r²}, Ã_{m,X} e^{−(c/(16m)) r²}}.
BranchValue general_hadamard_bound(double r, const ConcentrationProfile& profile, int m);

}  // namespace catzero::bounds
