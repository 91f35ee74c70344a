#pragma once

// Ultradifferentiable seminorms of sampled functions on the line and the
// inclusion inequalities between the corresponding spaces.

#include <optional>
#include <string>
#include <vector>

#include "hsc/grid.hpp"
#include "hsc/weights.hpp"

namespace hsc {

enum class SpaceClass { B, W, S, D };
std::string to_string(SpaceClass c);
SpaceClass space_class_from_string(const std::string& s);

struct SeminormQuery {
  SpaceClass cls = SpaceClass::B;
  double rho = 1.0;  // rho for B/D, sigma for W/S
  double p = 2.0;    // integrability exponent for W
  int kmax = 12;
  int pmax = 8;      // polynomial weight order for S
  WeightSequence M = make_sequence(Generator::constant_one(), 12);
  std::optional<WeightSequence> L;  // S only; defaults to M
};

struct SeminormResult {
  double value = 0.0;
  int k = 0;        // derivative order of the witness
  int p_weight = -1;  // polynomial weight order (S only)
  double x = 0.0;   // location of the witness (NaN for W)
  std::vector<double> per_order;  // class quotient maximized over everything but k
  bool truncated = true;          // suprema run over k <= kmax only
  std::optional<std::pair<double, double>> support;  // D only
};

SeminormResult seminorm(const GridFunction& f, const SeminormQuery& q);

struct ClassSweepEntry {
  double rho = 0.0;
  double value = 0.0;
  double tail_slope = 0.0;  // slope of log quotient against k over the upper half
  bool finite = false;
};

struct ClassDiagnostic {
  std::vector<ClassSweepEntry> entries;
  bool monotone = true;              // nonincreasing in rho
  bool finite_at_some_rho = false;   // Roumieu-compatible
  bool finite_at_all_rho = false;    // Beurling-compatible
  Confidence confidence = Confidence::truncation_based;
};

// Sweeps rho over a strictly increasing grid. A violated rho-monotonicity
// raises an invariant error.
ClassDiagnostic class_diagnostic(const GridFunction& f, SeminormQuery q, const std::vector<double>& rho_grid);

struct InclusionReport {
  // ||f^(alpha)||_p <= C sup (1+|x|)^2 |f^(alpha)|, C = (int (1+|x|)^(-2p))^(1/p)
  int alpha = 2;
  double weighted_lhs = 0.0, weighted_rhs = 0.0, weighted_ratio = 0.0, weight_constant = 0.0;
  // sup|f| against the W^{k,p} norm with k = floor(1/p) + 1
  int sobolev_order = 1;
  double sobolev_sup = 0.0, sobolev_norm = 0.0, sobolev_ratio = 0.0;
  // ||f||_q <= ||f||_p^(p/q) ||f||_inf^(1-p/q)
  double interp_lhs = 0.0, interp_rhs = 0.0, interp_ratio = 0.0;
};

InclusionReport inclusion_report(const GridFunction& f, double p, double q, int alpha = 2);

}  // namespace hsc
