#pragma once

// Fractional Prokhorov distance between atomic measures on the line:
//   d(mu, nu) = inf { eps > 0 : mu(A) <= nu(A^eps) + eps^alpha and
//                               nu(A) <= mu(A^eps) + eps^alpha for all A }
// with A^eps the open eps-neighbourhood. Requiring both directions makes the
// distance symmetric by construction. Feasibility is decided exactly by
// enumerating subsets of atoms.

#include <cstdint>
#include <string_view>
#include <vector>

#include "fracnum/rng.hpp"

namespace fracnum {

inline constexpr std::size_t kMaxExactAtoms = 16;

class DiscreteMeasure {
 public:
  /// atoms strictly increasing, weights >= 0 summing to 1 within 1e-12,
  /// at most 16 atoms.
  DiscreteMeasure(std::vector<double> atoms, std::vector<double> weights);

  /// Parses "atom:weight,atom:weight,..." (atoms may be listed in any order).
  static DiscreteMeasure parse(std::string_view text);
  static DiscreteMeasure point_mass(double x) { return DiscreteMeasure({x}, {1.0}); }

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<double> atoms_;
  std::vector<double> weights_;
};

/// Exact feasibility of eps (eps <= 0 is never feasible).
bool prokhorov_feasible(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double alpha,
                        double eps);

/// Bisection over [0, 1 + diameter] until the bracket is below `tol` (at most
/// 40 halvings); returns the bracket midpoint.
double frac_prokhorov(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double alpha,
                      double tol);

struct AxiomReport {
  std::size_t pairs = 0;
  std::size_t triples = 0;
  std::size_t negativity_violations = 0;
  std::size_t identity_violations = 0;
  std::size_t symmetry_violations = 0;
  std::size_t triangle_violations = 0;
  double worst_triangle_excess = 0.0;  // max of d(i,k) - d(i,j) - d(j,k)

  std::size_t total_violations() const {
    return negativity_violations + identity_violations + symmetry_violations + triangle_violations;
  }
};

/// Checks the metric axioms over all ordered pairs and triples of distinct
/// indices; the triangle inequality is tested with slack 3 * tol.
AxiomReport metric_axioms_check(const std::vector<DiscreteMeasure>& measures, double alpha,
                                double tol);

/// 1..max_atoms distinct atoms uniform on [0, 1], flat-Dirichlet weights.
DiscreteMeasure random_discrete_measure(Rng& rng, std::size_t max_atoms);

}  // namespace fracnum
