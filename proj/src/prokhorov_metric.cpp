#include "fracnum/prokhorov_metric.hpp"

#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "fracnum/errors.hpp"

namespace fracnum {

DiscreteMeasure::DiscreteMeasure(std::vector<double> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  require(!atoms_.empty(), "measure needs at least one atom");
  require(atoms_.size() == weights_.size(), "measure: atoms and weights differ in length");
  require(atoms_.size() <= kMaxExactAtoms, "measure: at most 16 atoms supported");
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    require(std::isfinite(atoms_[i]), "measure: atoms must be finite");
    require(weights_[i] >= 0.0 && std::isfinite(weights_[i]), "measure: weights must be >= 0");
    require(i == 0 || atoms_[i] > atoms_[i - 1], "measure: atoms must be strictly increasing");
    total += weights_[i];
  }
  require(std::abs(total - 1.0) <= 1e-12, "measure: weights must sum to 1");
}

DiscreteMeasure DiscreteMeasure::parse(std::string_view text) {
  std::vector<std::pair<double, double>> items;
  std::stringstream ss{std::string(text)};
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto colon = tok.find(':');
    require(colon != std::string::npos, "measure: expected atom:weight, got '" + tok + "'");
    try {
      std::size_t used = 0;
      const std::string a = tok.substr(0, colon), w = tok.substr(colon + 1);
      const double atom = std::stod(a, &used);
      require(used == a.size(), "measure: bad atom '" + a + "'");
      const double weight = std::stod(w, &used);
      require(used == w.size(), "measure: bad weight '" + w + "'");
      items.emplace_back(atom, weight);
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const PreconditionError*>(&e)) throw;
      throw PreconditionError("measure: cannot parse '" + tok + "'");
    }
  }
  std::sort(items.begin(), items.end());
  std::vector<double> atoms, weights;
  for (auto [a, w] : items) {
    atoms.push_back(a);
    weights.push_back(w);
  }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

namespace {

// mu(A) <= nu(A^eps) + slack for every subset A of mu's atoms.
bool one_sided(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double eps, double slack) {
  const std::size_t km = mu.size(), kn = nu.size();
  std::vector<std::uint32_t> reach(km, 0);
  for (std::size_t i = 0; i < km; ++i)
    for (std::size_t j = 0; j < kn; ++j)
      if (std::abs(mu.atoms()[i] - nu.atoms()[j]) < eps) reach[i] |= std::uint32_t{1} << j;

  std::vector<double> nu_mass(std::size_t{1} << kn, 0.0);
  for (std::uint32_t m = 1; m < nu_mass.size(); ++m)
    nu_mass[m] = nu_mass[m & (m - 1)] + nu.weights()[std::countr_zero(m)];

  const std::size_t subsets = std::size_t{1} << km;
  std::vector<double> mu_mass(subsets, 0.0);
  std::vector<std::uint32_t> hood(subsets, 0);
  for (std::uint32_t m = 1; m < subsets; ++m) {
    const std::uint32_t low = std::countr_zero(m);
    mu_mass[m] = mu_mass[m & (m - 1)] + mu.weights()[low];
    hood[m] = hood[m & (m - 1)] | reach[low];
    if (mu_mass[m] > nu_mass[hood[m]] + slack) return false;
  }
  return true;
}

}  // namespace

bool prokhorov_feasible(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double alpha,
                        double eps) {
  require(alpha > 0.0 && alpha <= 1.0, "prokhorov: alpha must lie in (0, 1]");
  if (!(eps > 0.0)) return false;
  const double slack = std::pow(eps, alpha) + 4.0 * DBL_EPSILON;
  return one_sided(mu, nu, eps, slack) && one_sided(nu, mu, eps, slack);
}

double frac_prokhorov(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double alpha,
                      double tol) {
  require(alpha > 0.0 && alpha <= 1.0, "prokhorov: alpha must lie in (0, 1]");
  require(tol > 0.0 && std::isfinite(tol), "prokhorov: tol must be positive");
  require(mu.size() + nu.size() <= kMaxExactAtoms,
          "prokhorov: combined atom count exceeds 16 (exact enumeration limit)");
  const double lo_atom = std::min(mu.atoms().front(), nu.atoms().front());
  const double hi_atom = std::max(mu.atoms().back(), nu.atoms().back());
  double lo = 0.0, hi = 1.0 + (hi_atom - lo_atom);
  for (int it = 0; it < 40 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (prokhorov_feasible(mu, nu, alpha, mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

AxiomReport metric_axioms_check(const std::vector<DiscreteMeasure>& measures, double alpha,
                                double tol) {
  require(measures.size() >= 3, "axiom check needs at least 3 measures");
  const std::size_t m = measures.size();
  std::vector<double> d(m * m, 0.0);
  AxiomReport rep;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      d[i * m + j] = frac_prokhorov(measures[i], measures[j], alpha, tol);
      if (d[i * m + j] < 0.0) ++rep.negativity_violations;
    }
    // the bisection midpoint never reaches 0 exactly; identity holds within tol
    if (d[i * m + i] > tol) ++rep.identity_violations;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      ++rep.pairs;
      if (d[i * m + j] != d[j * m + i]) ++rep.symmetry_violations;
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        if (i == j || j == k || i == k) continue;
        ++rep.triples;
        const double excess = d[i * m + k] - d[i * m + j] - d[j * m + k];
        rep.worst_triangle_excess = std::max(rep.worst_triangle_excess, excess);
        if (excess > 3.0 * tol) ++rep.triangle_violations;
      }
  return rep;
}

DiscreteMeasure random_discrete_measure(Rng& rng, std::size_t max_atoms) {
  require(max_atoms >= 1 && max_atoms <= kMaxExactAtoms, "random measure: bad atom count");
  const std::size_t k = 1 + static_cast<std::size_t>(rng.next_u64() % max_atoms);
  std::vector<double> atoms;
  while (atoms.size() < k) {
    const double x = rng.uniform();
    if (std::find(atoms.begin(), atoms.end(), x) == atoms.end()) atoms.push_back(x);
  }
  std::sort(atoms.begin(), atoms.end());
  std::vector<double> w(k);
  for (double& v : w) v = rng.exponential();
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return DiscreteMeasure(std::move(atoms), std::move(w));
}

}  // namespace fracnum
