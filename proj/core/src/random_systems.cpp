#include "whfactor/random_systems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace whfactor {

namespace {

Complex random_phase(std::mt19937_64& rng, double modulus) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(modulus, angle(rng));
}

void scale_spec(RationalSymbolSpec& spec, double factor) {
  spec.constant *= factor;
  for (auto& c : spec.poly_coeffs) c *= factor;
  for (auto& pole : spec.poles) pole.residue *= factor;
}

}  // namespace

ComplexMatrix random_complex_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) out(i, j) = Complex(normal(rng), normal(rng));
  }
  return out;
}

RationalSymbolSpec random_rational_symbol(std::mt19937_64& rng,
                                          const RandomSymbolOptions& options) {
  const Index m = options.size;
  RationalSymbolSpec spec;
  spec.constant = 0.3 * random_complex_matrix(rng, m, m);

  std::uniform_int_distribution<int> degree_dist(0, options.max_poly_degree);
  Index budget = options.max_states;
  const int degree = std::min<int>(degree_dist(rng), static_cast<int>(budget / m));
  for (int k = 0; k < degree; ++k) spec.poly_coeffs.push_back(0.5 * random_complex_matrix(rng, m, m));
  budget -= degree * m;

  // Pole moduli ranges: outside the disc (realized eigenvalue inside) and
  // inside the disc (realized eigenvalue outside).
  const double inner_lo = std::max(1.0 + options.pole_gap, 1.0 / (1.0 - options.state_margin));
  const double inner_hi = std::max(inner_lo + 0.5, 3.0);
  const double outer_hi = std::min(1.0 - options.pole_gap, 1.0 / (1.0 + options.state_margin));
  const double outer_lo = std::min(0.25, 0.5 * outer_hi);
  std::uniform_real_distribution<double> inner_modulus(inner_lo, inner_hi);
  std::uniform_real_distribution<double> outer_modulus(outer_lo, outer_hi);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<Index> rank_dist(1, m);

  std::uniform_int_distribution<Index> pole_count(1, std::max<Index>(1, budget));
  Index poles = budget > 0 ? pole_count(rng) : 0;
  while (poles-- > 0 && budget > 0) {
    const Index rank = std::min(rank_dist(rng), budget);
    SimplePole pole;
    // Rejection sampling keeps poles apart; clustered poles give nearly
    // uncontrollable realizations without exercising anything new.
    for (int tries = 0;; ++tries) {
      const double modulus = coin(rng) ? inner_modulus(rng) : outer_modulus(rng);
      pole.location = random_phase(rng, modulus);
      const bool separated = std::all_of(spec.poles.begin(), spec.poles.end(), [&](const SimplePole& other) {
        return std::abs(other.location - pole.location) >= options.pole_separation;
      });
      if (separated || tries >= 1000) break;
    }
    const double modulus = std::abs(pole.location);
    pole.residue = random_complex_matrix(rng, m, rank) * random_complex_matrix(rng, rank, m) /
                   static_cast<double>(m);
    // Residues of inner-disc poles are scaled with the pole so that the
    // symbol does not blow up at z = 0.
    if (modulus < 1.0) pole.residue *= modulus;
    spec.poles.push_back(std::move(pole));
    budget -= rank;
  }

  const StateSpaceSystem sys = realize_rational(spec);
  const double gamma = sup_norm_on_circle(sys, 512, true);
  std::uniform_real_distribution<double> target(options.target_norm_min, options.target_norm_max);
  if (gamma > 0.0) scale_spec(spec, target(rng) / gamma);
  return spec;
}

ComplexMatrix random_dichotomous_matrix(std::mt19937_64& rng, Index n, double margin) {
  std::uniform_real_distribution<double> inside(0.0, 1.0 - margin);
  std::uniform_real_distribution<double> outside(1.0 + margin, 2.5 + margin);
  std::bernoulli_distribution coin(0.5);
  ComplexVector lambda(n);
  for (Index i = 0; i < n; ++i) {
    lambda(i) = random_phase(rng, coin(rng) ? inside(rng) : outside(rng));
  }
  ComplexMatrix v = ComplexMatrix::Identity(n, n) +
                    0.5 * random_complex_matrix(rng, n, n) / std::sqrt(static_cast<double>(n));
  return v * lambda.asDiagonal() * v.inverse();
}

}  // namespace whfactor
