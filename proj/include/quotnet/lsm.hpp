#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quotnet/link.hpp"
#include "quotnet/types.hpp"

namespace quotnet {

// Three-group planar template: left core, bridge, right core. Positions are
// Gaussian around the group means; the intercept is calibrated separately to
// hit the target edge density.
struct SimulationSpec {
  std::array<int, 3> group_sizes{48, 24, 48};  // L, B, R
  std::array<Eigen::Vector2d, 3> group_means;
  std::array<double, 3> group_sds{0.20, 0.25, 0.20};
  double target_density = 0.1;
  std::string regime = "well";

  static SimulationSpec well_identified();
  static SimulationSpec weakly_identified();
  static SimulationSpec by_name(const std::string& regime);

  SimulationSpec with_sizes(int n_left, int n_bridge, int n_right) const;
  int total_nodes() const { return group_sizes[0] + group_sizes[1] + group_sizes[2]; }
  void validate() const;
};

struct SimulatedTemplate {
  Configuration positions;   // n x 2, ordered L block, B block, R block
  std::vector<char> labels;  // 'L', 'B' or 'R' per node
};

SimulatedTemplate simulate_template(const SimulationSpec& spec, std::uint64_t seed);

// Intercept solving mean_{i<j} g(alpha - d_ij) = target by bisection on
// [-50, 50]; the expected density is continuous and strictly increasing in
// alpha for a strictly monotone link.
double calibrate_intercept(const Configuration& positions, double target_density,
                           const LinkFunction& link);

// Independent Bernoulli(g(alpha - d_ij)) edges over i < j, symmetrized.
// Each dyad uses randomness derived from (seed, i, j), so output does not
// depend on evaluation order.
AdjacencyMatrix simulate_graph(const Configuration& positions, double alpha,
                               const LinkFunction& link, std::uint64_t seed);

struct SamplerConfig {
  double prior_sd_positions = 10.0;
  double prior_mean_alpha = 0.0;
  double prior_sd_alpha = 2.0;
  double proposal_sd_position = 0.3;
  double proposal_sd_alpha = 0.1;
  int burn_in = 10000;
  int thin = 20;
  int draws = 500;
  std::uint64_t seed = 0;
  bool sample_alpha = true;
  double alpha_init = 0.0;
  LinkFunction link = LinkFunction::logistic();

  // Intercept prior N(2, 2^2) used for the Florentine marriage analysis.
  static SamplerConfig florentine();
  void validate() const;
};

// Bernoulli log-likelihood of the graph given positions and intercept,
// summed over i < j with numerically stable log-link evaluations.
double log_likelihood(const Configuration& positions, double alpha,
                      const AdjacencyMatrix& graph, const LinkFunction& link);

// Log posterior up to an additive constant: log-likelihood plus Gaussian
// log-priors on every coordinate and on the intercept.
double log_posterior(const Configuration& positions, double alpha,
                     const AdjacencyMatrix& graph, const SamplerConfig& config);

struct McmcRun {
  DrawSet draws;                  // factors centered at retention time
  double accept_position = 0.0;   // accepted node moves / proposed node moves
  double accept_alpha = 0.0;      // accepted intercept moves / proposed
};

// Component-wise random-walk Metropolis for the latent space model: one
// Gaussian proposal per node per sweep, then one intercept proposal. After
// burn_in sweeps every thin-th state is retained, `draws` states in total.
// Fully deterministic given the seed.
McmcRun mh_sample(const AdjacencyMatrix& graph, int rank, const SamplerConfig& config);

}  // namespace quotnet
