#include "quotnet/lsm.hpp"

#include <cmath>
#include <vector>

#include "quotnet/display.hpp"
#include "quotnet/quotient.hpp"
#include "quotnet/rng.hpp"

namespace quotnet {

namespace {

double bernoulli_term(int a, double eta, const LinkFunction& link) {
  return a != 0 ? link.log(eta) : link.log1m(eta);
}

// Expected edge density at a given intercept.
double expected_density(const Matrix& dist, double alpha, const LinkFunction& link) {
  const Index n = dist.rows();
  double s = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) s += link(alpha - dist(i, j));
  return s / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

Matrix pairwise_distances(const Configuration& x) {
  const Index n = x.rows();
  Matrix d(n, n);
  for (Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const double v = (x.row(i) - x.row(j)).norm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

// Classical-MDS chain start from graph hop distances, with scale and
// intercept fit by a coarse grid over the log posterior. Removes most of the
// cold-start transient. Returns false when the graph carries no usable
// geometry (empty or complete); the caller then falls back to a random
// start. Deterministic.
bool mds_initial_state(const AdjacencyMatrix& graph, int rank,
                       const SamplerConfig& config, Configuration& x_out,
                       double& alpha_out) {
  const int n = static_cast<int>(graph.rows());
  const double edges = graph.cast<double>().sum() / 2.0;
  if (edges < 1.0 || edges >= 0.5 * n * (n - 1)) return false;

  // BFS hop counts; unreachable pairs sit one hop beyond the largest finite one.
  std::vector<std::vector<int>> hops(static_cast<std::size_t>(n),
                                     std::vector<int>(static_cast<std::size_t>(n), -1));
  std::vector<int> queue(static_cast<std::size_t>(n));
  int max_hop = 1;
  for (int s = 0; s < n; ++s) {
    auto& row = hops[static_cast<std::size_t>(s)];
    row[static_cast<std::size_t>(s)] = 0;
    int head = 0, tail = 0;
    queue[static_cast<std::size_t>(tail++)] = s;
    while (head < tail) {
      const int u = queue[static_cast<std::size_t>(head++)];
      for (int v = 0; v < n; ++v)
        if (graph(u, v) != 0 && row[static_cast<std::size_t>(v)] < 0) {
          row[static_cast<std::size_t>(v)] = row[static_cast<std::size_t>(u)] + 1;
          max_hop = std::max(max_hop, row[static_cast<std::size_t>(v)]);
          queue[static_cast<std::size_t>(tail++)] = v;
        }
    }
  }
  Matrix d2(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int h = hops[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const double hv = h < 0 ? max_hop + 1.0 : static_cast<double>(h);
      d2(i, j) = hv * hv;
    }

  GramMatrix g = gram_from_squared_distances(d2).gram;
  g.rank_bound = rank;
  Matrix x = embed_mean(g);
  const double rms = std::sqrt(x.squaredNorm() / static_cast<double>(n));
  if (!(rms > 1e-12)) return false;
  x /= rms;
  const Matrix dist = pairwise_distances(x);

  const double sigma2 = config.prior_sd_positions * config.prior_sd_positions;
  const double tau2 = config.prior_sd_alpha * config.prior_sd_alpha;
  const double x_sq_norm = x.squaredNorm();
  const auto objective = [&](double scale, double alpha) {
    double v = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        v += bernoulli_term(graph(i, j), alpha - scale * dist(i, j), config.link);
    v -= 0.5 * scale * scale * x_sq_norm / sigma2;
    const double da = alpha - config.prior_mean_alpha;
    return v - 0.5 * da * da / tau2;
  };

  double best_scale = 1.0;
  double best_alpha = config.sample_alpha ? config.prior_mean_alpha : config.alpha_init;
  double best = -std::numeric_limits<double>::infinity();
  for (int si = 0; si < 25; ++si) {
    const double scale = 0.2 * std::pow(4.0 / 0.2, si / 24.0);
    if (config.sample_alpha) {
      for (double alpha = -8.0; alpha <= 8.0 + 1e-9; alpha += 0.5) {
        const double v = objective(scale, alpha);
        if (v > best) {
          best = v;
          best_scale = scale;
          best_alpha = alpha;
        }
      }
    } else {
      const double v = objective(scale, config.alpha_init);
      if (v > best) {
        best = v;
        best_scale = scale;
        best_alpha = config.alpha_init;
      }
    }
  }
  x_out = best_scale * x;
  alpha_out = best_alpha;
  return true;
}

}  // namespace

SimulationSpec SimulationSpec::well_identified() {
  SimulationSpec spec;
  spec.group_means = {Eigen::Vector2d(-1.8, 0.0), Eigen::Vector2d(0.0, 0.9),
                      Eigen::Vector2d(1.8, 0.0)};
  spec.group_sds = {0.20, 0.25, 0.20};
  spec.regime = "well";
  return spec;
}

SimulationSpec SimulationSpec::weakly_identified() {
  SimulationSpec spec;
  spec.group_means = {Eigen::Vector2d(-1.25, 0.0), Eigen::Vector2d(0.0, 0.0),
                      Eigen::Vector2d(1.25, 0.0)};
  spec.group_sds = {0.20, 0.45, 0.20};
  spec.regime = "weak";
  return spec;
}

SimulationSpec SimulationSpec::by_name(const std::string& regime) {
  if (regime == "well") return well_identified();
  if (regime == "weak") return weakly_identified();
  throw InvalidInputError("unknown regime: " + regime + " (expected well|weak)");
}

SimulationSpec SimulationSpec::with_sizes(int n_left, int n_bridge, int n_right) const {
  SimulationSpec spec = *this;
  spec.group_sizes = {n_left, n_bridge, n_right};
  spec.validate();
  return spec;
}

void SimulationSpec::validate() const {
  for (int s : group_sizes)
    if (s <= 0) throw InvalidInputError("SimulationSpec: group sizes must be positive");
  for (double s : group_sds)
    if (!(s > 0.0)) throw InvalidInputError("SimulationSpec: group sds must be positive");
  if (!(target_density > 0.0) || !(target_density < 1.0))
    throw InvalidInputError("SimulationSpec: target density must lie in (0, 1)");
}

SimulatedTemplate simulate_template(const SimulationSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int n = spec.total_nodes();
  Configuration x(n, 2);
  std::vector<char> labels;
  labels.reserve(static_cast<std::size_t>(n));
  rng::Engine engine(rng::derive(seed, 0x7e3a));
  const char tags[3] = {'L', 'B', 'R'};
  int row = 0;
  for (int g = 0; g < 3; ++g) {
    for (int i = 0; i < spec.group_sizes[static_cast<std::size_t>(g)]; ++i) {
      x(row, 0) = spec.group_means[static_cast<std::size_t>(g)](0) +
                  spec.group_sds[static_cast<std::size_t>(g)] * rng::normal(engine);
      x(row, 1) = spec.group_means[static_cast<std::size_t>(g)](1) +
                  spec.group_sds[static_cast<std::size_t>(g)] * rng::normal(engine);
      labels.push_back(tags[g]);
      ++row;
    }
  }
  return SimulatedTemplate{std::move(x), std::move(labels)};
}

double calibrate_intercept(const Configuration& positions, double target_density,
                           const LinkFunction& link) {
  require_finite(positions, "calibrate_intercept");
  if (!(target_density > 0.0) || !(target_density < 1.0))
    throw InvalidInputError("calibrate_intercept: target must lie in (0, 1)");
  const Matrix dist = pairwise_distances(positions);

  double lo = -50.0, hi = 50.0;
  double f_lo = expected_density(dist, lo, link);
  double f_hi = expected_density(dist, hi, link);
  if (f_lo > target_density || f_hi < target_density)
    throw NumericalError("calibrate_intercept: target density unreachable on [-50, 50]");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = expected_density(dist, mid, link);
    if (std::abs(f_mid - target_density) < 1e-10) return mid;
    if (f_mid < target_density)
      lo = mid;
    else
      hi = mid;
  }
  const double mid = 0.5 * (lo + hi);
  if (std::abs(expected_density(dist, mid, link) - target_density) > 1e-10)
    throw NumericalError("calibrate_intercept: bisection failed to reach tolerance");
  return mid;
}

AdjacencyMatrix simulate_graph(const Configuration& positions, double alpha,
                               const LinkFunction& link, std::uint64_t seed) {
  require_finite(positions, "simulate_graph");
  const int n = static_cast<int>(positions.rows());
  AdjacencyMatrix a = AdjacencyMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      rng::Engine engine(rng::derive(seed, static_cast<std::uint64_t>(i),
                                     static_cast<std::uint64_t>(j)));
      const double p = link(alpha - (positions.row(i) - positions.row(j)).norm());
      if (rng::uniform01(engine) < p) {
        a(i, j) = 1;
        a(j, i) = 1;
      }
    }
  return a;
}

SamplerConfig SamplerConfig::florentine() {
  SamplerConfig config;
  config.prior_mean_alpha = 2.0;
  config.prior_sd_alpha = 2.0;
  config.alpha_init = 2.0;
  return config;
}

void SamplerConfig::validate() const {
  if (!(prior_sd_positions > 0.0) || !(prior_sd_alpha > 0.0))
    throw InvalidInputError("SamplerConfig: prior scales must be positive");
  if (!(proposal_sd_position > 0.0) || !(proposal_sd_alpha > 0.0))
    throw InvalidInputError("SamplerConfig: proposal scales must be positive");
  if (burn_in < 0) throw InvalidInputError("SamplerConfig: burn_in must be >= 0");
  if (thin < 1) throw InvalidInputError("SamplerConfig: thin must be >= 1");
  if (draws < 1) throw InvalidInputError("SamplerConfig: draws must be >= 1");
  if (!std::isfinite(alpha_init)) throw InvalidInputError("SamplerConfig: alpha_init not finite");
}

double log_likelihood(const Configuration& positions, double alpha,
                      const AdjacencyMatrix& graph, const LinkFunction& link) {
  if (graph.rows() != positions.rows())
    throw InvalidInputError("log_likelihood: graph and positions disagree on n");
  const Index n = positions.rows();
  double s = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      s += bernoulli_term(graph(i, j),
                          alpha - (positions.row(i) - positions.row(j)).norm(), link);
  return s;
}

double log_posterior(const Configuration& positions, double alpha,
                     const AdjacencyMatrix& graph, const SamplerConfig& config) {
  const double sigma2 = config.prior_sd_positions * config.prior_sd_positions;
  const double tau2 = config.prior_sd_alpha * config.prior_sd_alpha;
  const double da = alpha - config.prior_mean_alpha;
  return log_likelihood(positions, alpha, graph, config.link) -
         0.5 * positions.squaredNorm() / sigma2 - 0.5 * da * da / tau2;
}

McmcRun mh_sample(const AdjacencyMatrix& graph, int rank, const SamplerConfig& config) {
  config.validate();
  validate_adjacency(graph);
  if (rank < 1) throw InvalidInputError("mh_sample: rank must be >= 1");
  const int n = static_cast<int>(graph.rows());
  if (n < 2) throw InvalidInputError("mh_sample: need at least two nodes");

  rng::Engine engine(rng::derive(config.seed, 0x3a3a));
  Configuration x;
  double alpha = config.alpha_init;
  if (!mds_initial_state(graph, rank, config, x, alpha)) {
    const double init_scale = std::min(config.prior_sd_positions, 1.0);
    x = init_scale * rng::gaussian_matrix(n, rank, engine);
    alpha = config.alpha_init;
  }
  Matrix dist = pairwise_distances(x);

  const double sigma2 = config.prior_sd_positions * config.prior_sd_positions;
  const double tau2 = config.prior_sd_alpha * config.prior_sd_alpha;
  const LinkFunction& link = config.link;

  // Log-likelihood terms touching node i at the given row/distances.
  const auto node_terms = [&](int i, const Eigen::RowVectorXd& row,
                              const auto& dist_to) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      s += bernoulli_term(graph(i, j), alpha - dist_to(j), link);
    }
    s -= 0.5 * row.squaredNorm() / sigma2;
    return s;
  };

  const int total_sweeps = config.burn_in + config.thin * config.draws;
  std::int64_t pos_accepted = 0;
  std::int64_t alpha_accepted = 0;

  DrawSet out;
  out.factors.reserve(static_cast<std::size_t>(config.draws));
  out.intercepts.reserve(static_cast<std::size_t>(config.draws));

  Eigen::RowVectorXd proposal(rank);
  Vector new_dist(n);
  for (int sweep = 1; sweep <= total_sweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < rank; ++k)
        proposal(k) = x(i, k) + config.proposal_sd_position * rng::normal(engine);
      for (int j = 0; j < n; ++j)
        new_dist(j) = j == i ? 0.0 : (proposal - x.row(j)).norm();
      const double current = node_terms(i, x.row(i), dist.row(i));
      const double candidate = node_terms(i, proposal, new_dist);
      if (std::log(rng::uniform01(engine)) < candidate - current) {
        x.row(i) = proposal;
        dist.row(i) = new_dist.transpose();
        dist.col(i) = new_dist;
        ++pos_accepted;
      }
    }
    if (config.sample_alpha) {
      const double alpha_new = alpha + config.proposal_sd_alpha * rng::normal(engine);
      double delta = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          delta += bernoulli_term(graph(i, j), alpha_new - dist(i, j), link) -
                   bernoulli_term(graph(i, j), alpha - dist(i, j), link);
      const double da_new = alpha_new - config.prior_mean_alpha;
      const double da_old = alpha - config.prior_mean_alpha;
      delta += -0.5 * (da_new * da_new - da_old * da_old) / tau2;
      if (std::log(rng::uniform01(engine)) < delta) {
        alpha = alpha_new;
        ++alpha_accepted;
      }
    }
    if (sweep > config.burn_in && (sweep - config.burn_in) % config.thin == 0) {
      out.factors.push_back(center_configuration(x));
      out.intercepts.push_back(alpha);
    }
  }

  McmcRun run;
  run.draws = std::move(out);
  run.accept_position = static_cast<double>(pos_accepted) /
                        (static_cast<double>(total_sweeps) * static_cast<double>(n));
  run.accept_alpha = config.sample_alpha
                         ? static_cast<double>(alpha_accepted) / static_cast<double>(total_sweeps)
                         : 0.0;
  return run;
}

}  // namespace quotnet
