#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quotnet/display.hpp"
#include "quotnet/frechet.hpp"
#include "quotnet/lsm.hpp"
#include "quotnet/quotient.hpp"
#include "quotnet/summaries.hpp"
#include "quotnet/tangent.hpp"

namespace py = pybind11;
using namespace quotnet;

namespace {

CenteredFactor as_factor(const Matrix& y) { return CenteredFactor::checked(y); }

DrawSet make_drawset(const std::vector<Matrix>& factors,
                     const std::vector<double>& intercepts) {
  DrawSet draws;
  for (const auto& y : factors) draws.factors.push_back(CenteredFactor::checked(y));
  draws.intercepts = intercepts;
  draws.validate();
  return draws;
}

LinkFunction link_by_name(const std::string& name) { return LinkFunction::by_name(name); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quotient-geometry posterior summaries for latent space network models";

  py::register_exception<InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);
  py::register_exception<RankDeficiencyError>(m, "RankDeficiencyError", PyExc_ArithmeticError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_IOError);

  // ---- quotient geometry ----
  m.def("center_configuration",
        [](const Matrix& x) { return center_configuration(x).Y; }, py::arg("x"),
        "Subtract column means; returns the centered factor.");
  m.def("gram_of", [](const Matrix& x) { return gram_of(x).B; }, py::arg("x"),
        "Centered Gram matrix of a configuration.");
  m.def("squared_distances_from_gram",
        [](const Matrix& b) {
          return squared_distances_from_gram(GramMatrix{b, static_cast<int>(b.rows())});
        },
        py::arg("gram"));
  m.def("distances_from_gram",
        [](const Matrix& b) {
          return distances_from_gram(GramMatrix{b, static_cast<int>(b.rows())});
        },
        py::arg("gram"));
  m.def("gram_from_squared_distances",
        [](const Matrix& d) {
          const MdsResult res = gram_from_squared_distances(d);
          return py::make_tuple(res.gram.B, res.min_eigenvalue);
        },
        py::arg("squared_distances"),
        "Returns (gram, min_eigenvalue); a negative eigenvalue flags "
        "non-Euclidean input.");
  m.def("procrustes_align",
        [](const Matrix& y1, const Matrix& y2) {
          const ProcrustesResult r = procrustes_align(as_factor(y1), as_factor(y2));
          return py::make_tuple(r.rotation, r.residual);
        },
        py::arg("y1"), py::arg("y2"), "Returns (rotation, residual).");
  m.def("quotient_distance",
        [](const Matrix& y1, const Matrix& y2) {
          return quotient_distance(as_factor(y1), as_factor(y2));
        },
        py::arg("y1"), py::arg("y2"));
  m.def("solve_lyapunov", &solve_lyapunov, py::arg("spd"), py::arg("skew"));
  m.def("horizontal_project",
        [](const Matrix& y, const Matrix& z) { return horizontal_project(as_factor(y), z); },
        py::arg("base"), py::arg("z"));
  m.def("retract",
        [](const Matrix& y, const Matrix& z) { return retract(as_factor(y), z).Y; },
        py::arg("base"), py::arg("step"));
  m.def("log_lift",
        [](const Matrix& y1, const Matrix& y2) {
          return log_lift(as_factor(y1), as_factor(y2));
        },
        py::arg("base"), py::arg("target"));

  // ---- draws ----
  py::class_<DrawSet>(m, "DrawSet")
      .def(py::init(&make_drawset), py::arg("factors"),
           py::arg("intercepts") = std::vector<double>{})
      .def_property_readonly("n", [](const DrawSet& d) { return d.n(); })
      .def_property_readonly("r", [](const DrawSet& d) { return d.r(); })
      .def("__len__", &DrawSet::size)
      .def_property_readonly("factors",
                             [](const DrawSet& d) {
                               std::vector<Matrix> out;
                               for (const auto& f : d.factors) out.push_back(f.Y);
                               return out;
                             })
      .def_property_readonly("intercepts",
                             [](const DrawSet& d) { return d.intercepts; });

  // ---- Frechet mean ----
  py::class_<FrechetResult>(m, "FrechetResult")
      .def_property_readonly("mean_factor",
                             [](const FrechetResult& r) { return r.mean_factor.Y; })
      .def_property_readonly("mean_gram",
                             [](const FrechetResult& r) { return r.mean_gram.B; })
      .def_readonly("variation", &FrechetResult::variation)
      .def_readonly("iterations", &FrechetResult::iterations)
      .def_readonly("converged", &FrechetResult::converged)
      .def_readonly("per_draw_distances", &FrechetResult::per_draw_distances)
      .def_readonly("objective_trace", &FrechetResult::objective_trace);

  m.def("frechet_mean",
        [](const DrawSet& draws, double step_size, double tolerance, int max_iterations,
           int init_index, int threads) {
          FrechetConfig config;
          config.step_size = step_size;
          config.tolerance = tolerance;
          config.max_iterations = max_iterations;
          config.threads = threads;
          if (init_index >= 0) {
            config.init = FrechetConfig::Init::DrawIndex;
            config.init_index = init_index;
          }
          return frechet_mean(draws, config);
        },
        py::arg("draws"), py::arg("step_size") = 1.0, py::arg("tolerance") = 1e-8,
        py::arg("max_iterations") = 200, py::arg("init_index") = -1, py::arg("threads") = 1);
  m.def("frechet_variation", &frechet_variation, py::arg("result"));
  m.def("credible_radius", &credible_radius, py::arg("result"), py::arg("level"));
  m.def("quotient_medoid", &quotient_medoid, py::arg("draws"), py::arg("threads") = 1);
  m.def("procrustes_mean",
        [](const DrawSet& draws, int reference, bool randomize_orientation,
           std::uint64_t seed) {
          const ProcrustesMeanResult r =
              procrustes_mean(draws, reference, randomize_orientation, seed);
          return py::make_tuple(r.mean_factor, r.mean_gram.B);
        },
        py::arg("draws"), py::arg("reference"), py::arg("randomize_orientation") = false,
        py::arg("seed") = 0, "Returns (aligned_mean_factor, mean_gram).");

  // ---- tangent analysis ----
  py::class_<TangentSample>(m, "TangentSample")
      .def_property_readonly("base", [](const TangentSample& s) { return s.base.Y; })
      .def_property_readonly("residuals",
                             [](const TangentSample& s) { return s.residuals; })
      .def_readonly("draw_indices", &TangentSample::draw_indices)
      .def_readonly("excluded_count", &TangentSample::excluded_count)
      .def("__len__", &TangentSample::size);

  m.def("tangent_residuals",
        [](const Matrix& base, const DrawSet& draws) {
          return tangent_residuals(as_factor(base), draws);
        },
        py::arg("base"), py::arg("draws"));

  py::class_<TangentCovariance>(m, "TangentCovariance")
      .def_readonly("matrix", &TangentCovariance::matrix)
      .def_readonly("eigenvalues", &TangentCovariance::eigenvalues)
      .def_readonly("eigenvectors", &TangentCovariance::eigenvectors)
      .def_property_readonly("effective_dim", &TangentCovariance::effective_dim);

  m.def("tangent_covariance", &tangent_covariance, py::arg("sample"));
  m.def("principal_directions", &principal_directions, py::arg("covariance"), py::arg("k"));
  m.def("delta_variance_distance",
        [](const TangentSample& s, int i, int j) {
          const DeltaVariance dv = delta_variance_distance(s, i, j);
          return py::make_tuple(dv.variance, dv.squared_scale);
        },
        py::arg("sample"), py::arg("i"), py::arg("j"),
        "Returns (variance, squared_scale_flag).");

  // ---- summaries ----
  py::class_<DyadSummary>(m, "DyadSummary")
      .def_readonly("i", &DyadSummary::i)
      .def_readonly("j", &DyadSummary::j)
      .def_readonly("mean_distance", &DyadSummary::mean_distance)
      .def_readonly("median_distance", &DyadSummary::median_distance)
      .def_readonly("var_distance", &DyadSummary::var_distance)
      .def_readonly("ci_lo", &DyadSummary::ci_lo)
      .def_readonly("ci_hi", &DyadSummary::ci_hi)
      .def_readonly("has_probability", &DyadSummary::has_probability)
      .def_readonly("mean_probability", &DyadSummary::mean_probability)
      .def_readonly("ci_prob_lo", &DyadSummary::ci_prob_lo)
      .def_readonly("ci_prob_hi", &DyadSummary::ci_prob_hi)
      .def_readonly("mean_link_effect", &DyadSummary::mean_link_effect);

  m.def("dyad_summaries",
        [](const DrawSet& draws, const std::vector<std::pair<int, int>>& pairs,
           double level, const std::string& link, int threads) {
          if (link.empty()) return dyad_summaries(draws, pairs, level, nullptr, threads);
          const LinkFunction lf = link_by_name(link);
          return dyad_summaries(draws, pairs, level, &lf, threads);
        },
        py::arg("draws"), py::arg("pairs"), py::arg("level") = 0.95,
        py::arg("link") = std::string(), py::arg("threads") = 1);
  m.def("all_pairs", &all_pairs, py::arg("n"));
  m.def("node_uncertainty",
        [](const DrawSet& draws, int threads) {
          const NodeUncertainty u = node_uncertainty(draws, threads);
          return py::make_tuple(u.values, u.method);
        },
        py::arg("draws"), py::arg("threads") = 1, "Returns (values, method).");
  m.def("node_uncertainty_delta",
        [](const TangentSample& sample, int threads) {
          const NodeUncertainty u = node_uncertainty(sample, threads);
          return py::make_tuple(u.values, u.method);
        },
        py::arg("sample"), py::arg("threads") = 1);
  m.def("nodewise_loss",
        [](const DrawSet& draws, const Matrix& truth, int threads) {
          return nodewise_loss(draws, GramMatrix{truth, static_cast<int>(draws.r())}, threads);
        },
        py::arg("draws"), py::arg("truth_gram"), py::arg("threads") = 1);

  py::class_<SensitivityResult>(m, "SensitivityResult")
      .def_readonly("s_ref", &SensitivityResult::s_ref)
      .def_readonly("k", &SensitivityResult::k)
      .def_readonly("reference_indices", &SensitivityResult::reference_indices)
      .def_readonly("pairwise_gaps", &SensitivityResult::pairwise_gaps);

  m.def("reference_sensitivity", &reference_sensitivity, py::arg("draws"), py::arg("k"),
        py::arg("seed") = 0);
  m.def("posterior_predictive",
        [](const DrawSet& draws, const std::string& link, int count, std::uint64_t seed) {
          return posterior_predictive(draws, link_by_name(link), count, seed);
        },
        py::arg("draws"), py::arg("link") = "logistic", py::arg("count") = 1,
        py::arg("seed") = 0);

  // ---- simulation and sampling ----
  py::class_<SimulationSpec>(m, "SimulationSpec")
      .def_static("well_identified", &SimulationSpec::well_identified)
      .def_static("weakly_identified", &SimulationSpec::weakly_identified)
      .def("with_sizes", &SimulationSpec::with_sizes, py::arg("n_left"), py::arg("n_bridge"),
           py::arg("n_right"))
      .def_readwrite("target_density", &SimulationSpec::target_density)
      .def_readonly("regime", &SimulationSpec::regime)
      .def_property_readonly("total_nodes", &SimulationSpec::total_nodes);

  m.def("simulate_template",
        [](const SimulationSpec& spec, std::uint64_t seed) {
          const SimulatedTemplate tpl = simulate_template(spec, seed);
          std::string labels(tpl.labels.begin(), tpl.labels.end());
          return py::make_tuple(tpl.positions, labels);
        },
        py::arg("spec"), py::arg("seed") = 0, "Returns (positions, labels).");
  m.def("calibrate_intercept",
        [](const Matrix& positions, double target, const std::string& link) {
          return calibrate_intercept(positions, target, link_by_name(link));
        },
        py::arg("positions"), py::arg("target_density"), py::arg("link") = "logistic");
  m.def("simulate_graph",
        [](const Matrix& positions, double alpha, const std::string& link,
           std::uint64_t seed) {
          return simulate_graph(positions, alpha, link_by_name(link), seed);
        },
        py::arg("positions"), py::arg("alpha"), py::arg("link") = "logistic",
        py::arg("seed") = 0);

  py::class_<SamplerConfig>(m, "SamplerConfig")
      .def(py::init<>())
      .def_static("florentine", &SamplerConfig::florentine)
      .def_readwrite("prior_sd_positions", &SamplerConfig::prior_sd_positions)
      .def_readwrite("prior_mean_alpha", &SamplerConfig::prior_mean_alpha)
      .def_readwrite("prior_sd_alpha", &SamplerConfig::prior_sd_alpha)
      .def_readwrite("proposal_sd_position", &SamplerConfig::proposal_sd_position)
      .def_readwrite("proposal_sd_alpha", &SamplerConfig::proposal_sd_alpha)
      .def_readwrite("burn_in", &SamplerConfig::burn_in)
      .def_readwrite("thin", &SamplerConfig::thin)
      .def_readwrite("draws", &SamplerConfig::draws)
      .def_readwrite("seed", &SamplerConfig::seed)
      .def_readwrite("sample_alpha", &SamplerConfig::sample_alpha)
      .def_readwrite("alpha_init", &SamplerConfig::alpha_init);

  m.def("log_likelihood",
        [](const Matrix& positions, double alpha, const AdjacencyMatrix& graph,
           const std::string& link) {
          return log_likelihood(positions, alpha, graph, link_by_name(link));
        },
        py::arg("positions"), py::arg("alpha"), py::arg("graph"),
        py::arg("link") = "logistic");
  m.def("log_posterior", &log_posterior, py::arg("positions"), py::arg("alpha"),
        py::arg("graph"), py::arg("config"));
  m.def("mh_sample",
        [](const AdjacencyMatrix& graph, int rank, const SamplerConfig& config) {
          const McmcRun run = mh_sample(graph, rank, config);
          return py::make_tuple(run.draws, run.accept_position, run.accept_alpha);
        },
        py::arg("graph"), py::arg("rank"), py::arg("config"),
        "Returns (draws, accept_position, accept_alpha).");

  // ---- display ----
  m.def("embed_mean",
        [](const Matrix& gram, int rank) { return embed_mean(GramMatrix{gram, rank}); },
        py::arg("gram"), py::arg("rank"));
  m.def("align_for_display",
        [](const DrawSet& draws, const Matrix& mean) {
          return align_for_display(draws, as_factor(mean));
        },
        py::arg("draws"), py::arg("mean_factor"));
}
