#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "quotnet/display.hpp"
#include "quotnet/frechet.hpp"
#include "quotnet/io.hpp"
#include "quotnet/lsm.hpp"
#include "quotnet/quotient.hpp"
#include "quotnet/rng.hpp"
#include "quotnet/stats.hpp"
#include "quotnet/summaries.hpp"
#include "quotnet/tangent.hpp"

namespace qn = quotnet;

namespace {

struct GlobalOptions {
  double tol = 1e-8;
  int max_iter = 200;
  int threads = 1;
  bool quiet = false;
};

void note(const GlobalOptions& g, const std::string& msg) {
  if (!g.quiet) std::cerr << "note: " << msg << '\n';
}

qn::FrechetConfig frechet_config(const GlobalOptions& g) {
  qn::FrechetConfig config;
  config.tolerance = g.tol;
  config.max_iterations = g.max_iter;
  config.threads = g.threads;
  return config;
}

qn::DrawSet load_draws(const std::string& draws_path, const std::string& intercepts_path,
                       const GlobalOptions& g) {
  bool recentered = false;
  qn::DrawSet draws = qn::read_draws(draws_path, &recentered);
  if (recentered) note(g, "draws in " + draws_path + " were centered on load");
  if (!intercepts_path.empty()) {
    draws.intercepts = qn::read_intercepts(intercepts_path);
    draws.validate();
  }
  return draws;
}

void apply_config_file(qn::SamplerConfig& config, const std::string& path) {
  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(qn::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw qn::IoError(path + ": " + e.what());
  }
  if (spec.contains("preset")) {
    const std::string preset = spec.at("preset").get<std::string>();
    if (preset == "florentine")
      config = qn::SamplerConfig::florentine();
    else if (!preset.empty() && preset != "default")
      throw qn::InvalidInputError("unknown sampler preset: " + preset);
  }
  const auto get = [&](const char* key, auto& slot) {
    if (spec.contains(key)) spec.at(key).get_to(slot);
  };
  get("prior_sd_positions", config.prior_sd_positions);
  get("prior_mean_alpha", config.prior_mean_alpha);
  get("prior_sd_alpha", config.prior_sd_alpha);
  get("proposal_sd_position", config.proposal_sd_position);
  get("proposal_sd_alpha", config.proposal_sd_alpha);
  get("burn_in", config.burn_in);
  get("thin", config.thin);
  get("draws", config.draws);
  get("sample_alpha", config.sample_alpha);
  get("alpha_init", config.alpha_init);
  if (spec.contains("link"))
    config.link = qn::LinkFunction::by_name(spec.at("link").get<std::string>());
}

std::vector<std::string> coordinate_columns(qn::Index r) {
  std::vector<std::string> cols;
  for (qn::Index k = 0; k < r; ++k) cols.push_back("x" + std::to_string(k + 1));
  return cols;
}

void run_simulate(const std::string& regime, std::uint64_t seed,
                  const std::string& out_prefix, const std::vector<int>& sizes,
                  double target_density, const GlobalOptions& g) {
  qn::SimulationSpec spec = qn::SimulationSpec::by_name(regime);
  if (!sizes.empty()) {
    if (sizes.size() != 3)
      throw qn::InvalidInputError("--sizes expects three comma-separated counts");
    spec = spec.with_sizes(sizes[0], sizes[1], sizes[2]);
  }
  spec.target_density = target_density;

  const qn::SimulatedTemplate tpl = qn::simulate_template(spec, seed);
  const qn::LinkFunction link = qn::LinkFunction::logistic();
  const double alpha = qn::calibrate_intercept(tpl.positions, spec.target_density, link);
  const qn::AdjacencyMatrix graph =
      qn::simulate_graph(tpl.positions, alpha, link, qn::rng::derive(seed, 0x6a4f));

  qn::Table table;
  table.columns = {"node", "label", "x1", "x2"};
  for (qn::Index i = 0; i < tpl.positions.rows(); ++i)
    table.rows.push_back({std::to_string(i),
                          std::string(1, tpl.labels[static_cast<std::size_t>(i)]),
                          qn::fmt17(tpl.positions(i, 0)), qn::fmt17(tpl.positions(i, 1))});
  qn::write_csv(out_prefix + "_template.csv", table);

  std::string labels;
  for (char c : tpl.labels) {
    labels += c;
    labels += '\n';
  }
  qn::write_file(out_prefix + "_labels.txt", labels);
  qn::write_adjacency(out_prefix + "_graph.txt", graph);
  qn::write_gram(out_prefix + "_truth_gram.txt", qn::gram_of(tpl.positions));

  qn::Report report;
  report.set("command", std::string("simulate"));
  report.set("regime", spec.regime);
  report.set("seed", static_cast<long long>(seed));
  report.set("n", static_cast<long long>(spec.total_nodes()));
  report.set("sizes", std::vector<long long>{spec.group_sizes[0], spec.group_sizes[1],
                                             spec.group_sizes[2]});
  report.set("target_density", spec.target_density);
  report.set("alpha_star", alpha);
  report.set("graph_density",
             graph.cast<double>().sum() / (static_cast<double>(graph.rows()) *
                                           static_cast<double>(graph.rows() - 1)));
  report.write(out_prefix + "_report.txt");
  note(g, "simulate: wrote " + out_prefix +
              "_{template.csv,labels.txt,graph.txt,truth_gram.txt,report.txt}");
}

// Reads positions from a coordinate csv (columns x1..xr, as written by
// simulate) and reports the intercept hitting the target expected density.
void run_calibrate(const std::string& template_path, double target_density,
                   const std::string& link_name, const std::string& out_path) {
  const qn::Table table = qn::read_csv(template_path);
  std::vector<int> coord_cols;
  for (int k = 1;; ++k) {
    const int idx = table.column_index("x" + std::to_string(k));
    if (idx < 0) break;
    coord_cols.push_back(idx);
  }
  if (coord_cols.empty())
    throw qn::IoError(template_path + ": no coordinate columns x1..xr found");
  qn::Matrix positions(static_cast<qn::Index>(table.rows.size()),
                       static_cast<qn::Index>(coord_cols.size()));
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    for (std::size_t k = 0; k < coord_cols.size(); ++k)
      positions(static_cast<qn::Index>(i), static_cast<qn::Index>(k)) =
          std::stod(table.rows[i][static_cast<std::size_t>(coord_cols[k])]);

  const qn::LinkFunction link = qn::LinkFunction::by_name(link_name);
  const double alpha = qn::calibrate_intercept(positions, target_density, link);

  double density = 0.0;
  const qn::Index n = positions.rows();
  for (qn::Index i = 0; i < n; ++i)
    for (qn::Index j = i + 1; j < n; ++j)
      density += link(alpha - (positions.row(i) - positions.row(j)).norm());
  density /= 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);

  qn::Report report;
  report.set("command", std::string("calibrate"));
  report.set("n", static_cast<long long>(n));
  report.set("link", link_name);
  report.set("target_density", target_density);
  report.set("alpha_star", alpha);
  report.set("achieved_density", density);
  report.write(out_path);
}

void run_sample(const std::string& graph_path, int rank, std::uint64_t seed,
                const std::string& out_prefix, const qn::SamplerConfig& base_config,
                const GlobalOptions& g) {
  qn::SamplerConfig config = base_config;
  config.seed = seed;
  const qn::AdjacencyMatrix graph = qn::read_adjacency(graph_path);
  const qn::McmcRun run = qn::mh_sample(graph, rank, config);

  qn::write_draws(out_prefix + "_draws.txt", run.draws);
  qn::write_intercepts(out_prefix + "_intercepts.txt", run.draws.intercepts);

  qn::Report report;
  report.set("command", std::string("sample"));
  report.set("seed", static_cast<long long>(seed));
  report.set("n", static_cast<long long>(run.draws.n()));
  report.set("rank", static_cast<long long>(rank));
  report.set("draws", static_cast<long long>(run.draws.size()));
  report.set("burn_in", static_cast<long long>(config.burn_in));
  report.set("thin", static_cast<long long>(config.thin));
  report.set("accept_position", run.accept_position);
  report.set("accept_alpha", run.accept_alpha);
  report.write(out_prefix + "_report.txt");
  note(g, "sample: acceptance " + qn::fmt17(run.accept_position) + " (positions), " +
              qn::fmt17(run.accept_alpha) + " (intercept)");
}

void run_summarize(const std::string& draws_path, const std::string& out_prefix,
                   const GlobalOptions& g) {
  const qn::DrawSet draws = load_draws(draws_path, "", g);
  const qn::FrechetResult res = qn::frechet_mean(draws, frechet_config(g));

  qn::Report report;
  report.set("command", std::string("summarize"));
  report.set("n", static_cast<long long>(draws.n()));
  report.set("r", static_cast<long long>(draws.r()));
  report.set("draws", static_cast<long long>(draws.size()));
  report.set("variation", res.variation);
  report.set("iterations", static_cast<long long>(res.iterations));
  report.set("converged", res.converged);
  report.set("credible_radius_0.50", qn::credible_radius(res, 0.50));
  report.set("credible_radius_0.90", qn::credible_radius(res, 0.90));
  report.set("credible_radius_0.95", qn::credible_radius(res, 0.95));
  report.set("objective_trace", res.objective_trace);
  report.write(out_prefix + "_summary.txt");

  qn::write_gram(out_prefix + "_mean_gram.txt", res.mean_gram);
  qn::DrawSet mean_only;
  mean_only.factors.push_back(res.mean_factor);
  qn::write_draws(out_prefix + "_mean_factor.txt", mean_only);
  if (!res.converged) note(g, "summarize: iteration stopped before the tolerance was met");
}

void run_dyads(const std::string& draws_path, const std::string& intercepts_path,
               const std::string& pairs_path, bool all, double level,
               const std::string& link_name, const std::string& out_path,
               const GlobalOptions& g) {
  const qn::DrawSet draws = load_draws(draws_path, intercepts_path, g);

  std::vector<std::pair<int, int>> pairs;
  if (all || pairs_path.empty()) {
    pairs = qn::all_pairs(static_cast<int>(draws.n()));
  } else {
    std::istringstream in(qn::read_file(pairs_path));
    int i = 0, j = 0;
    while (in >> i >> j) pairs.emplace_back(i, j);
    if (pairs.empty()) throw qn::IoError(pairs_path + ": no 'i j' pairs found");
  }

  std::optional<qn::LinkFunction> link;
  if (!link_name.empty()) link = qn::LinkFunction::by_name(link_name);
  const auto summaries =
      qn::dyad_summaries(draws, pairs, level, link ? &*link : nullptr, g.threads);

  qn::Table table;
  table.columns = {"i", "j", "mean_distance", "median_distance", "var_distance",
                   "ci_lo", "ci_hi"};
  if (link)
    for (const char* c : {"mean_probability", "ci_prob_lo", "ci_prob_hi", "mean_link_effect"})
      table.columns.push_back(c);
  for (const auto& s : summaries) {
    std::vector<std::string> row{std::to_string(s.i),        std::to_string(s.j),
                                 qn::fmt17(s.mean_distance), qn::fmt17(s.median_distance),
                                 qn::fmt17(s.var_distance),  qn::fmt17(s.ci_lo),
                                 qn::fmt17(s.ci_hi)};
    if (link) {
      row.push_back(qn::fmt17(s.mean_probability));
      row.push_back(qn::fmt17(s.ci_prob_lo));
      row.push_back(qn::fmt17(s.ci_prob_hi));
      row.push_back(qn::fmt17(s.mean_link_effect));
    }
    table.rows.push_back(std::move(row));
  }
  qn::write_csv(out_path, table);
}

void run_nodes(const std::string& draws_path, const std::string& truth_path,
               const std::string& method, const std::string& names_path,
               const std::string& out_path, const std::string& summary_path,
               const GlobalOptions& g) {
  const qn::DrawSet draws = load_draws(draws_path, "", g);

  qn::NodeUncertainty u{};
  if (method == "mc") {
    u = qn::node_uncertainty(draws, g.threads);
  } else if (method == "delta") {
    const qn::FrechetResult res = qn::frechet_mean(draws, frechet_config(g));
    const qn::TangentSample sample = qn::tangent_residuals(res.mean_factor, draws);
    if (sample.excluded_count > 0)
      note(g, "nodes: excluded " + std::to_string(sample.excluded_count) +
                  " rank-deficient draws from the linearization");
    u = qn::node_uncertainty(sample, g.threads);
  } else {
    throw qn::InvalidInputError("--method must be mc or delta");
  }

  std::vector<std::string> names;
  if (!names_path.empty()) {
    std::istringstream in(qn::read_file(names_path));
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) names.push_back(line);
    if (names.size() != static_cast<std::size_t>(draws.n()))
      throw qn::IoError(names_path + ": expected one name per node");
  }

  std::optional<qn::Vector> loss;
  if (!truth_path.empty())
    loss = qn::nodewise_loss(draws, qn::read_gram(truth_path), g.threads);

  qn::Table table;
  table.columns = {"node"};
  if (!names.empty()) table.columns.push_back("name");
  table.columns.push_back("uncertainty");
  if (loss) table.columns.push_back("loss");
  for (qn::Index i = 0; i < u.values.size(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    if (!names.empty()) row.push_back(names[static_cast<std::size_t>(i)]);
    row.push_back(qn::fmt17(u.values(i)));
    if (loss) row.push_back(qn::fmt17((*loss)(i)));
    table.rows.push_back(std::move(row));
  }
  qn::write_csv(out_path, table);

  if (!summary_path.empty()) {
    qn::Report report;
    report.set("command", std::string("nodes"));
    report.set("n", static_cast<long long>(u.values.size()));
    report.set("method", u.method);
    report.set("mean_uncertainty", u.values.mean());
    report.set("max_uncertainty", u.values.maxCoeff());
    if (loss)
      report.set("corr_uncertainty_loss", qn::stats::pearson(u.values, *loss));
    report.write(summary_path);
  }
}

void run_sensitivity(const std::string& draws_path, int k, std::uint64_t seed,
                     const std::string& out_path, const GlobalOptions& g) {
  const qn::DrawSet draws = load_draws(draws_path, "", g);
  const qn::SensitivityResult res = qn::reference_sensitivity(draws, k, seed);

  qn::Report report;
  report.set("command", std::string("sensitivity"));
  report.set("seed", static_cast<long long>(seed));
  report.set("k", static_cast<long long>(res.k));
  report.set("s_ref", res.s_ref);
  report.set("reference_indices",
             std::vector<long long>(res.reference_indices.begin(), res.reference_indices.end()));
  report.set("pairwise_gaps", res.pairwise_gaps);
  report.write(out_path);
}

void run_embed(const std::string& gram_path, int rank_override, const std::string& out_path) {
  qn::GramMatrix gram = qn::read_gram(gram_path);
  if (rank_override > 0) gram.rank_bound = rank_override;
  const qn::Matrix emb = qn::embed_mean(gram);

  qn::Table table;
  table.columns = {"node"};
  for (const auto& c : coordinate_columns(emb.cols())) table.columns.push_back(c);
  for (qn::Index i = 0; i < emb.rows(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (qn::Index k = 0; k < emb.cols(); ++k) row.push_back(qn::fmt17(emb(i, k)));
    table.rows.push_back(std::move(row));
  }
  qn::write_csv(out_path, table);
}

void run_align(const std::string& draws_path, const std::string& mean_path,
               const std::string& out_path, const GlobalOptions& g) {
  const qn::DrawSet draws = load_draws(draws_path, "", g);
  const qn::DrawSet mean_file = load_draws(mean_path, "", g);
  if (mean_file.size() != 1)
    throw qn::InvalidInputError("--mean must hold exactly one factor");
  const auto tables = qn::align_for_display(draws, mean_file.factors[0]);

  qn::Table table;
  table.columns = {"draw", "node"};
  for (const auto& c : coordinate_columns(draws.r())) table.columns.push_back(c);
  for (std::size_t m = 0; m < tables.size(); ++m)
    for (qn::Index i = 0; i < tables[m].rows(); ++i) {
      std::vector<std::string> row{std::to_string(m), std::to_string(i)};
      for (qn::Index k = 0; k < tables[m].cols(); ++k)
        row.push_back(qn::fmt17(tables[m](i, k)));
      table.rows.push_back(std::move(row));
    }
  qn::write_csv(out_path, table);
}

void run_predictive(const std::string& draws_path, const std::string& intercepts_path,
                    int count, std::uint64_t seed, const std::string& link_name,
                    const std::string& out_prefix, const GlobalOptions& g) {
  const qn::DrawSet draws = load_draws(draws_path, intercepts_path, g);
  const qn::LinkFunction link = qn::LinkFunction::by_name(link_name);
  const auto reps = qn::posterior_predictive(draws, link, count, seed);
  for (std::size_t t = 0; t < reps.size(); ++t) {
    char suffix[24];
    std::snprintf(suffix, sizeof(suffix), "_rep%04zu.txt", t);
    qn::write_adjacency(out_prefix + suffix, reps[t]);
  }
  note(g, "predictive: wrote " + std::to_string(reps.size()) + " replicates");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quotnet: quotient-geometry posterior summaries for latent space network models"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--tol", global.tol, "relative convergence tolerance for mean iterations");
  app.add_option("--max-iter", global.max_iter, "iteration cap for mean computations");
  app.add_option("--threads", global.threads, "worker threads for per-draw and per-dyad loops");
  app.add_flag("--quiet", global.quiet, "suppress informational notes on stderr");

  auto* simulate = app.add_subcommand("simulate", "generate a three-group template and graph");
  std::string regime = "well";
  std::uint64_t sim_seed = 0;
  std::string sim_prefix;
  std::vector<int> sim_sizes;
  double sim_density = 0.1;
  simulate->add_option("--regime", regime, "well|weak")->required();
  simulate->add_option("--seed", sim_seed, "RNG seed")->required();
  simulate->add_option("--out-prefix", sim_prefix, "output path prefix")->required();
  simulate->add_option("--sizes", sim_sizes, "group sizes nL,nB,nR")->delimiter(',');
  simulate->add_option("--target-density", sim_density, "expected edge density");

  auto* calibrate = app.add_subcommand("calibrate", "intercept for a target edge density");
  std::string ca_template, ca_link = "logistic", ca_out;
  double ca_density = 0.1;
  calibrate->add_option("--template", ca_template, "coordinate csv (columns x1..xr)")->required();
  calibrate->add_option("--target-density", ca_density, "expected edge density");
  calibrate->add_option("--link", ca_link, "link function");
  calibrate->add_option("--out", ca_out, "output report")->required();

  auto* sample = app.add_subcommand("sample", "fit the model by random-walk Metropolis");
  std::string graph_path, config_path, sample_prefix, preset;
  int rank = 2;
  std::uint64_t sample_seed = 0;
  qn::SamplerConfig sampler_config;
  sample->add_option("--graph", graph_path, "adjacency file")->required();
  sample->add_option("--rank", rank, "latent dimension")->required();
  sample->add_option("--seed", sample_seed, "RNG seed")->required();
  sample->add_option("--out", sample_prefix, "output path prefix")->required();
  sample->add_option("--config", config_path, "JSON sampler configuration");
  sample->add_option("--preset", preset, "named configuration preset (florentine)");
  sample->add_option("--burn-in", sampler_config.burn_in, "burn-in sweeps");
  sample->add_option("--thin", sampler_config.thin, "thinning interval");
  sample->add_option("--draws", sampler_config.draws, "retained draws");
  sample->add_option("--proposal-sd-pos", sampler_config.proposal_sd_position,
                     "position proposal scale");
  sample->add_option("--proposal-sd-alpha", sampler_config.proposal_sd_alpha,
                     "intercept proposal scale");
  sample->add_option("--prior-sd-pos", sampler_config.prior_sd_positions,
                     "prior sd of latent coordinates");
  sample->add_option("--prior-mean-alpha", sampler_config.prior_mean_alpha,
                     "prior mean of the intercept");
  sample->add_option("--prior-sd-alpha", sampler_config.prior_sd_alpha,
                     "prior sd of the intercept");

  auto* summarize = app.add_subcommand("summarize", "Frechet mean, variation and credible radii");
  std::string draws_path, out_prefix;
  summarize->add_option("--draws", draws_path, "draws file")->required();
  summarize->add_option("--out-prefix", out_prefix, "output path prefix")->required();

  auto* dyads = app.add_subcommand("dyads", "per-dyad distance and probability summaries");
  std::string dy_draws, dy_intercepts, dy_pairs, dy_link, dy_out;
  bool dy_all = false;
  double dy_level = 0.95;
  dyads->add_option("--draws", dy_draws, "draws file")->required();
  dyads->add_option("--out", dy_out, "output csv")->required();
  dyads->add_option("--pairs", dy_pairs, "file of 'i j' pairs");
  dyads->add_flag("--all", dy_all, "summarize every unordered pair");
  dyads->add_option("--level", dy_level, "credible level in (0, 1]");
  dyads->add_option("--link", dy_link, "link for edge probabilities (logistic|probit)");
  dyads->add_option("--intercepts", dy_intercepts, "intercepts file (needed with --link)");

  auto* nodes = app.add_subcommand("nodes", "node-level uncertainty (and loss given truth)");
  std::string no_draws, no_truth, no_names, no_out, no_method = "mc";
  nodes->add_option("--draws", no_draws, "draws file")->required();
  nodes->add_option("--out", no_out, "output csv")->required();
  nodes->add_option("--truth", no_truth, "gram file of the true structure");
  nodes->add_option("--method", no_method, "mc|delta");
  nodes->add_option("--names", no_names, "file of node names, one per line");
  std::string no_summary;
  nodes->add_option("--summary-out", no_summary,
                    "also write a key-value summary report (includes the "
                    "uncertainty/loss correlation when --truth is given)");

  auto* sensitivity = app.add_subcommand("sensitivity", "reference-sensitivity index");
  std::string se_draws, se_out;
  int se_k = 10;
  std::uint64_t se_seed = 0;
  sensitivity->add_option("--draws", se_draws, "draws file")->required();
  sensitivity->add_option("--k", se_k, "number of references")->required();
  sensitivity->add_option("--seed", se_seed, "RNG seed")->required();
  sensitivity->add_option("--out", se_out, "output report")->required();

  auto* embed = app.add_subcommand("embed", "eigendecomposition embedding of a gram matrix");
  std::string em_gram, em_out;
  int em_rank = 0;
  embed->add_option("--gram", em_gram, "gram file")->required();
  embed->add_option("--out", em_out, "output csv")->required();
  embed->add_option("--rank", em_rank, "override the embedding rank");

  auto* align = app.add_subcommand("align", "align draws to a mean factor for display");
  std::string al_draws, al_mean, al_out;
  align->add_option("--draws", al_draws, "draws file")->required();
  align->add_option("--mean", al_mean, "mean factor file (draws file with M = 1)")->required();
  align->add_option("--out", al_out, "output csv")->required();

  auto* predictive = app.add_subcommand("predictive", "posterior predictive replicate graphs");
  std::string pr_draws, pr_intercepts, pr_prefix, pr_link = "logistic";
  int pr_count = 1;
  std::uint64_t pr_seed = 0;
  predictive->add_option("--draws", pr_draws, "draws file")->required();
  predictive->add_option("--intercepts", pr_intercepts, "intercepts file")->required();
  predictive->add_option("--count", pr_count, "number of replicates")->required();
  predictive->add_option("--seed", pr_seed, "RNG seed")->required();
  predictive->add_option("--out-prefix", pr_prefix, "output path prefix")->required();
  predictive->add_option("--link", pr_link, "link function");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*simulate) {
      run_simulate(regime, sim_seed, sim_prefix, sim_sizes, sim_density, global);
    } else if (*calibrate) {
      run_calibrate(ca_template, ca_density, ca_link, ca_out);
    } else if (*sample) {
      if (!preset.empty()) {
        if (preset != "florentine")
          throw qn::InvalidInputError("unknown sampler preset: " + preset);
        // Start from the preset, then re-apply any explicitly given flags.
        qn::SamplerConfig merged = qn::SamplerConfig::florentine();
        const qn::SamplerConfig defaults;
        if (sampler_config.burn_in != defaults.burn_in) merged.burn_in = sampler_config.burn_in;
        if (sampler_config.thin != defaults.thin) merged.thin = sampler_config.thin;
        if (sampler_config.draws != defaults.draws) merged.draws = sampler_config.draws;
        if (sampler_config.proposal_sd_position != defaults.proposal_sd_position)
          merged.proposal_sd_position = sampler_config.proposal_sd_position;
        if (sampler_config.proposal_sd_alpha != defaults.proposal_sd_alpha)
          merged.proposal_sd_alpha = sampler_config.proposal_sd_alpha;
        if (sampler_config.prior_sd_positions != defaults.prior_sd_positions)
          merged.prior_sd_positions = sampler_config.prior_sd_positions;
        if (sampler_config.prior_mean_alpha != defaults.prior_mean_alpha)
          merged.prior_mean_alpha = sampler_config.prior_mean_alpha;
        if (sampler_config.prior_sd_alpha != defaults.prior_sd_alpha)
          merged.prior_sd_alpha = sampler_config.prior_sd_alpha;
        sampler_config = merged;
      }
      if (!config_path.empty()) apply_config_file(sampler_config, config_path);
      run_sample(graph_path, rank, sample_seed, sample_prefix, sampler_config, global);
    } else if (*summarize) {
      run_summarize(draws_path, out_prefix, global);
    } else if (*dyads) {
      run_dyads(dy_draws, dy_intercepts, dy_pairs, dy_all, dy_level, dy_link, dy_out, global);
    } else if (*nodes) {
      run_nodes(no_draws, no_truth, no_method, no_names, no_out, no_summary, global);
    } else if (*sensitivity) {
      run_sensitivity(se_draws, se_k, se_seed, se_out, global);
    } else if (*embed) {
      run_embed(em_gram, em_rank, em_out);
    } else if (*align) {
      run_align(al_draws, al_mean, al_out, global);
    } else if (*predictive) {
      run_predictive(pr_draws, pr_intercepts, pr_count, pr_seed, pr_link, pr_prefix, global);
    }
  } catch (const qn::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const qn::InvalidInputError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const qn::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
