#include "sbm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sbm/json_io.hpp"
#include "sbm/mc.hpp"
#include "sbm/nc_transform.hpp"
#include "sbm/planar.hpp"
#include "sbm/self_check.hpp"
#include "sbm/walk_enum.hpp"
#include "sbm/wick.hpp"

namespace sbm {

namespace {

struct GlobalOpts {
  std::string format = "json";  // json | csv | text
  std::string out_path;
  int threads = 0;
  long long budget = kDefaultWickBudget;
};

void emit(const GlobalOpts& g, std::ostream& out, const std::string& text) {
  if (g.out_path.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream f(g.out_path);
  if (!f) throw CLI::ValidationError("--out", "cannot open output file " + g.out_path);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string render_expansion(const MomentExpansion& e, const GlobalOpts& g, bool regular) {
  if (g.format == "json") {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : e.terms) {
      nlohmann::json jt{{"word", to_string(t.representative)},
                        {"multiplicity", t.multiplicity},
                        {"h", t.labels}};
      if (regular) jt["regular_weight"] = poly_to_json(regular_graph_weight(t.representative));
      terms.push_back(std::move(jt));
    }
    nlohmann::json j{{"version", kToolVersion}, {"order", e.order}, {"terms", terms}};
    return j.dump(2);
  }
  if (g.format == "csv") {
    std::ostringstream os;
    os << "word,multiplicity,h";
    if (regular) os << ",regular_weight";
    os << "\n";
    for (const auto& t : e.terms) {
      os << '"' << to_string(t.representative) << '"' << ',' << t.multiplicity << ',' << t.labels;
      if (regular) os << ",\"" << regular_graph_weight(t.representative).to_text("Z") << '"';
      os << "\n";
    }
    return os.str();
  }
  std::ostringstream os;
  os << "order " << e.order << ":\n";
  for (const auto& t : e.terms) {
    os << "  " << t.multiplicity << " tr [" << to_string(t.representative) << "]  ";
    if (regular)
      os << regular_graph_weight(t.representative).to_text("Z");
    else
      os << Poly::monomial(Int(1), t.labels).to_text("Z");
    os << "\n";
  }
  return os.str();
}

std::string render_z_poly(int order, const Poly& p, const GlobalOpts& g) {
  if (g.format == "json") {
    nlohmann::json z_coeffs = nlohmann::json::array();
    for (int k = 1; k <= p.degree(); ++k) z_coeffs.push_back(int_to_json(p.coeff(k)));
    nlohmann::json j{{"version", kToolVersion}, {"order", order}, {"z_coeffs", z_coeffs}};
    return j.dump(2);
  }
  std::ostringstream os;
  os << "mu_" << order << " = " << p.to_text("Z");
  return os.str();
}

std::string render_finite_d(const FiniteDMoment& m, const GlobalOpts& g) {
  if (g.format == "json") {
    nlohmann::json terms = nlohmann::json::array();
    for (std::size_t k = 1; k < m.z_coeffs.size(); ++k)
      terms.push_back({{"z_power", k}, {"d_poly", poly_to_json(m.z_coeffs[k])}});
    nlohmann::json j{
        {"version", kToolVersion}, {"order", m.order}, {"terms", terms}, {"sigma_power", m.order}};
    return j.dump(2);
  }
  std::ostringstream os;
  os << "mu_" << m.order << " = [";
  for (std::size_t k = 1; k < m.z_coeffs.size(); ++k) {
    if (k > 1) os << " + ";
    os << "Z";
    if (k > 1) os << "^" << k;
    os << " (" << m.z_coeffs[k].to_text("d") << ")";
  }
  os << "] sigma^" << m.order;
  return os.str();
}

std::string render_closed_form(const std::string& model, const std::vector<Poly>& rows,
                               const std::string& var, int order_step, const GlobalOpts& g) {
  if (g.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < rows.size(); ++i)
      arr.push_back({{"order", order_step * static_cast<int>(i + 1)}, {"poly", poly_to_json(rows[i])}});
    nlohmann::json j{{"version", kToolVersion}, {"model", model}, {"moments", arr}};
    return j.dump(2);
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < rows.size(); ++i)
    os << "order " << order_step * (i + 1) << ": " << rows[i].to_text(var) << "\n";
  return os.str();
}

int checked_even_order(int order) {
  if (order < 2 || order % 2 != 0)
    throw CLI::ValidationError("--order", "order must be a positive even integer");
  return order;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact spectral-moment engine for sparse random block matrices"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", g.out_path, "Write output to a file instead of stdout");
  app.add_option("--threads", g.threads, "Worker cap (0 = all available)");
  app.add_option("--budget", g.budget, "Elementary-term cap for Wick evaluation");

  // walks
  auto* walks = app.add_subcommand("walks", "Enumerate closed tree walks of one order");
  int walk_order = 0;
  bool walk_irreducible = false, walk_regular = false;
  walks->add_option("--order", walk_order, "Walk length 2p")->required();
  walks->add_flag("--irreducible", walk_irreducible, "Restrict to irreducible orbits");
  walks->add_flag("--regular", walk_regular, "Attach random-regular-graph weights");

  // moments
  auto* moments = app.add_subcommand("moments", "Exact spectral moments of one model");
  std::string model;
  int moment_order = 0;
  moments->add_option("--model", model, "goe-finite | planar | rank1 | semicircle-nc")
      ->required()
      ->check(CLI::IsMember({"goe-finite", "planar", "rank1", "semicircle-nc"}));
  moments->add_option("--order", moment_order, "Moment order 2p")->required();

  // transform
  auto* transform = app.add_subcommand("transform", "Moment/cumulant conversion on a series file");
  std::string direction, input_path;
  transform->add_option("--direction", direction, "m2c | c2m")
      ->required()
      ->check(CLI::IsMember({"m2c", "c2m"}));
  transform->add_option("--input", input_path, "Series JSON file")->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo spectral-moment experiment");
  EnsembleConfig cfg;
  int sim_order = 4;
  std::string sim_json;
  simulate->add_option("--n", cfg.n, "Block rows N")->required();
  simulate->add_option("--d", cfg.d, "Block dimension d")->required();
  simulate->add_option("--z", cfg.z, "Mean degree Z")->required();
  simulate->add_option("--sigma2", cfg.sigma2, "Block variance (default 1/d)");
  simulate->add_option("--order", sim_order, "Largest moment order 2p");
  simulate->add_option("--samples", cfg.samples, "Number of matrix samples");
  simulate->add_option("--seed", cfg.seed, "Base seed for the substreams");
  simulate->add_option("--max-dim", cfg.max_dim, "Allocation cap on N*d");
  simulate->add_option("--json", sim_json, "Write the JSON report to this file");

  // check
  auto* check = app.add_subcommand("check", "Run the cross-module verification battery");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (walks->parsed()) {
      int p = checked_even_order(walk_order) / 2;
      auto e = walk_irreducible ? irreducible_expansion(p, g.threads) : enumerate_tree_walks(p, g.threads);
      emit(g, out, render_expansion(e, g, walk_regular));
      return 0;
    }
    if (moments->parsed()) {
      int order = checked_even_order(moment_order);
      if (model == "goe-finite") {
        emit(g, out, render_finite_d(moment_finite_d(order / 2, g.budget, g.threads), g));
      } else if (model == "planar") {
        auto mu = planar_moment_table(order / 2, 8, g.threads);
        emit(g, out, render_z_poly(order, mu.back(), g));
      } else if (model == "rank1") {
        emit(g, out, render_closed_form(model, rank1_moments(order / 2), "p", 2, g));
      } else {
        emit(g, out, render_closed_form(model, semicircle_nc_moments(order), "y", 2, g));
      }
      return 0;
    }
    if (transform->parsed()) {
      std::ifstream in(input_path);
      if (!in) throw CLI::ValidationError("--input", "cannot open series file " + input_path);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw CLI::ValidationError("--input", std::string("malformed series file: ") + e.what());
      }
      Series s = series_from_json(j);
      std::vector<Poly> seq;
      for (int k = 1; k <= s.max_order; ++k) seq.push_back(s.coeff(k));
      auto converted = direction == "m2c" ? cumulants_from_moments(seq) : moments_from_cumulants(seq);
      Series result(s.max_order);
      for (int k = 1; k <= s.max_order; ++k) result.set(k, converted[static_cast<std::size_t>(k - 1)]);
      emit(g, out, series_to_json(result).dump(2));
      return 0;
    }
    if (simulate->parsed()) {
      cfg.validate();
      int p_max = checked_even_order(sim_order) / 2;
      auto res = run_experiment(cfg, p_max, g.threads);
      nlohmann::json estimates = nlohmann::json::array();
      for (const auto& est : res.estimates) {
        nlohmann::json je{{"order", est.order}, {"mean", est.mean},       {"stderr", est.stderr_},
                          {"analytic", est.analytic}, {"z", est.z_score}};
        if (est.order == 2) je["analytic_finite_n"] = est.analytic_finite_n;
        estimates.push_back(std::move(je));
      }
      nlohmann::json j{{"version", kToolVersion},
                       {"config",
                        {{"n", cfg.n},
                         {"d", cfg.d},
                         {"z", cfg.z},
                         {"sigma2", cfg.block_variance()},
                         {"samples", cfg.samples},
                         {"seed", cfg.seed}}},
                       {"estimates", estimates}};
      if (!sim_json.empty()) {
        std::ofstream f(sim_json);
        if (!f) throw CLI::ValidationError("--json", "cannot open output file " + sim_json);
        f << j.dump(2) << "\n";
      }
      emit(g, out, j.dump(2));
      return 0;
    }
    if (check->parsed()) {
      auto items = run_self_checks(g.threads, g.budget);
      bool all_ok = true;
      for (const auto& item : items) {
        out << (item.pass ? "[PASS] " : "[FAIL] ") << item.name;
        if (!item.pass && !item.detail.empty()) out << " : " << item.detail;
        out << "\n";
        all_ok = all_ok && item.pass;
      }
      out << (all_ok ? "check: all consistency checks passed\n" : "check: FAILURES detected\n");
      return all_ok ? 0 : 2;
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace sbm
