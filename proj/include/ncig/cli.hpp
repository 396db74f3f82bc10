// Copyright 2026 The ncig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 pass, 1 check failed, 2 parse error,
// 3 domain error, 4 solver did not converge.

#pragma once

#include <chrono>
#include <ctime>

#include "CLI11.hpp"
#include "ncig/verify.hpp"

namespace ncig::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kParseError = 2, kDomainError = 3, kSolverError = 4 };

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out;
  std::string format = "json";
};

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void emit(const GlobalOptions& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot write '" + g.out + "'");
  f << text;
}

/// Flat objects as a two-line CSV; nested values are embedded as JSON.
inline std::string render(const Json& j, const std::string& format) {
  if (format == "json") return io::dump(j, 2) + "\n";
  std::string header, row;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += it.key();
    std::string cell = it.value().is_string() ? it.value().get<std::string>() : io::dump(it.value());
    if (cell.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : cell) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      cell = quoted + "\"";
    }
    row += cell;
  }
  return header + "\n" + row + "\n";
}

}  // namespace detail

inline int cmd_divergence(const GlobalOptions& g, const std::string& phi_path, const std::string& psi_path,
                          double alpha, bool oracle, std::ostream& out) {
  NormalFunctional phi = io::functional_from_json(io::read_file(phi_path));
  NormalFunctional psi = io::functional_from_json(io::read_file(psi_path));
  DivergenceValue v = alpha_divergence(phi, psi, alpha);
  Json report = {{"alpha", alpha}, {"value", v.value}, {"lower_bound", v.lower_bound}};
  bool ok = true;
  if (oracle) {
    const double o = alpha_via_quasientropy(phi, psi, alpha);
    ok = std::abs(o - v.value) <= g.tol.value_or(1e-9);
    report["oracle_value"] = o;
    report["agreement"] = ok;
  }
  detail::emit(g, out, detail::render(report, g.format));
  return ok ? kPass : kCheckFailed;
}

inline int cmd_project(const GlobalOptions& g, const std::string& y_path, const std::string& set_path,
                       std::optional<double> alpha, int max_iter, int certificate_samples,
                       bool random_start, std::ostream& out) {
  Json yj = io::read_file(y_path);
  ConvexSetSpec set = io::convex_set_from_json(io::read_file(set_path));
  ProjectionOptions opts;
  if (g.tol) opts.tolerance = *g.tol;
  opts.seed = g.seed.value_or(0);
  opts.max_iter = max_iter;
  opts.certificate_samples = certificate_samples;
  opts.random_start = random_start;

  const bool is_vector = io::is_lp_vector_json(yj);
  if (!is_vector) require(alpha.has_value(), "projecting a functional needs --alpha");
  const LpVector y = is_vector ? io::lp_vector_from_json(yj) : alpha_embed(io::functional_from_json(yj), *alpha);
  if (is_vector && alpha) {
    require(std::abs(order_from_alpha(*alpha) - y.order()) <= 1e-12 * y.order(),
            "alpha does not match the order of y");
  }
  std::optional<AlphaProjection> ap;
  if (!is_vector) ap = alpha_project(io::functional_from_json(yj), set, *alpha, opts);
  const ProjectionResult result = ap ? ap->result : project_Dp(y, set, opts);
  Json report = io::to_json(result);
  if (ap) {
    report["omega_m"] = io::to_json(ap->omega_m);
    if (std::isfinite(ap->prop_gap)) report["prop_gap"] = ap->prop_gap;
  }
  if (result.converged && certificate_samples > 0) {
    OptimalityResiduals cert = optimality_residuals(result.x_m, y, set, certificate_samples, opts.seed);
    report["certificates"] = {{"normal_cone", cert.normal_cone}, {"three_point", cert.three_point},
                              {"samples", certificate_samples}};
  }
  detail::emit(g, out, detail::render(report, g.format));
  return result.converged ? kPass : kSolverError;
}

inline int cmd_embed(const GlobalOptions& g, const std::string& path, double alpha, bool inverse,
                     std::ostream& out) {
  Json j = io::read_file(path);
  Json report = inverse ? io::to_json(alpha_unembed(io::lp_vector_from_json(j), alpha))
                        : io::to_json(alpha_embed(io::functional_from_json(j), alpha));
  detail::emit(g, out, detail::render(report, g.format));
  return kPass;
}

inline int cmd_spectrum(const GlobalOptions& g, const std::string& phi_path, const std::string& psi_path,
                        const std::string& fn, std::ostream& out) {
  NormalFunctional phi = io::functional_from_json(io::read_file(phi_path));
  NormalFunctional psi = io::functional_from_json(io::read_file(psi_path));
  ModularSpectrum s = modular_spectrum(phi, psi);
  Json report = io::to_json(s);
  if (!fn.empty()) {
    report["g"] = fn;
    report["quasi_entropy"] = quasi_entropy(named_function(fn), s);
  }
  detail::emit(g, out, detail::render(report, g.format));
  return kPass;
}

inline int cmd_verify(const GlobalOptions& g, const std::string& config_path, std::ostream& out) {
  verify::SuiteConfig cfg;
  if (!config_path.empty()) cfg = verify::config_from_json(io::read_file(config_path));
  if (g.seed) cfg.seed = *g.seed;
  if (g.tol) cfg.global_tolerance = *g.tol;
  if (!g.out.empty()) cfg.output = g.out;
  if (g.format != "json") cfg.format = g.format;
  cfg.validate();
  verify::SuiteReport report = verify::run_suite(cfg);
  GlobalOptions sink = g;
  sink.out = cfg.output;
  detail::emit(sink, out, verify::render(report, cfg.format, detail::utc_timestamp()));
  return report.all_pass() ? kPass : kCheckFailed;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divergences, projections and property checks on finite-dimensional von Neumann algebras",
               "ncig"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  GlobalOptions g;
  std::uint64_t seed = 0;
  double tol = 0.0;
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  auto* tol_opt = app.add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "write the report to this file");
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "csv"}));

  std::string a_path, b_path, fn, config_path;
  double alpha = 0.0;
  bool oracle = false, inverse = false, random_start = false;
  int max_iter = 10000, cert_samples = 200;
  std::optional<double> project_alpha;

  auto* div = app.add_subcommand("divergence", "S_alpha between two functionals");
  div->add_option("phi", a_path)->required();
  div->add_option("psi", b_path)->required();
  div->add_option("--alpha", alpha)->required();
  div->add_flag("--oracle", oracle, "cross-check against the spectral quasi-entropy");

  auto* proj = app.add_subcommand("project", "D_p projection onto a convex set");
  proj->add_option("y", a_path)->required();
  proj->add_option("set", b_path)->required();
  proj->add_option("--alpha", project_alpha);
  proj->add_option("--max-iter", max_iter)->check(CLI::NonNegativeNumber);
  proj->add_option("--certificate-samples", cert_samples)->check(CLI::NonNegativeNumber);
  proj->add_flag("--random-start", random_start);

  auto* emb = app.add_subcommand("embed", "alpha-embedding of a functional into L_p");
  emb->add_option("functional", a_path)->required();
  emb->add_option("--alpha", alpha)->required();
  emb->add_flag("--inverse", inverse, "map an L_p vector back to its functional");

  auto* spec = app.add_subcommand("spectrum", "relative modular spectrum");
  spec->add_option("phi", a_path)->required();
  spec->add_option("psi", b_path)->required();
  spec->add_option("--g", fn, "identity | one | t_log_t | g_p:alpha=<v>");

  auto* ver = app.add_subcommand("verify", "run the property suites");
  ver->add_option("--config", config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kParseError;
  }
  if (*seed_opt) g.seed = seed;
  if (*tol_opt) g.tol = tol;

  try {
    if (*div) return cmd_divergence(g, a_path, b_path, alpha, oracle, out);
    if (*proj) {
      return cmd_project(g, a_path, b_path, project_alpha, max_iter, cert_samples, random_start, out);
    }
    if (*emb) return cmd_embed(g, a_path, alpha, inverse, out);
    if (*spec) return cmd_spectrum(g, a_path, b_path, fn, out);
    return cmd_verify(g, config_path, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace ncig::cli
