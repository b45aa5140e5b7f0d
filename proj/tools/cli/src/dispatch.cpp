#include "parity_sieve_cli/dispatch.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "parity_sieve/approximation.hpp"
#include "parity_sieve/error.hpp"
#include "parity_sieve/euler_constants.hpp"
#include "parity_sieve/parallel.hpp"
#include "parity_sieve/version.hpp"

namespace parity_sieve::cli {
namespace {

using Complex = std::complex<double>;

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json complex_json(Complex z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

Json product_json(const EulerProduct& p, bool real_valued) {
  Json j;
  if (real_valued) {
    j["value"] = number(p.value.real());
    j["corrected"] = number(p.corrected.real());
    j["tail_estimate"] = number(p.tail_estimate.real());
  } else {
    j["value"] = complex_json(p.value);
    j["corrected"] = complex_json(p.corrected);
    j["tail_estimate"] = complex_json(p.tail_estimate);
  }
  j["tail_bound"] = number(p.tail_bound);
  j["cutoff"] = p.cutoff;
  j["factors"] = p.factor_count;
  return j;
}

Json params_json(const RunConfig& c) {
  Json p;
  auto put = [&p](const char* key, const auto& opt) {
    if (opt) p[key] = *opt;
  };
  put("x", c.x);
  put("y", c.y);
  put("k", c.k);
  put("z", c.z);
  put("j", c.j);
  put("ell", c.ell);
  put("N", c.N);
  put("h", c.h);
  switch (c.command) {
    case Command::kWk:
    case Command::kApprox:
      p["alpha_max"] = c.alpha_max;
      p["step"] = c.step;
      p["epsilon"] = c.epsilon;
      [[fallthrough]];
    case Command::kConstants:
      p["cutoff"] = c.cutoff;
      break;
    case Command::kVerify:
      p["suite"] = c.suite;
      p["trials"] = c.trials;
      p["seed"] = c.seed;
      break;
    default:
      break;
  }
  p["format"] = c.format == Format::kCsv ? "csv" : "json";
  return p;
}

Json derived_json(const RunConfig& c) {
  Json d;
  if (c.x && c.y && *c.x >= 2) {
    const auto s = scale_parameters(*c.x, *c.y);
    d["alpha"] = s.alpha;
    d["beta"] = s.beta;
    d["beta_ell"] = s.beta_ell;
  } else {
    d["alpha"] = nullptr;
    d["beta"] = nullptr;
    d["beta_ell"] = nullptr;
  }
  return d;
}

std::optional<Calibration> try_calibration(const RunConfig& c) {
  const std::string path = c.calibration.value_or(default_calibration_path());
  try {
    return load_calibration(path);
  } catch (const Error&) {
    if (c.calibration || c.command == Command::kVerify) throw;
    return std::nullopt;
  }
}

Json provenance_json(const RunConfig& c, const std::optional<Calibration>& cal) {
  Json p;
  p["version"] = kVersion;
  if (c.k) p["case"] = case_label(case_of(*c.k));
  else p["case"] = nullptr;
  p["derived"] = derived_json(c);
  if (cal) {
    p["calibration_file"] = cal->path;
    p["calibration_hash"] = cal->hash;
  } else {
    p["calibration_file"] = nullptr;
    p["calibration_hash"] = nullptr;
  }
  return p;
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  void write(std::ostream& os) const {
    auto line = [&os](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kBounds, "cannot write '" + path + "'");
  f << text;
  if (!f) fail(ErrorCode::kResource, "write to '" + path + "' failed");
}

double constant_for(unsigned k, std::uint64_t cutoff) {
  return case_of(k) == SumCase::kCase1 ? b_constant(k, cutoff).corrected_real()
                                       : c_constant(k, cutoff).corrected_real();
}

SieveBound bound_of(const RunConfig& c) {
  return c.y ? SieveBound::below(*c.y) : SieveBound::unbounded();
}

// ---------------------------------------------------------------- commands

void cmd_sum(const RunConfig& c, Json& results, Json& residuals) {
  const SieveBound bound = bound_of(c);
  if (c.k) {
    results["value"] = integer_power_sum(*c.x, bound, -static_cast<std::int64_t>(*c.k)).to_string();
    if (c.h) {
      const std::uint64_t Y = power_threshold(*c.y, *c.h);
      results["Y"] = Y;
      residuals["buchstab"] = buchstab_residual(*c.x, *c.y, *c.h, *c.k).to_string();
    }
    return;
  }
  const auto zt = parse_complex(*c.z);
  const bool integer_z = zt.im == 0 && zt.re == std::floor(zt.re);
  if (integer_z) {
    const auto z = static_cast<std::int64_t>(zt.re);
    results["value"] = integer_power_sum(*c.x, bound, z).to_string();
    if (c.h) {
      const std::uint64_t Y = power_threshold(*c.y, *c.h);
      results["Y"] = Y;
      residuals["buchstab"] = buchstab_residual_exact(*c.x, *c.y, Y, z).to_string();
    }
    return;
  }
  const Complex z(zt.re, zt.im);
  results["value"] = complex_json(complex_power_sum(*c.x, bound, z));
  if (c.h) {
    const std::uint64_t Y = power_threshold(*c.y, *c.h);
    results["Y"] = Y;
    residuals["buchstab_relative"] = buchstab_residual_complex(*c.x, *c.y, Y, z).relative();
  }
}

void cmd_histogram(const RunConfig& c, Json& results, std::optional<Table>& table) {
  const auto h = nu_histogram(*c.x, bound_of(c));
  std::size_t top = 0;
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    if (h.counts[i]) top = i;
  std::vector<std::uint64_t> counts(h.counts.begin(), h.counts.begin() + top + 1);
  results["counts"] = counts;
  results["total"] = h.total();
  table.emplace(std::vector<std::string>{"nu", "count"});
  for (std::size_t i = 0; i < counts.size(); ++i) table->row({std::to_string(i), std::to_string(counts[i])});
}

void cmd_constants(const RunConfig& c, Json& results) {
  if (c.k) {
    const unsigned k = *c.k;
    if (case_of(k) == SumCase::kCase1) results["b_k"] = product_json(b_constant(k, c.cutoff), true);
    else results["c_k"] = product_json(c_constant(k, c.cutoff), true);
    results["ell"] = product_json(limit_constant(k, c.cutoff), true);
    results["G_k(2)"] = product_json(G_eval(Complex(2, 0), k, c.cutoff), true);
  }
  if (c.z) {
    const auto zt = parse_complex(*c.z);
    results["f(1,z)"] = product_json(selberg_factor(Complex(zt.re, zt.im), c.cutoff), zt.im == 0);
  }
}

void cmd_dirichlet(const RunConfig& c, Json& results, std::optional<Table>& table) {
  const auto sums = dirichlet_log_sums(*c.N, *c.k, *c.j);
  Json arr = Json::array();
  table.emplace(std::vector<std::string>{"j", "value"});
  for (unsigned j = 0; j < sums.size(); ++j) {
    arr.push_back({{"j", j}, {"value", number(sums[j])}});
    table->row({std::to_string(j), format_double(sums[j])});
  }
  results["sums"] = arr;
}

void cmd_wk(const RunConfig& c, Json& results, Json& residuals, std::optional<Table>& table) {
  const unsigned k = *c.k;
  const auto sol = solve_wk(k, c.alpha_max, parse_step(c.step));
  const SumCase sc = case_of(k);
  const double constant = constant_for(k, c.cutoff);
  const MFunction m(sol, sc, constant);
  results["order"] = m.order();
  results["constant"] = constant;
  results["nodes_per_unit"] = sol.nodes_per_unit();
  results["alpha_max"] = sol.alpha_max();
  if (sol.alpha_max() >= k + 6) {
    const auto est = limit_estimate(m);
    results["limit"] = {{"mean", est.mean},
                        {"oscillation", est.oscillation},
                        {"oscillations", est.oscillations},
                        {"noise_floor", est.noise_floor},
                        {"halves_from_5", est.halves_from(5)},
                        {"ell", limit_constant(k, c.cutoff).corrected_real()}};
  }
  double worst = 0;
  for (unsigned u = 2; u + 0.5 + 4 * sol.step() < sol.alpha_max(); ++u)
    worst = std::max(worst, dde_residual(sol, sc, u + 0.5));
  residuals["dde_max_at_half_integers"] = worst;

  table.emplace(std::vector<std::string>{"alpha", "side", "w", "m"});
  const unsigned M = sol.nodes_per_unit();
  for (unsigned u = 1; u <= sol.units(); ++u) {
    for (unsigned o = 0; o <= M; ++o) {
      const char* side = o == 0 ? "right" : (o == M ? "left" : "");
      table->row({format_double(sol.node_alpha(u, o)), side, format_double(sol.node(0, u, o)),
                  format_double(m.scale() * sol.node(m.order(), u, o))});
    }
  }
}

void cmd_fj(const RunConfig& c, Json& results, std::optional<Table>& table) {
  const double beta = static_cast<double>(*c.x) / static_cast<double>(c.y.value_or(1));
  const auto top = static_cast<std::uint64_t>(std::floor(beta));
  const auto series = prefix_series(std::max<std::uint64_t>(top, 1), *c.k);
  const unsigned j_max = c.j.value_or(*c.k + 2);
  const auto f = f_sequence(series, beta, j_max);
  results["beta"] = beta;
  Json arr = Json::array();
  table.emplace(std::vector<std::string>{"j", "f_j", "error"});
  for (unsigned j = 1; j <= j_max; ++j) {
    arr.push_back({{"j", j}, {"value", number(f.f(j))}, {"error", number(f.errors[j - 1])}});
    table->row({std::to_string(j), format_double(f.f(j)), format_double(f.errors[j - 1])});
  }
  results["f"] = arr;
  if (c.ell) {
    const unsigned j = c.j.value_or(1);
    results["F"] = {{"j", j}, {"ell", *c.ell}, {"value", number(F_integral(series, beta, j, *c.ell))}};
  }
}

void cmd_approx(const RunConfig& c, const std::optional<Calibration>& cal, Json& results, Json& residuals,
                Json& verdicts) {
  const unsigned k = *c.k;
  const std::uint64_t x = *c.x;
  const std::uint64_t y = *c.y;
  const auto scale = scale_parameters(x, y);
  const double constant = constant_for(k, c.cutoff);
  const auto top = std::max<std::uint64_t>(2, x / y + 1);
  const auto series = prefix_series(top, k);
  const double reach = std::min(kMaxAlpha, std::max(2.0, std::ceil(scale.alpha) + 1));
  const auto sol = solve_wk(k, reach, parse_step(c.step));

  Tolerances tol;
  const std::string suffix = ".k" + std::to_string(k);
  if (cal) {
    tol.expansion_c = cal->get("expansion_c" + suffix, cal->get("expansion_c", tol.expansion_c));
    tol.approx_c = cal->get("approx_c" + suffix, cal->get("approx_c", tol.approx_c));
  }
  const auto rep = build_report(series, sol, x, y, constant, tol);
  results["exact"] = rep.exact.to_string();
  results["constant"] = constant;
  if (rep.approx) {
    results["continuous_approx"] = {{"value", rep.approx->value},
                                    {"aggregation_error", rep.approx->aggregation_error},
                                    {"panels", rep.approx->panels}};
  } else {
    results["continuous_approx"] = nullptr;
  }
  if (rep.expansion) {
    Json terms = Json::array();
    for (const auto& t : rep.expansion->terms) terms.push_back({{"term", t.label}, {"value", t.value}});
    results["expansion"] = {{"terms", terms}, {"total", rep.expansion->total}};
    residuals["exact_minus_expansion"] = rep.exact.to_double() - rep.expansion->total;
    residuals["approx_minus_expansion"] = rep.approx->value - rep.expansion->total;
  } else {
    results["expansion"] = nullptr;
  }
  double leading = 0;
  try {
    leading = leading_term(MFunction(sol, rep.sum_case, constant), x, y, c.epsilon);
    results["leading"] = leading;
    results["exact_over_leading"] = rep.exact.to_double() / leading;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kProximity && e.code() != ErrorCode::kRange) throw;
    results["leading"] = nullptr;
  }
  for (const auto& v : rep.verdicts)
    verdicts.push_back({{"name", v.name}, {"value", v.value}, {"limit", v.limit}, {"pass", v.pass}});
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

int dispatch(const RunConfig& c, std::ostream& out, Json& report) {
  if (c.threads) set_thread_count(*c.threads);
  const auto cal = try_calibration(c);

  report = Json::object();
  report["command"] = command_name(c.command);
  report["params"] = params_json(c);
  Json results = Json::object();
  Json residuals = Json::object();
  Json verdicts = Json::array();
  std::optional<Table> table;
  int status = kExitOk;

  switch (c.command) {
    case Command::kSum: cmd_sum(c, results, residuals); break;
    case Command::kHistogram: cmd_histogram(c, results, table); break;
    case Command::kConstants: cmd_constants(c, results); break;
    case Command::kDirichlet: cmd_dirichlet(c, results, table); break;
    case Command::kWk: cmd_wk(c, results, residuals, table); break;
    case Command::kFj: cmd_fj(c, results, table); break;
    case Command::kApprox: cmd_approx(c, cal, results, residuals, verdicts); break;
    case Command::kVerify: {
      const std::vector<std::string> all = {"oracle", "buchstab", "constants", "selberg", "small-y", "expansion"};
      const std::vector<std::string> names = c.suite == "all" ? all : std::vector<std::string>{c.suite};
      for (const auto& name : names) {
        auto r = run_suite(name, c, *cal);
        results[name] = r.json;
        verdicts.push_back({{"name", name}, {"pass", r.pass}});
        if (!r.pass) status = kExitVerificationFailed;
      }
      break;
    }
  }

  report["results"] = results;
  report["residuals"] = residuals;
  report["verdicts"] = verdicts;
  report["provenance"] = provenance_json(c, cal);

  if (c.emit_csv && table) {
    std::ostringstream os;
    table->write(os);
    write_file(*c.emit_csv, os.str());
  }
  std::string text;
  if (c.format == Format::kCsv) {
    std::ostringstream os;
    table->write(os);
    text = os.str();
  } else {
    text = report.dump(2) + "\n";
  }
  if (c.output) write_file(*c.output, text);
  else out << text;
  return status;
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto parsed = parse_command_line(args);
  if (!parsed.config) {
    (parsed.exit_code == kExitOk ? out : err) << parsed.message << '\n';
    return parsed.exit_code;
  }
  try {
    validate(*parsed.config);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    Json report;
    return dispatch(*parsed.config, out, report);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace parity_sieve::cli
