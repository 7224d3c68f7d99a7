// bubblekit command line front end. Talks to the core exclusively through the
// C API in bubblekit.h; all numeric output is CSV with a header row, printed
// with 17 significant digits so values round-trip exactly.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "bubblekit.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitVerify = 3;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CLI::ValidationError("cannot write file: " + out_path);
  out << text;
}

int config_error(const std::string& context) {
  std::cerr << "config error" << (context.empty() ? "" : " in " + context) << ": "
            << bk_last_error() << "\n";
  return kExitConfig;
}

const char* type_name(int type) {
  switch (type) {
    case 0: return "interior";
    case 1: return "boundary_simple";
    case 2: return "cluster";
    default: return "unknown";
  }
}

int run_constants(int n, double tol, const std::string& out_path) {
  double values[9], errors[9];
  if (bk_constants_compute(n, tol, values, errors) != BK_OK)
    return config_error("");
  static const char* names[9] = {"c0", "c2", "c3", "c4", "c5",
                                 "c6", "kappa1", "kappa2", "kappa3"};
  std::ostringstream csv;
  csv << "name,value,error_estimate\n";
  for (int i = 0; i < 9; ++i)
    csv << names[i] << ',' << fmt(values[i]) << ',' << fmt(errors[i]) << '\n';
  emit(csv.str(), out_path);
  return 0;
}

int run_vortex(int n, int m, const std::string& q_path, int starts,
               unsigned long long seed, const std::string& out_path) {
  std::string q_text;
  try {
    q_text = read_file(q_path);
  } catch (const CLI::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  const int d = n - 1;
  std::vector<double> q;
  {
    const nlohmann::json j = nlohmann::json::parse(q_text, nullptr, false);
    const bool shape_ok = !j.is_discarded() && j.is_array() && int(j.size()) == d;
    bool numbers_ok = shape_ok;
    if (shape_ok)
      for (const auto& row : j) {
        if (!row.is_array() || int(row.size()) != d) {
          numbers_ok = false;
          break;
        }
        for (const auto& v : row) {
          if (!v.is_number()) {
            numbers_ok = false;
            break;
          }
          q.push_back(v.get<double>());
        }
      }
    if (!numbers_ok) {
      std::cerr << "config error in " << q_path << ": need a " << d << "x" << d
                << " JSON array of arrays of numbers\n";
      return kExitConfig;
    }
  }
  bk_vortex_result* res = nullptr;
  if (bk_vortex_solve(n, m, q.data(), starts, seed, &res) != BK_OK)
    return config_error(q_path);
  std::ostringstream csv;
  csv << "energy,virial_residual,morse_index";
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < d; ++k) csv << ",xi_" << i << '_' << k;
  csv << '\n';
  std::vector<double> xi(size_t(m * d));
  for (int idx = 0; idx < bk_vortex_count(res); ++idx) {
    double energy, virial;
    int morse;
    bk_vortex_get(res, idx, &energy, &virial, &morse, xi.data());
    csv << fmt(energy) << ',' << fmt(virial) << ',' << morse;
    for (double v : xi) csv << ',' << fmt(v);
    csv << '\n';
  }
  bk_vortex_free(res);
  emit(csv.str(), out_path);
  return 0;
}

int run_predict(const std::string& config_path, double eps,
                const std::string& out_path) {
  std::string text;
  try {
    text = read_file(config_path);
  } catch (const CLI::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  bk_scenario* scen = nullptr;
  if (bk_scenario_parse(text.c_str(), &scen) != BK_OK)
    return config_error(config_path);
  bk_prediction* pred = nullptr;
  if (bk_predict(scen, eps, &pred) != BK_OK) {
    bk_scenario_free(scen);
    return config_error(config_path);
  }
  const int dim = bk_scenario_dim(scen);
  std::ostringstream csv;
  csv << "index,type";
  for (int k = 0; k <= dim; ++k) csv << ",a_" << k;
  csv << ",lambda,alpha,mu,chart_correction\n";
  std::vector<double> a(size_t(dim + 1));
  for (int i = 0; i < bk_prediction_count(pred); ++i) {
    int type;
    double lambda, alpha, mu, chart;
    bk_prediction_get(pred, i, &type, a.data(), &lambda, &alpha, &mu, &chart);
    csv << i << ',' << type_name(type);
    for (double v : a) csv << ',' << fmt(v);
    csv << ',' << fmt(lambda) << ',' << fmt(alpha) << ',' << fmt(mu) << ','
        << fmt(chart) << '\n';
  }
  bk_prediction_free(pred);
  bk_scenario_free(scen);
  emit(csv.str(), out_path);
  return 0;
}

int run_sweep(const std::string& config_path, const std::string& eps_list,
              const std::string& out_path) {
  std::vector<double> sweep;
  {
    std::istringstream in(eps_list);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        sweep.push_back(std::stod(item));
      } catch (const std::exception&) {
        std::cerr << "config error: bad --eps-list entry \"" << item << "\"\n";
        return kExitConfig;
      }
    }
  }
  if (sweep.empty()) {
    std::cerr << "config error: --eps-list is empty\n";
    return kExitConfig;
  }
  std::string text;
  try {
    text = read_file(config_path);
  } catch (const CLI::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  bk_scenario* scen = nullptr;
  if (bk_scenario_parse(text.c_str(), &scen) != BK_OK)
    return config_error(config_path);
  std::ostringstream csv;
  csv << "eps,index,type,lambda,leading,residual_E,residual_F,ratio_E,ratio_F,"
         "defining_ratio,theoretical_remainder,pairing,pairing_scale\n";
  for (double eps : sweep) {
    bk_report* rep = nullptr;
    if (bk_residual_report(scen, eps, &rep) != BK_OK) {
      bk_scenario_free(scen);
      return config_error(config_path);
    }
    for (int i = 0; i < bk_report_count(rep); ++i) {
      int index, type;
      double lambda, leading, rE, rF, qE, qF, def, rem, pair, pscale;
      bk_report_get(rep, i, &index, &type, &lambda, &leading, &rE, &rF, &qE, &qF,
                    &def, &rem, &pair, &pscale);
      csv << fmt(eps) << ',' << index << ',' << type_name(type) << ',' << fmt(lambda)
          << ',' << fmt(leading) << ',' << fmt(rE) << ',' << fmt(rF) << ','
          << fmt(qE) << ',' << fmt(qF) << ',' << fmt(def) << ',' << fmt(rem) << ','
          << fmt(pair) << ',' << fmt(pscale) << '\n';
    }
    bk_report_free(rep);
  }
  bk_scenario_free(scen);
  emit(csv.str(), out_path);
  return 0;
}

int run_verify(unsigned long long seed, const std::string& out_path) {
  bk_verify_result* res = nullptr;
  if (bk_verify_run(seed, &res) != BK_OK) return config_error("");
  std::ostringstream csv;
  csv << "criterion,check,status,measured,bound\n";
  char name[256];
  for (int i = 0; i < bk_verify_count(res); ++i) {
    int criterion, pass;
    double measured, bound;
    bk_verify_get(res, i, &criterion, name, sizeof name, &pass, &measured, &bound);
    csv << criterion << ",\"" << name << "\"," << (pass ? "pass" : "FAIL") << ','
        << fmt(measured) << ',' << fmt(bound) << '\n';
  }
  const int failures = bk_verify_failures(res);
  bk_verify_free(res);
  emit(csv.str(), out_path);
  return failures == 0 ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bubblekit: half-sphere bubbling calculus toolkit"};
  app.require_subcommand(1);

  int n = 5, m = 2, starts = 200;
  unsigned long long seed = 0;
  double tol = 1e-10, eps = 1e-3;
  std::string q_path, config_path, eps_list, out_path;

  CLI::App* constants = app.add_subcommand("constants", "dimensional constants table");
  constants->add_option("--n", n, "sphere dimension (>= 5)")->required();
  constants->add_option("--tol", tol, "quadrature tolerance");
  constants->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* vortex = app.add_subcommand("vortex", "Kirchhoff-Routh critical points");
  vortex->add_option("--n", n, "sphere dimension (>= 5)")->required();
  vortex->add_option("--m", m, "number of vortex points")->required();
  vortex->add_option("--Q", q_path, "path to (n-1)x(n-1) JSON matrix")->required();
  vortex->add_option("--starts", starts, "multistart count");
  vortex->add_option("--seed", seed, "PRNG seed (default 0)");
  vortex->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* predict = app.add_subcommand("predict", "blow-up parameters at one eps");
  predict->add_option("--config", config_path, "scenario JSON")->required();
  predict->add_option("--eps", eps, "subcritical exponent offset")->required();
  predict->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* sweep = app.add_subcommand("sweep", "balancing residuals over an eps list");
  sweep->add_option("--config", config_path, "scenario JSON")->required();
  sweep->add_option("--eps-list", eps_list, "comma-separated eps values")->required();
  sweep->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the full property suite");
  verify->add_option("--seed", seed, "PRNG seed (default 0)");
  verify->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (constants->parsed()) return run_constants(n, tol, out_path);
    if (vortex->parsed()) return run_vortex(n, m, q_path, starts, seed, out_path);
    if (predict->parsed()) return run_predict(config_path, eps, out_path);
    if (sweep->parsed()) return run_sweep(config_path, eps_list, out_path);
    if (verify->parsed()) return run_verify(seed, out_path);
  } catch (const CLI::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
