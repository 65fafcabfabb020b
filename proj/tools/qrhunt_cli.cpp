// qrhunt: command-line driver for the short-character-sum toolkit.
//
// Subcommands: kronecker, sum, weight, rvalues, psi, rho, lemma6, hunt,
// ratio, grid. Exit status: 0 success, 1 argument or domain error, 2 failed
// check or empty result (e.g. a hunt that found no witness).

#include <fstream>
#include <iostream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qrhunt/qrhunt.hpp"

namespace {

using namespace qrhunt;

constexpr int kExitOk = 0;
constexpr int kExitArgError = 1;
constexpr int kExitCheckFailed = 2;

struct GlobalOpts {
  std::string format = "text";
  std::optional<int> threads;
  std::string config_path;
  std::string out_path;
  u64 seed = 0;  // reserved for future randomized experiments

  Config config;
  ExecPolicy policy;

  void resolve() {
    if (!config_path.empty()) config = load_config(config_path);
    policy.threads = resolve_threads(threads, config);
    policy.segment_size = config.segment_size;
  }
};

void emit(const std::string& payload, const GlobalOpts& g) {
  if (!g.out_path.empty()) {
    std::ofstream f(g.out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file " + g.out_path);
    f << payload;
  } else {
    std::cout << payload;
  }
}

void emit_report(const ExperimentReport& rep, const GlobalOpts& g) {
  emit(serialize(rep, g.format), g);
}

void emit_line(const std::string& line, const GlobalOpts& g) { emit(line + "\n", g); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"short character sums toolkit: Kronecker symbols, smooth-residue "
               "weights, pair-count tables, Dickman rho, and witness hunts"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  GlobalOpts g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (QRHUNT_THREADS as fallback)");
  app.add_option("--config", g.config_path, "key=value config file");
  app.add_option("--out", g.out_path, "Write output to a file instead of stdout");
  app.add_option("--seed", g.seed, "Reserved");

  int exit_code = kExitOk;
  std::vector<std::pair<const CLI::App*, std::function<void()>>> handlers;
  auto on = [&handlers](CLI::App* sub, std::function<void()> fn) {
    handlers.emplace_back(sub, std::move(fn));
  };

  // kronecker --a A --n N
  i64 kr_a = 0, kr_n = 0;
  auto* sc_kron = app.add_subcommand("kronecker", "Kronecker-Jacobi symbol (a|n)");
  sc_kron->add_option("--a", kr_a)->required();
  sc_kron->add_option("--n", kr_n)->required();
  on(sc_kron, [&] { emit_line(std::to_string(kronecker(kr_a, kr_n)), g); });

  // sum --p P --n N [--prefix-max]
  i64 sum_p = 0, sum_n = 0;
  bool sum_prefix = false;
  auto* sc_sum = app.add_subcommand("sum", "Short character sum S(p, N)");
  sc_sum->add_option("--p", sum_p)->required();
  sc_sum->add_option("--n", sum_n)->required();
  sc_sum->add_flag("--prefix-max", sum_prefix, "Also report argmax/max of prefix sums");
  on(sc_sum, [&] {
    if (sum_prefix) {
      const auto pm = prefix_max(sum_p, sum_n);
      emit_line(std::to_string(short_sum(sum_p, sum_n)) + " argmax=" +
                    std::to_string(pm.argmax) + " max=" + std::to_string(pm.max),
                g);
    } else {
      emit_line(std::to_string(short_sum(sum_p, sum_n)), g);
    }
  });

  // weight --p P --m M [--expanded]
  i64 w_p = 0, w_m = 0;
  bool w_expanded = false;
  auto* sc_weight = app.add_subcommand("weight", "Smooth-residue weight w_p(M)");
  sc_weight->add_option("--p", w_p)->required();
  sc_weight->add_option("--m", w_m)->required();
  sc_weight->add_flag("--expanded", w_expanded, "Use the divisor-expansion path");
  on(sc_weight, [&] {
    emit_line(std::to_string(w_expanded ? weight_expanded(w_p, w_m) : weight(w_p, w_m)), g);
  });

  // rvalues --n N --m M [--c C]
  i64 rv_n = 0, rv_m = 0;
  std::optional<i64> rv_c;
  auto* sc_rvalues = app.add_subcommand("rvalues", "Pair-count table r(b; N, M)");
  sc_rvalues->add_option("--n", rv_n)->required();
  sc_rvalues->add_option("--m", rv_m)->required();
  sc_rvalues->add_option("--c", rv_c, "Report the single count r(c) instead of the table");
  on(sc_rvalues, [&] {
    if (rv_c) {
      emit_line(std::to_string(r_direct(*rv_c, rv_n, rv_m)), g);
    } else {
      emit_report(make_rtable_report(build_rtable(rv_n, rv_m, g.policy), now_iso8601()), g);
    }
  });

  // psi --n N --m M [--a A]
  i64 psi_n = 0, psi_m = 0;
  std::optional<double> psi_a;
  auto* sc_psi = app.add_subcommand("psi", "Smooth count Psi(N, M)");
  sc_psi->add_option("--n", psi_n)->required();
  sc_psi->add_option("--m", psi_m)->required();
  sc_psi->add_option("--a", psi_a, "Also compare against the Dickman density (A >= 1)");
  on(sc_psi, [&] {
    if (!psi_a) {
      emit_line(std::to_string(psi_smooth(psi_n, psi_m)), g);
      return;
    }
    const DickmanRho rho(g.config.rho_step);
    const auto rep = smooth_density_report(*psi_a, psi_n, psi_m, rho);
    std::ostringstream out;
    if (g.format == "json") {
      ordered_json j = {{"psi", rep.psi},
                        {"u", round15(rep.u)},
                        {"rho_prediction", round15(rep.rho_prediction)},
                        {"ratio", round15(rep.ratio)},
                        {"exp_bound", rep.exp_bound ? ordered_json(round15(*rep.exp_bound))
                                                    : ordered_json(nullptr)}};
      out << j.dump(2) << '\n';
    } else if (g.format == "csv") {
      out << "psi,u,rho_prediction,ratio,exp_bound\n"
          << rep.psi << ',' << format_real(rep.u) << ',' << format_real(rep.rho_prediction)
          << ',' << format_real(rep.ratio) << ','
          << (rep.exp_bound ? format_real(*rep.exp_bound) : "") << '\n';
    } else {
      out << "psi: " << rep.psi << "\nu: " << format_real(rep.u)
          << "\nrho_prediction: " << format_real(rep.rho_prediction)
          << "\nratio: " << format_real(rep.ratio) << '\n';
      if (rep.exp_bound) out << "exp_bound: " << format_real(*rep.exp_bound) << '\n';
    }
    emit(out.str(), g);
  });

  // rho --u U [--step H]
  double rho_u = 0.0;
  std::optional<double> rho_step;
  auto* sc_rho = app.add_subcommand("rho", "Dickman rho(u)");
  sc_rho->add_option("--u", rho_u)->required();
  sc_rho->add_option("--step", rho_step, "Integration step (default from config, 1e-4)");
  on(sc_rho, [&] {
    emit_line(format_real(dickman_rho(rho_u, rho_step.value_or(g.config.rho_step))), g);
  });

  // lemma6 [--sweep] [--remark] [--x X --beta B]
  bool l6_sweep = false, l6_remark = false;
  std::optional<double> l6_x, l6_beta;
  auto* sc_lemma6 = app.add_subcommand(
      "lemma6", "Explicit window inequality: point evaluation or full sweep");
  sc_lemma6->add_flag("--sweep", l6_sweep, "Evaluate the 200x50 grid");
  sc_lemma6->add_flag("--remark", l6_remark, "Use the wider-range variant");
  sc_lemma6->add_option("--x", l6_x);
  sc_lemma6->add_option("--beta", l6_beta);
  on(sc_lemma6, [&] {
    std::vector<SweepRow> rows;
    if (l6_sweep) {
      rows = l6_remark ? remark_sweep() : lemma6_sweep();
    } else {
      if (!l6_x || !l6_beta)
        throw std::invalid_argument("lemma6: need --sweep or both --x and --beta");
      const Lemma6Input in{*l6_x, *l6_beta};
      const auto sides = l6_remark ? remark_sides(in) : lemma6_sides(in);
      rows.push_back({in.x, in.beta, sides.lhs, sides.rhs, sides.lhs - sides.rhs});
    }
    emit_report(make_sweep_report(rows, l6_remark ? "remark" : "main", now_iso8601()), g);
    for (const auto& row : rows)
      if (!(row.lhs >= row.rhs)) exit_code = kExitCheckFailed;
  });

  // hunt --x X --m M --n N [--limit L]
  i64 h_x = 0, h_m = 0, h_n = 0;
  std::size_t h_limit = 10;
  auto* sc_hunt = app.add_subcommand("hunt", "Find primes in (x, 2x] with provably large S(p, N)");
  sc_hunt->add_option("--x", h_x)->required();
  sc_hunt->add_option("--m", h_m)->required();
  sc_hunt->add_option("--n", h_n)->required();
  sc_hunt->add_option("--limit", h_limit, "Stop after this many witnesses")->capture_default_str();
  on(sc_hunt, [&] {
    const auto result = hunt(h_x, h_m, h_n, h_limit, g.policy);
    emit_report(make_hunt_report(result, now_iso8601()), g);
    if (result.witnesses.empty()) exit_code = kExitCheckFailed;
  });

  // ratio --x X --m M --n N
  i64 r_x = 0, r_m = 0, r_n = 0;
  auto* sc_ratio = app.add_subcommand("ratio", "Weighted sums S0, S1 and their ratio");
  sc_ratio->add_option("--x", r_x)->required();
  sc_ratio->add_option("--m", r_m)->required();
  sc_ratio->add_option("--n", r_n)->required();
  on(sc_ratio, [&] {
    const auto result = ratio_experiment(r_x, r_m, r_n, g.policy);
    emit_report(make_ratio_report(result, now_iso8601()), g);
    if (!result.ratio) exit_code = kExitCheckFailed;  // empty support
  });

  // grid --p P --z Z
  i64 g_p = 0, g_z = 0;
  auto* sc_grid = app.add_subcommand("grid", "Quadratic-residue density over a z-by-z grid");
  sc_grid->add_option("--p", g_p)->required();
  sc_grid->add_option("--z", g_z)->required();
  on(sc_grid, [&] { emit_report(make_grid_report(grid_experiment(g_p, g_z), now_iso8601()), g); });

  try {
    app.parse(argc, argv);
    g.resolve();
    for (const auto& [sub, fn] : handlers)
      if (sub->parsed()) fn();
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitArgError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgError;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgError;
  } catch (const std::logic_error& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgError;
  }
  return exit_code;
}
