// Runs the acceptance checks and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lcnet/constructive.hpp"
#include "lcnet/experiment.hpp"
#include "lcnet/operators.hpp"
#include "lcnet/presets.hpp"
#include "oracles.hpp"

using namespace lcnet;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

ExperimentConfig preset(const std::string& name) {
  return config_from_json(preset_config(name));
}

// Preset sweep shared by several criteria.
struct Sweep {
  std::vector<std::string> names;
  std::vector<ExperimentReport> reports;
  double seconds = 0.0;

  const ExperimentReport& get(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return reports[i];
    }
    throw std::out_of_range(name);
  }
};

Sweep run_sweep() {
  Sweep s;
  const auto t0 = Clock::now();
  for (const auto& p : presets()) {
    s.names.push_back(p.name);
    s.reports.push_back(run_experiment(preset(p.name)));
  }
  s.seconds = seconds_since(t0);
  return s;
}

Outcome criterion1() {
  Outcome out;
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (const char* name : {"integral_gaussian", "poisson", "superposition_sin", "sin_of_trace"}) {
    const auto cfg = preset(name);
    const auto ensemble = sample_ensemble(cfg.ensemble, derive_seed(cfg.seed, 1));
    if (ensemble.size() < 50) out.fail(std::string(name) + ": fewer than 50 samples");
    std::vector<TargetElement> values;
    for (const auto& s : ensemble.samples) values.push_back(cfg.op(s));
    const auto rho = cfg.seminorms[cfg.target_seminorm].materialize(values[0].shape());
    for (double eps : {0.2, 0.1, 0.05}) {
      const auto net = build_epsilon_net(values, rho, eps);
      const auto pou = build_partition(values, net, rho);
      for (std::size_t i = 0; i < values.size(); ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < net.size(); ++j) {
          const double w = pou.weights(i, j);
          if (w < 0.0 || (w > 0.0 && pou.distances(i, j) >= eps)) {
            out.fail(std::string(name) + ": partition support violated");
          }
          total += w;
        }
        if (std::abs(total - 1.0) > 1e-12) out.fail(std::string(name) + ": weights do not sum to 1");
        const double err = rho(values[i] - finite_rank_apply(pou, net, i));
        if (!(err < eps + 1e-9 * eps)) {
          out.fail(std::string(name) + " eps " + num(eps) + ": error " + num(err));
        }
        ++checked;
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 10.0) out.fail("took " + num(secs) + " s");
  if (out.pass) out.detail = std::to_string(checked) + " sample checks in " + num(secs) + " s";
  return out;
}

Outcome criterion2(const Sweep& sweep) {
  Outcome out;
  std::size_t converged = 0, total = 0;
  for (std::size_t p = 0; p < sweep.names.size(); ++p) {
    const auto& r = sweep.reports[p];
    for (const auto& run : r.runs) {
      ++total;
      if (!run.assembly.converged) continue;
      ++converged;
      const double err = run.train_errors[r.target_seminorm];
      if (!(err < run.epsilon)) {
        out.fail(sweep.names[p] + " eps " + num(run.epsilon) + ": error " + num(err));
      }
    }
  }
  if (sweep.seconds >= 120.0) out.fail("sweep took " + num(sweep.seconds) + " s");
  if (out.pass) {
    out.detail = std::to_string(converged) + "/" + std::to_string(total) +
                 " runs converged, no violations, " + num(sweep.seconds) + " s";
  }
  return out;
}

Outcome criterion3(const Sweep& sweep) {
  Outcome out;
  const auto& r = sweep.get("zero_operator");
  for (const auto& run : r.runs) {
    if (!run.budget.degenerate) out.fail("eps " + num(run.epsilon) + ": C > 0");
    if (run.neurons != 0 || !run.network || !run.network->empty()) {
      out.fail("eps " + num(run.epsilon) + ": network not empty");
    }
    for (double e : run.train_errors) {
      if (e != 0.0) out.fail("eps " + num(run.epsilon) + ": train error " + num(e));
    }
    for (double e : run.heldout_errors) {
      if (e != 0.0) out.fail("eps " + num(run.epsilon) + ": held-out error " + num(e));
    }
  }
  if (out.pass) out.detail = "empty network, error 0 at " + std::to_string(r.runs.size()) + " epsilons";
  return out;
}

// Shared setup for the scalar fits: y = sin(l0(s)) on a band-limited set,
// l0 = <2 (sin pi x + sin 2 pi x + sin 3 pi x), s> = c1 + c2 + c3.
struct ScalarProblem {
  std::vector<InputPoint> x;
  std::vector<double> y;
};

ScalarProblem scalar_problem() {
  const auto g = GridMeta::uniform(0.0, 1.0, 101);
  ScalarProblem p;
  p.x = sample_ensemble({BandLimited{g, {1.0, 0.5, 0.25}}, 400}, 4242).samples;
  const auto phi = oracle::sample(
      [](double t) {
        using std::numbers::pi;
        return 2.0 * (std::sin(pi * t) + std::sin(2 * pi * t) + std::sin(3 * pi * t));
      },
      0.0, 1.0, g.n);
  const auto l0 = LinearFunctional::quadrature(g, phi);
  for (const auto& s : p.x) p.y.push_back(std::sin(apply_functional(l0, s)));
  return p;
}

FitConfig scalar_config(const Activation& eta, std::size_t width) {
  FitConfig cfg;
  cfg.activation = eta;
  cfg.width = width;
  cfg.max_width = width;
  cfg.functional_scale = 1.0;
  cfg.seed = 77;
  return cfg;
}

double tanh_width200_error = NAN;

Outcome criterion4(const ScalarProblem& p) {
  Outcome out;
  std::vector<double> errs;
  std::string trace;
  for (std::size_t w : {25u, 50u, 100u, 200u}) {
    errs.push_back(fit_scalar_ridge(p.x, p.y, scalar_config(Activation::tanh(), w)).train_sup_error);
    trace += (trace.empty() ? "" : " ") + std::to_string(w) + ":" + num(errs.back());
  }
  tanh_width200_error = errs.back();
  bool below = false;
  for (double e : errs) below = below || e < 1e-2;
  if (!below) out.fail("no width <= 200 below 1e-2");
  for (std::size_t k = 1; k < errs.size(); ++k) {
    if (errs[k] > 1.1 * errs[k - 1]) out.fail("error increased at step " + std::to_string(k));
  }
  out.detail = (out.pass ? "" : out.detail + "; ") + "sup errors " + trace;
  return out;
}

Outcome criterion5(const ScalarProblem& p) {
  Outcome out;
  const auto poly = Activation::polynomial({0.0, 0.0, 1.0});
  const double e = fit_scalar_ridge(p.x, p.y, scalar_config(poly, 400)).train_sup_error;
  const double ratio = e / tanh_width200_error;
  if (!(ratio >= 5.0)) out.fail("polynomial/tanh ratio " + num(ratio));
  out.detail = (out.pass ? "" : out.detail + "; ") + "polynomial width 400 error " + num(e) +
               ", tanh width 200 error " + num(tanh_width200_error) + ", ratio " + num(ratio);
  return out;
}

Outcome criterion6() {
  Outcome out;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal;
  const auto g = GridMeta::uniform(-3.0, 3.0, 61);
  std::size_t trials = 0;
  for (int t = 0; t < 1000; ++t) {
    const int which = t % 9;
    Seminorm rho = Seminorm::lq(1);
    bool gridded = true;
    switch (which) {
      case 0: rho = Seminorm::lq(1.0 + 3.0 * std::abs(normal(rng))); break;
      case 1: rho = Seminorm::lq(2); gridded = false; break;
      case 2: rho = Seminorm::sup_derivative(0); break;
      case 3: rho = Seminorm::sup_derivative(1 + static_cast<int>(rng() % 3)); break;
      case 4: rho = Seminorm::schwartz(static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), 2.5); break;
      case 5: rho = Seminorm::dual_pairing(oracle::normals(g.n, rng())); break;
      case 6: rho = Seminorm::dual_pairing(oracle::normals(5, rng())); gridded = false; break;
      case 7: rho = Seminorm::sup_derivative(0); gridded = false; break;
      default: rho = Seminorm::lq(2); break;
    }
    const std::size_t n = gridded ? g.n : 5;
    const auto grid = gridded ? std::optional<GridMeta>(g) : std::nullopt;
    const TargetElement a(oracle::normals(n, rng()), grid), b(oracle::normals(n, rng()), grid);
    const double lambda = 4.0 * normal(rng);
    const double ra = rho(a), rb = rho(b);
    const double hom = rho(lambda * a), want = std::abs(lambda) * ra;
    if (std::abs(hom - want) > 1e-9 * std::max(1.0, want)) {
      out.fail(rho.name() + ": homogeneity " + num(hom) + " vs " + num(want));
    }
    const double sum = rho(a + b);
    if (sum > (ra + rb) * (1.0 + 1e-9) + 1e-300) {
      out.fail(rho.name() + ": triangle " + num(sum) + " > " + num(ra + rb));
    }
    ++trials;
  }
  if (out.pass) out.detail = std::to_string(trials) + " trials over 9 seminorm variants";
  return out;
}

Outcome criterion7() {
  using std::numbers::pi;
  Outcome out;
  // Poisson against analytic solutions.
  auto poisson_err = [](std::size_t n, bool quadratic) {
    const auto g = GridMeta::uniform(0.0, 1.0, n);
    const auto f = quadratic ? std::vector<double>(n, 1.0)
                             : oracle::sample([](double x) { return std::sin(pi * x); }, 0, 1, n);
    const auto u = poisson_solve_1d(InputPoint::function(g, f));
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = g.node(i);
      const double exact = quadratic ? x * (1 - x) / 2 : std::sin(pi * x) / (pi * pi);
      e = std::max(e, std::abs(u[i] - exact));
    }
    return e;
  };
  const double e_quad = poisson_err(101, true);
  const double e_sin = poisson_err(101, false);
  const double r_sin = poisson_err(51, false) / e_sin;
  if (e_quad > 1e-12) out.fail("x(1-x)/2 error " + num(e_quad));
  if (e_sin >= 1e-3) out.fail("sin error " + num(e_sin));
  if (r_sin < 3.0 || r_sin > 5.0) out.fail("Poisson doubling ratio " + num(r_sin));

  // Integral operator against the same operator on a 10x finer grid.
  const Kernel k{Kernel::Kind::Gaussian, 1.0};
  auto f = [](double s) { return std::sin(pi * s) + 0.5 * std::sin(2 * pi * s) + 0.25 * std::sin(3 * pi * s); };
  auto integral_err = [&](std::size_t n) {
    const auto g = GridMeta::uniform(0.0, 1.0, n);
    const auto fine_g = GridMeta::uniform(0.0, 1.0, 10 * (n - 1) + 1);
    const auto coarse = integral_operator_apply(k, InputPoint::function(g, oracle::sample(f, 0, 1, g.n)));
    const auto fine = integral_operator_apply(
        k, InputPoint::function(fine_g, oracle::sample(f, 0, 1, fine_g.n)), g);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(coarse[i] - fine[i]));
    return e;
  };
  const double e_int = integral_err(101);
  const double r_int = integral_err(51) / e_int;
  if (e_int >= 1e-3) out.fail("integral error " + num(e_int));
  if (r_int < 3.0 || r_int > 5.0) out.fail("integral doubling ratio " + num(r_int));
  if (out.pass) {
    out.detail = "Poisson quadratic " + num(e_quad) + ", sine " + num(e_sin) + " (ratio " +
                 num(r_sin) + "), integral " + num(e_int) + " (ratio " + num(r_int) + ")";
  }
  return out;
}

Outcome criterion8(const Sweep& sweep) {
  Outcome out;
  auto cfg = preset("integral_gaussian");
  cfg.epsilons = {0.1};
  std::vector<std::vector<double>> dual;
  std::string trace;
  for (std::size_t w : {25u, 50u, 100u, 200u}) {
    cfg.fit.width = w;
    const auto r = run_experiment(cfg);
    if (!r.runs[0].assembly.converged) out.fail("base width " + std::to_string(w) + " did not converge");
    dual.push_back(r.runs[0].dual_train_errors);
    double worst = 0.0;
    for (double d : dual.back()) worst = std::max(worst, d);
    trace += (trace.empty() ? "" : " ") + std::to_string(w) + ":" + num(worst);
  }
  for (std::size_t s = 1; s < dual.size(); ++s) {
    for (std::size_t d = 0; d < dual[s].size(); ++d) {
      if (dual[s][d] > 1.1 * dual[s - 1][d]) {
        out.fail("dual_" + std::to_string(d) + " rose from " + num(dual[s - 1][d]) + " to " +
                 num(dual[s][d]));
      }
    }
  }
  std::size_t zero_runs = 0;
  for (std::size_t p = 0; p < sweep.names.size(); ++p) {
    for (const auto& run : sweep.reports[p].runs) {
      if (run.train_errors[sweep.reports[p].target_seminorm] != 0.0) continue;
      ++zero_runs;
      for (double d : run.dual_train_errors) {
        if (d != 0.0) out.fail(sweep.names[p] + ": dual error " + num(d) + " with zero primary error");
      }
    }
  }
  if (zero_runs == 0) out.fail("no run with zero primary error");
  out.detail = (out.pass ? "" : out.detail + "; ") + "max dual error by width " + trace + ", " +
               std::to_string(zero_runs) + " zero-error runs";
  return out;
}

Outcome criterion9(const Sweep& sweep) {
  Outcome out;
  const auto cfg = preset("poisson");
  const auto first = report_to_json(run_experiment(cfg), false).dump();
  const auto second = report_to_json(run_experiment(cfg), false).dump();
  const auto threaded = report_to_json(run_experiment(cfg, 4), false).dump();
  if (first != second) out.fail("rerun differs");
  if (first != threaded) out.fail("4-thread run differs");
  const auto& runs = sweep.get("integral_gaussian").runs;
  const auto& net = *runs.back().network;
  const auto back = parse_network(serialize_network(net).dump());
  const auto& shape = net.input_shape();
  for (std::uint64_t t = 0; t < 10; ++t) {
    const InputPoint s(shape, oracle::normals(shape.size(), 900 + t));
    if (back(s).values() != net(s).values()) out.fail("round-trip evaluation differs on input " + std::to_string(t));
  }
  if (out.pass) {
    out.detail = "reports identical across reruns and thread counts, " + std::to_string(net.size()) +
                 "-neuron network round-trips bit-exactly";
  }
  return out;
}

Outcome criterion10(const Sweep& sweep) {
  Outcome out;
  std::string trace;
  for (const char* name : {"lp_to_lq", "sequence_lp_lq", "sin_of_trace", "matrix_row_sums", "hilbert_valued"}) {
    const auto& r = sweep.get(name);
    bool found = false;
    for (const auto& run : r.runs) {
      if (run.epsilon != 0.1) continue;
      found = true;
      if (!run.assembly.converged) out.fail(std::string(name) + " did not converge");
      trace += (trace.empty() ? "" : ", ") + std::string(name) + " " + num(run.train_errors[r.target_seminorm]);
    }
    if (!found) out.fail(std::string(name) + " has no eps = 0.1 run");
  }
  out.detail = (out.pass ? "" : out.detail + "; ") + "train errors at eps 0.1: " + trace;
  return out;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };

  report(1, criterion1);
  Sweep sweep;
  try {
    sweep = run_sweep();
  } catch (const std::exception& e) {
    std::printf("preset sweep failed: %s\n", e.what());
  }
  report(2, [&] { return criterion2(sweep); });
  report(3, [&] { return criterion3(sweep); });
  const auto scalar = scalar_problem();
  report(4, [&] { return criterion4(scalar); });
  report(5, [&] { return criterion5(scalar); });
  report(6, criterion6);
  report(7, criterion7);
  report(8, [&] { return criterion8(sweep); });
  report(9, [&] { return criterion9(sweep); });
  report(10, [&] { return criterion10(sweep); });
  return failures == 0 ? 0 : 1;
}
