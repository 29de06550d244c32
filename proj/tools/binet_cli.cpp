// Command-line front end: kernel/remainder evaluation, comparison tables,
// truncation scans, and the property-verification suites.
//
// Exit codes: 0 success (all checks pass), 1 numerical failure or property
// violation, 2 usage errors.
#include <CLI11.hpp>

#include <binet/binet.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using binet::format_g17;

struct CommonOpts {
  std::string format = "plain";
};

void print_eval_pair(const CommonOpts& common, const char* header_fields,
                     const std::string& fixed, const binet::ThetaEval& ev) {
  if (common.format == "csv") {
    std::cout << header_fields << "\n" << fixed << ',';
    std::cout << (ev.closed ? format_g17(*ev.closed) : "") << ','
              << (ev.quadrature ? format_g17(ev.quadrature->value) : "") << ','
              << (ev.closed && ev.quadrature ? format_g17(ev.disagreement) : "")
              << "\n";
    return;
  }
  if (ev.closed && ev.quadrature) {
    std::cout << "closed " << format_g17(*ev.closed) << "\n"
              << "quad " << format_g17(ev.quadrature->value) << "\n"
              << "disagreement " << format_g17(ev.disagreement) << "\n";
  } else if (ev.closed) {
    std::cout << format_g17(*ev.closed) << "\n";
  } else if (ev.quadrature) {
    std::cout << format_g17(ev.quadrature->value) << "\n";
  }
}

int quad_health(const binet::ThetaEval& ev) {
  if (ev.quadrature && !ev.quadrature->converged) {
    std::cerr << "warning: quadrature did not converge (err_estimate "
              << format_g17(ev.quadrature->err_estimate) << ")\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extended Binet remainder toolkit"};
  app.require_subcommand(1);
  CommonOpts common;

  // ---- eval-delta ----
  auto* cmd_delta = app.add_subcommand(
      "eval-delta", "evaluate the generating kernel or its derivatives");
  double da = 0.0, db = 0.0, dt = 0.0;
  int dderiv = 0;
  cmd_delta->add_option("--a", da, "left exponent parameter")->required();
  cmd_delta->add_option("--b", db, "right exponent parameter")->required();
  cmd_delta->add_option("--t", dt, "argument")->required();
  cmd_delta->add_option("--deriv", dderiv, "derivative order (0..2)")
      ->check(CLI::Range(0, 2));
  cmd_delta->add_option("--format", common.format, "plain|csv")
      ->check(CLI::IsMember({"plain", "csv"}));

  // ---- eval-theta ----
  auto* cmd_theta = app.add_subcommand(
      "eval-theta", "evaluate the extended remainder or its derivatives");
  double talpha = 1.0, tx = 0.0;
  int tderiv = 0;
  std::string tmethod = "closed";
  cmd_theta->add_option("--alpha", talpha, "scale parameter (default 1)");
  cmd_theta->add_option("--x", tx, "argument")->required();
  cmd_theta->add_option("--deriv", tderiv, "derivative order (0..6)")
      ->check(CLI::Range(0, 6));
  cmd_theta->add_option("--method", tmethod, "closed|quad|both")
      ->check(CLI::IsMember({"closed", "quad", "both"}));
  cmd_theta->add_option("--format", common.format, "plain|csv")
      ->check(CLI::IsMember({"plain", "csv"}));

  // ---- eval-f ----
  auto* cmd_f = app.add_subcommand(
      "eval-f", "evaluate the two-parameter remainder difference");
  double fp = 0.0, fq = 0.0, falpha = 1.0, fx = 0.0;
  std::string fmethod = "closed";
  cmd_f->add_option("--p", fp, "scale of the first term")->required();
  cmd_f->add_option("--q", fq, "weight of the second term")->required();
  cmd_f->add_option("--alpha", falpha, "scale parameter (default 1)");
  cmd_f->add_option("--x", fx, "argument")->required();
  cmd_f->add_option("--method", fmethod, "closed|quad|both")
      ->check(CLI::IsMember({"closed", "quad", "both"}));
  cmd_f->add_option("--format", common.format, "plain|csv")
      ->check(CLI::IsMember({"plain", "csv"}));

  // ---- table ----
  auto* cmd_table = app.add_subcommand(
      "table", "closed-vs-quadrature comparison over a log grid in x");
  double tab_alpha = 1.0;
  int tab_samples = 30;
  cmd_table->add_option("--alpha", tab_alpha, "scale parameter (default 1)");
  cmd_table->add_option("--samples", tab_samples, "number of grid points")
      ->check(CLI::Range(2, 100000));
  cmd_table->add_option("--format", common.format, "plain|csv")
      ->check(CLI::IsMember({"plain", "csv"}));

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand(
      "verify", "run the property-verification suites");
  std::string suite = "all", report_path;
  std::uint64_t seed = 42;
  int vsamples = 0;
  cmd_verify->add_option("--suite", suite, "theorem1|theorem2|theorem3|remark|all")
      ->check(CLI::IsMember({"theorem1", "theorem2", "theorem3", "remark", "all"}));
  cmd_verify->add_option("--seed", seed, "grid seed (default 42)");
  cmd_verify->add_option("--samples", vsamples,
                         "override per-symbol grid counts (min 8)")
      ->check(CLI::PositiveNumber);
  cmd_verify->add_option("--report", report_path, "write the CSV report here");
  cmd_verify->add_option("--format", common.format, "plain|csv")
      ->check(CLI::IsMember({"plain", "csv"}));

  // ---- divergence ----
  auto* cmd_div = app.add_subcommand(
      "divergence", "fit the truncation blow-up of the kernel integral");
  double va = 0.0, vb = 0.0, vx = 1.0;
  cmd_div->add_option("--a", va, "left exponent parameter")->required();
  cmd_div->add_option("--b", vb, "right exponent parameter")->required();
  cmd_div->add_option("--x", vx, "decay rate (default 1)");
  cmd_div->add_option("--format", common.format, "plain|csv")
      ->check(CLI::IsMember({"plain", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_delta->parsed()) {
      const binet::KernelParams kp(da, db);
      const double v = dderiv == 0   ? binet::delta(kp, dt)
                       : dderiv == 1 ? binet::delta_prime(kp, dt)
                                     : binet::delta_second(kp, dt);
      if (common.format == "csv")
        std::cout << "a,b,t,deriv,value\n"
                  << format_g17(da) << ',' << format_g17(db) << ','
                  << format_g17(dt) << ',' << dderiv << ',' << format_g17(v)
                  << "\n";
      else
        std::cout << format_g17(v) << "\n";
      return 0;
    }

    if (cmd_theta->parsed()) {
      const binet::ThetaEval ev = binet::theta_alpha_deriv(
          talpha, tx, tderiv, binet::method_from_string(tmethod));
      const std::string fixed = format_g17(talpha) + "," + format_g17(tx) +
                                "," + std::to_string(tderiv) + "," + tmethod;
      print_eval_pair(common, "alpha,x,deriv,method,closed,quad,disagreement",
                      fixed, ev);
      return quad_health(ev);
    }

    if (cmd_f->parsed()) {
      const binet::FpqParams params(fp, fq, falpha);
      binet::ThetaEval ev;  // reuse the closed/quad/disagreement carrier
      const binet::Method m = binet::method_from_string(fmethod);
      if (m != binet::Method::quad)
        ev.closed = binet::f_pq(params, fx, binet::Method::closed);
      if (m != binet::Method::closed) {
        binet::QuadResult qr;
        qr.value = binet::f_pq(params, fx, binet::Method::quad);
        qr.converged = true;
        ev.quadrature = qr;
      }
      if (ev.closed && ev.quadrature)
        ev.disagreement = std::abs(*ev.closed - ev.quadrature->value);
      const std::string fixed = format_g17(fp) + "," + format_g17(fq) + "," +
                                format_g17(falpha) + "," + format_g17(fx) +
                                "," + fmethod;
      print_eval_pair(common, "p,q,alpha,x,method,closed,quad,disagreement",
                      fixed, ev);
      return 0;
    }

    if (cmd_table->parsed()) {
      const double lo = 0.05, hi = 50.0;
      int bad = 0;
      const char sep = common.format == "csv" ? ',' : ' ';
      std::cout << "x" << sep << "closed" << sep << "quad" << sep << "abs_diff"
                << "\n";
      for (int i = 0; i < tab_samples; ++i) {
        const double f =
            tab_samples == 1 ? 0.0 : double(i) / double(tab_samples - 1);
        const double x = lo * std::pow(hi / lo, f);
        const double closed = binet::theta_alpha_closed(tab_alpha, x);
        const binet::QuadResult r = binet::theta_alpha_quad(tab_alpha, x);
        if (!r.converged) ++bad;
        std::cout << format_g17(x) << sep << format_g17(closed) << sep
                  << format_g17(r.value) << sep
                  << format_g17(std::abs(closed - r.value)) << "\n";
      }
      if (bad > 0)
        std::cerr << "warning: " << bad << " rows did not converge\n";
      return bad == 0 ? 0 : 1;
    }

    if (cmd_verify->parsed()) {
      binet::GridSpec grid = binet::default_grid(seed);
      if (vsamples > 0)
        for (auto& kv : grid.ranges) kv.second.count = std::max(8, vsamples);
      const auto reports = binet::run_suite(suite, grid);
      if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
          std::cerr << "error: cannot write " << report_path << "\n";
          return 1;
        }
        binet::write_report_csv(out, reports);
      }
      int failures = 0;
      if (common.format == "csv") {
        binet::write_report_csv(std::cout, reports);
        for (const auto& r : reports)
          failures += r.status == binet::Status::fail;
      } else {
        for (const auto& r : reports) {
          failures += r.status == binet::Status::fail;
          std::cout << to_string(r.status) << ' ' << r.claim_id
                    << " samples=" << r.samples
                    << " worst_margin=" << format_g17(r.worst_margin);
          if (!r.notes.empty()) std::cout << "  (" << r.notes << ")";
          std::cout << "\n";
        }
        std::cout << "suite " << suite << ": " << reports.size() << " claims, "
                  << failures << " failures\n";
      }
      return failures == 0 ? 0 : 1;
    }

    if (cmd_div->parsed()) {
      const binet::KernelParams kp(va, vb);
      const binet::DivergenceFit fit =
          binet::divergence_scan(kp, vx, binet::default_epsilons());
      if (common.format == "csv")
        std::cout << "a,b,x,slope,intercept,residual\n"
                  << format_g17(va) << ',' << format_g17(vb) << ','
                  << format_g17(vx) << ',' << format_g17(fit.slope) << ','
                  << format_g17(fit.intercept) << ','
                  << format_g17(fit.residual) << "\n";
      else
        std::cout << "slope " << format_g17(fit.slope) << "\n"
                  << "intercept " << format_g17(fit.intercept) << "\n"
                  << "residual " << format_g17(fit.residual) << "\n";
      return 0;
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;  // bad parameter values are usage errors
  } catch (const std::range_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;  // runtime/numerical failure
  }
  return 2;
}
