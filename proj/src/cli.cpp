#include "qsppoly/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qsppoly/bernstein.hpp"
#include "qsppoly/correction.hpp"
#include "qsppoly/equiripple.hpp"
#include "qsppoly/errors.hpp"
#include "qsppoly/json_io.hpp"
#include "qsppoly/membership.hpp"

namespace qsppoly {

namespace {

using json_io::format_number;
using json_io::Json;

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success (verify: Member)\n"
    "  1  invalid input\n"
    "  2  budget exceeded (no approximation / no convergence within limits)\n"
    "  3  ill-conditioned linear system\n"
    "  4  verify: MemberWithinTol\n"
    "  5  verify: NotMember\n"
    "Environment: QSPPOLY_TOL overrides the default tolerance 1e-9.";

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConvergenceBudgetExceeded:
    case ErrorCode::BetaOverflow:
    case ErrorCode::InfeasibleAtMaxDegree:
    case ErrorCode::NotConverged:
      return kExitBudgetExceeded;
    case ErrorCode::IllConditioned:
      return kExitIllConditioned;
    default:
      return kExitInvalidInput;
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// "x,y" rows, optional header line.
TargetFunction read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::vector<double> xs, ys;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, y;
    if (!(row >> x >> y)) {
      if (lineno == 1) continue;
      throw Error(ErrorCode::InvalidArgument, path + ":" + std::to_string(lineno) + ": expected x,y");
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  return TargetFunction::table(std::move(xs), std::move(ys));
}

TargetFunction parse_target(const std::string& spec) {
  if (ends_with(spec, ".json")) {
    return TargetFunction::polynomial(json_io::monomial_from_json(json_io::read_file(spec)));
  }
  if (ends_with(spec, ".csv")) return read_table(spec);
  return TargetFunction::parse_builtin(spec);
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    json_io::write_file(path, j);
  }
}

// n points from..to with the last exactly at `to`.
std::vector<double> range(double from, double to, double step) {
  if (!(step > 0) || to < from) throw Error(ErrorCode::InvalidArgument, "bad range");
  const auto n = static_cast<int>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> v;
  for (int i = 0; i < n; ++i) {
    // 0.2 + 2*0.05 should print as 0.3
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", from + i * step);
    v.push_back(std::strtod(buf, nullptr));
  }
  return v;
}

// Rows computed concurrently, written in input order.
std::vector<std::string> run_rows(std::size_t n, int jobs,
                                  const std::function<std::string(std::size_t)>& row) {
  std::vector<std::string> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) out[i] = row(i);
  };
  const int t = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int k = 1; k < t; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

struct Options {
  // approx
  std::string target, family = "P", out, report, mode = "minimal";
  double delta = 0.1;
  // step
  std::string step_mode;
  int L = 0;
  double eps = 0.1;
  int ell = 0;
  double a_ell = 0;
  std::vector<double> a;
  double kappa = 1e-4;
  int max_rounds = 200;
  // verify / sample
  std::string poly_path;
  double tol = default_tolerance();
  double from = 0, to = 1;
  int n = 101;
  // sweep
  std::string kind;
  double a_from = 0.2, a_to = 0.4, a_step = 0.05;
  int L_from = 5, L_to = 101, L_step = 4;
  int jobs = 1;
  bool eps_given = false;
};

int cmd_approx(const Options& o, std::ostream& out, std::ostream& err) {
  const Family fam = family_from_string(o.family);
  const TargetFunction f = parse_target(o.target);
  const CorrectionMode mode = correction_mode_from_string(o.mode);
  Approximation res;
  if (fam == Family::P || fam == Family::Q) {
    res = approximate_in_family(f, fam, o.delta, mode);
  } else {
    res = approximate_on_subset({Interval(0, 1)}, f, fam, o.delta);
  }
  emit(json_io::to_json(res.u), o.out, out);
  if (!o.report.empty()) json_io::write_file(o.report, json_io::to_json(res.report));
  err << "degree " << res.u.degree() << ", sup error " << format_number(res.report.error)
      << " < " << format_number(o.delta) << ", " << to_string(res.report.membership.verdict)
      << " of " << to_string(fam) << '\n';
  return kExitOk;
}

int cmd_step(const Options& o, std::ostream& out, std::ostream& err) {
  std::ostream& info = o.out.empty() ? err : out;
  if (o.step_mode == "bernstein") {
    if (o.L < 1 || o.L % 2 == 0) {
      err << "error: --L must be a positive odd integer, got " << o.L << '\n';
      return kExitInvalidInput;
    }
    const StepDomain dom(o.eps);
    const double measured = bernstein_step_at(o.L, 0.5 - dom.eps);
    const double bound = 2.0 * std::exp(-2.0 * o.L * dom.eps * dom.eps);
    const bool in_P = step_parity_check(o.L);
    Json j;
    j["schema"] = json_io::kSchema;
    j["L"] = o.L;
    j["eps"] = o.eps;
    j["measured"] = measured;
    j["bound"] = bound;
    j["in_P"] = in_P;
    j["polynomial"] = json_io::to_json(bernstein_step(o.L));
    emit(j, o.out, out);
    info << "measured " << format_number(measured) << (measured <= bound ? " <= " : " > ")
         << "bound " << format_number(bound) << '\n';
    if (!in_P) err << "warning: B_" << o.L << " Theta is not in P (L = 3 mod 4)\n";
    if (o.L > 21) {
      err << "warning: monomial coefficients of B_" << o.L
          << " Theta exceed 2^53 and are rounded\n";
    }
    return kExitOk;
  }
  if (o.step_mode == "equiripple") {
    const ZeroConfig cfg = o.a.empty() ? ZeroConfig::equispaced(o.ell, o.a_ell) : ZeroConfig(o.a);
    try {
      const auto res = equiripple_solve(cfg, o.kappa, o.max_rounds);
      Json j = json_io::to_json(res);
      if (o.eps_given) j["gap"] = json_io::to_json(gap_report(res, o.eps));
      emit(j, o.out, out);
      info << "delta " << format_number(res.delta) << ", spread " << format_number(res.spread)
           << ", rounds " << res.rounds << ", converged " << (res.converged ? "yes" : "no")
           << '\n';
      return kExitOk;
    } catch (const NotConvergedError& e) {
      emit(json_io::to_json(e.last()), o.out, out);
      err << "error: " << e.what() << '\n';
      return kExitBudgetExceeded;
    }
  }
  err << "error: --mode must be bernstein or equiripple\n";
  return kExitInvalidInput;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  const Poly p = json_io::monomial_from_json(json_io::read_file(o.poly_path));
  const auto rep = check_family(p, family_from_string(o.family), o.tol);
  out << json_io::to_json(rep).dump(2) << '\n';
  switch (rep.verdict) {
    case Verdict::Member: return kExitOk;
    case Verdict::MemberWithinTol: return kExitMemberWithinTol;
    case Verdict::NotMember: return kExitNotMember;
  }
  return kExitNotMember;
}

int cmd_sample(const Options& o, std::ostream& out, std::ostream&) {
  if (o.n < 2) throw Error(ErrorCode::InvalidArgument, "--n must be at least 2");
  const auto any = json_io::poly_from_json(json_io::read_file(o.poly_path));
  const std::function<double(double)> eval = [&any](double x) {
    if (const auto* m = std::get_if<Poly>(&any)) return (*m)(x);
    return std::get<CenteredOddPoly>(any)(x);
  };
  std::ostringstream csv;
  csv << "x,p\n";
  for (int i = 0; i < o.n; ++i) {
    const double x = i + 1 == o.n ? o.to : o.from + (o.to - o.from) * i / (o.n - 1);
    csv << format_number(x) << ',' << format_number(eval(x)) << '\n';
  }
  if (o.out.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.out);
    f << csv.str();
  }
  return kExitOk;
}

std::string status_of(const std::exception& e) {
  if (const auto* q = dynamic_cast<const Error*>(&e)) return to_string(q->code());
  return "Error";
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> rows;
  std::string header;
  if (o.kind == "ripple-vs-aell" || o.kind == "gap-vs-aell") {
    if (o.ell < 1) throw Error(ErrorCode::InvalidArgument, "--ell is required");
    const bool gap = o.kind == "gap-vs-aell";
    if (gap && !o.eps_given) throw Error(ErrorCode::InvalidArgument, "gap-vs-aell needs --eps");
    const auto as = range(o.a_from, o.a_to, o.a_step);
    header = "ell,a_ell,delta,p_at_gap,rounds,converged,in_P,status";
    rows = run_rows(as.size(), o.jobs, [&](std::size_t i) {
      std::ostringstream r;
      r << o.ell << ',' << format_number(as[i]) << ',';
      try {
        EquiRippleResult res;
        std::string status = "ok";
        try {
          res = equiripple_solve(ZeroConfig::equispaced(o.ell, as[i]), o.kappa, o.max_rounds);
        } catch (const NotConvergedError& e) {
          res = e.last();
          status = "NotConverged";
        }
        std::string p_at_gap;
        if (o.eps_given) {
          try {
            p_at_gap = format_number(gap_report(res, o.eps).p_at_gap);
          } catch (const Error& e) {
            if (gap) throw;
          }
        }
        r << format_number(res.delta) << ',' << p_at_gap << ',' << res.rounds << ','
          << (res.converged ? "true" : "false") << ',' << (res.in_P ? "true" : "false") << ','
          << status;
      } catch (const std::exception& e) {
        r << ",,,,," << status_of(e);
      }
      return r.str();
    });
  } else if (o.kind == "bernstein-rate") {
    std::vector<int> Ls;
    for (int L = o.L_from; L <= o.L_to; L += o.L_step) Ls.push_back(L);
    header = "L,eps,measured,bound,holds,status";
    rows = run_rows(Ls.size(), o.jobs, [&](std::size_t i) {
      std::ostringstream r;
      r << Ls[i] << ',' << format_number(o.eps) << ',';
      try {
        const auto se = step_error(Ls[i], StepDomain(o.eps));
        r << format_number(se.measured) << ',' << format_number(se.bound) << ','
          << (se.measured <= se.bound ? "true" : "false") << ",ok";
      } catch (const std::exception& e) {
        r << ",,," << status_of(e);
      }
      return r.str();
    });
  } else {
    err << "error: --kind must be ripple-vs-aell, gap-vs-aell or bernstein-rate\n";
    return kExitInvalidInput;
  }

  std::ostringstream csv;
  csv << header << '\n';
  int ok = 0;
  for (const auto& r : rows) {
    csv << r << '\n';
    ok += ends_with(r, ",ok");
  }
  if (o.out.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.out);
    f << csv.str();
  }
  err << ok << " of " << rows.size() << " rows succeeded\n";
  return ok > 0 ? kExitOk : kExitBudgetExceeded;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constructive approximation by QSP polynomial families", "qsppoly"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);
  Options o;

  auto* approx = app.add_subcommand("approx", "Approximate a target within a family");
  approx->add_option("--target", o.target, "builtin[:param], polynomial .json or table .csv")
      ->required();
  approx->add_option("--family", o.family, "P, Q, Pprime or Qprime")->default_val("P");
  approx->add_option("--delta", o.delta, "sup-error budget")
      ->check(CLI::PositiveNumber)
      ->default_val(0.1);
  approx->add_option("--out", o.out, "polynomial JSON (stdout if omitted)");
  approx->add_option("--report", o.report, "pipeline report JSON");
  approx->add_option("--mode", o.mode, "correction: minimal or proof")->default_val("minimal");

  auto* step = app.add_subcommand("step", "Step-function approximants");
  step->add_option("--mode", o.step_mode, "bernstein or equiripple")->required();
  step->add_option("--L", o.L, "Bernstein degree (odd)");
  auto* step_eps = step->add_option("--eps", o.eps, "half-width of the gap")
                       ->check(CLI::Range(0.0, 0.5).description("0 < eps < 1/2"));
  step->add_option("--ell", o.ell, "number of interior double zeros");
  step->add_option("--a-ell", o.a_ell, "largest zero a_ell");
  step->add_option("--a", o.a, "explicit zeros a_1..a_ell (overrides --ell/--a-ell)")
      ->delimiter(',');
  step->add_option("--kappa", o.kappa, "smallest exchange step")
      ->check(CLI::PositiveNumber)
      ->default_val(1e-4);
  step->add_option("--max-rounds", o.max_rounds)->default_val(200);
  step->add_option("--out", o.out, "JSON output (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "Check family membership");
  verify->add_option("--poly", o.poly_path, "polynomial JSON")->required();
  verify->add_option("--family", o.family)->required();
  verify->add_option("--tol", o.tol, "tolerance (default 1e-9 or QSPPOLY_TOL)")
      ->check(CLI::PositiveNumber);

  auto* sample = app.add_subcommand("sample", "Sample a polynomial to CSV");
  sample->add_option("--poly", o.poly_path, "polynomial JSON")->required();
  sample->add_option("--from", o.from)->default_val(0.0);
  sample->add_option("--to", o.to)->default_val(1.0);
  sample->add_option("--n", o.n, "number of points (>= 2)")->default_val(101);
  sample->add_option("--out", o.out, "CSV output (stdout if omitted)");

  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps as CSV");
  sweep->add_option("--kind", o.kind, "ripple-vs-aell, gap-vs-aell or bernstein-rate")
      ->required();
  sweep->add_option("--ell", o.ell);
  sweep->add_option("--a-from", o.a_from)->default_val(0.2);
  sweep->add_option("--a-to", o.a_to)->default_val(0.4);
  sweep->add_option("--a-step", o.a_step)->default_val(0.05);
  auto* sweep_eps = sweep->add_option("--eps", o.eps)->check(
      CLI::Range(0.0, 0.5).description("0 < eps < 1/2"));
  sweep->add_option("--kappa", o.kappa)->check(CLI::PositiveNumber)->default_val(1e-4);
  sweep->add_option("--max-rounds", o.max_rounds)->default_val(200);
  sweep->add_option("--L-from", o.L_from)->default_val(5);
  sweep->add_option("--L-to", o.L_to)->default_val(101);
  sweep->add_option("--L-step", o.L_step)->default_val(4);
  sweep->add_option("--jobs", o.jobs, "concurrent rows")->default_val(1);
  sweep->add_option("--out", o.out, "CSV output (stdout if omitted)");

  std::vector<std::string> argv{"qsppoly"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> cargv;
  for (const auto& s : argv) cargv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  if (const char* env = std::getenv("QSPPOLY_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !std::isfinite(v) || v <= 0) {
      err << "error: QSPPOLY_TOL must be a positive number, got '" << env << "'\n";
      return kExitInvalidInput;
    }
  }
  o.eps_given = step_eps->count() > 0 || sweep_eps->count() > 0;

  try {
    if (approx->parsed()) return cmd_approx(o, out, err);
    if (step->parsed()) return cmd_step(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (sample->parsed()) return cmd_sample(o, out, err);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace qsppoly
