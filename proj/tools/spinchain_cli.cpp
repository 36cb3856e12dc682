// spinchain command-line front end.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "spinchain/chain_model.hpp"
#include "spinchain/constructions.hpp"
#include "spinchain/criteria.hpp"
#include "spinchain/error.hpp"
#include "spinchain/exact.hpp"
#include "spinchain/io.hpp"
#include "spinchain/kernels.hpp"
#include "spinchain/pgt_route.hpp"
#include "spinchain/phase.hpp"
#include "spinchain/spectral.hpp"

namespace fs = std::filesystem;
using namespace spinchain;
using io::json;

namespace {

constexpr const char* kVersion = "0.1.0";

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<BigInt> parse_integer_list(const std::string& text) {
  std::vector<BigInt> out;
  for (const auto& item : split(text, ',')) {
    BigInt v;
    if (v.set_str(item, 10) != 0) throw ValidationError("spectrum: \"" + item + "\" is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("spectrum: empty");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(std::string(what) + ": \"" + item + "\" is not a number");
    }
  }
  return out;
}

BigRational parse_rational(const std::string& text) {
  BigRational q;
  if (q.set_str(text, 10) != 0) throw ValidationError("time: \"" + text + "\" is not a rational");
  q.canonicalize();
  return q;
}

// Accepts "pi", "3pi", "pi/2", "3/2pi", "12000pi" as exact multiples of pi, or a plain number.
Time parse_time(const std::string& text) {
  const auto at = text.find("pi");
  if (at == std::string::npos) return Time(parse_double_list(text, "time").at(0));
  std::string coeff = text.substr(0, at);
  std::string tail = text.substr(at + 2);
  if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  BigRational tau = coeff.empty() ? BigRational(1) : parse_rational(coeff);
  if (!tail.empty()) {
    if (tail.front() != '/') throw ValidationError("time: cannot parse \"" + text + "\"");
    tau /= parse_rational(tail.substr(1));
  }
  return Time::multiple_of_pi(tau);
}

std::string describe(const Time& t) {
  return t.is_pi_multiple() ? to_string(t.over_pi()) + "pi" : io::format_double(t.approx());
}

// A chain spec file, or the output of `build --json` (which nests the spec).
ChainSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const json j = io::parse_json_text(buffer.str(), path);
  if (j.is_object() && j.contains("spec")) return io::chain_spec_from_json(j["spec"]);
  return io::chain_spec_from_json(j);
}

SingleExcitationOperator load_operator(const std::string& path, double mirror) {
  const auto spec = load_spec(path);
  if (mirror < 0) return build_single_excitation_matrix(spec);
  return compose_mirror_chain({spec, mirror, spec.model()});
}

// Integer spectrum when every eigenvalue is an integer to within tolerance.
std::optional<std::vector<BigInt>> integer_spectrum(std::span<const double> values) {
  std::vector<BigInt> out;
  for (double v : values) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v))) return std::nullopt;
    out.emplace_back(r);
  }
  return out;
}

struct CertifyOptions {
  std::string spec_file;
  std::string spectrum;
  bool pgst = false;
  std::string pst_time;
  std::string revival_time;
  bool centrosymmetry = false;
  bool no_pst = false;
  bool n4_exhaustive = false;
  long bound = 50;
  std::string feasibility_range;
  long large_a_N = 0;
  double tol = 1e-9;
};

json n4_exhaustive(long bound) {
  long count = 0;
  long impossible = 0;
  long formula_mismatch = 0;
  for (long a = 0; a <= bound; ++a) {
    for (long b = a + 1; b <= bound; ++b) {
      for (long c = b; c <= bound; ++c) {
        const std::vector<BigInt> spectrum{0, -(2 * a + 1), -2 * b, -(2 * c + 1)};
        const auto verdict = verify_no_pst(spectrum);
        ++count;
        if (verdict.impossible()) ++impossible;
        if (exact_overlaps(spectrum).overlaps[0] != n4_overlap_formula(a, b, c)) ++formula_mismatch;
      }
    }
  }
  return json{{"bound", bound},
              {"spectra", count},
              {"impossible", impossible},
              {"formula_mismatches", formula_mismatch},
              {"all_impossible", impossible == count}};
}

json feasibility_sweep(const std::string& range) {
  const auto dots = range.find("..");
  long lo = 0;
  long hi = 0;
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stol(range);
    } else {
      lo = std::stol(range.substr(0, dots));
      hi = std::stol(range.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw ValidationError("--linear-spectrum-feasibility: expected N or LO..HI, got \"" + range + "\"");
  }
  if (lo < 2 || hi < lo) throw ValidationError("--linear-spectrum-feasibility: need 2 <= LO <= HI");
  json per_n = json::object();
  bool all_infeasible = true;
  for (long N = lo; N <= hi; ++N) {
    const bool feasible = linear_spectrum_feasibility(N) == Feasibility::Feasible;
    per_n[std::to_string(N)] = feasible ? "Feasible" : "Infeasible";
    all_infeasible = all_infeasible && !feasible;
  }
  return json{{"range", {lo, hi}}, {"results", per_n}, {"all_infeasible", all_infeasible}};
}

void run_certify(const CertifyOptions& o) {
  if (!o.spec_file.empty() && !o.spectrum.empty()) {
    throw ValidationError("certify: give either a spec file or --spectrum, not both");
  }
  json out = json::object();

  std::optional<std::vector<double>> values;
  std::optional<std::vector<BigInt>> exact;
  std::optional<SingleExcitationOperator> op;
  if (!o.spec_file.empty()) {
    op = build_single_excitation_matrix(load_spec(o.spec_file));
    values = eigenvalues(*op);
    exact = integer_spectrum(*values);
    out["eigenvalues"] = *values;
  } else if (!o.spectrum.empty()) {
    exact = parse_integer_list(o.spectrum);
    std::vector<double> v;
    for (const auto& x : *exact) v.push_back(x.get_d());
    values = v;
  }

  const bool any_check = o.pgst || !o.pst_time.empty() || !o.revival_time.empty() ||
                         o.centrosymmetry || o.no_pst || o.n4_exhaustive ||
                         !o.feasibility_range.empty() || o.large_a_N > 0;
  const bool defaults = !any_check && (op || values);

  if (o.centrosymmetry || (defaults && op)) {
    if (!op) throw ValidationError("--centrosymmetry needs a spec file");
    out["centrosymmetry"] = {{"holds", check_centrosymmetry(*op, o.tol * std::max(1.0, op->norm()))}};
  }
  if (o.pgst || (defaults && exact)) {
    if (!values) throw ValidationError("--pgst needs a spec file or --spectrum");
    if (exact) {
      out["pgst"] = io::to_json(pgst_certificate(*exact));
    } else {
      out["pgst"] = {{"applicable", false}, {"reason", "spectrum is not integral"}};
    }
  }
  if (o.no_pst) {
    if (!exact) throw ValidationError("--no-pst needs an integer spectrum");
    out["no_pst"] = io::to_json(verify_no_pst(*exact));
  }
  const auto timed = [&](const std::string& text, bool revival) {
    if (!values) throw ValidationError("time checks need a spec file or --spectrum");
    const Time t = parse_time(text);
    json j{{"time", describe(t)}};
    j["spectral_condition"] = revival ? check_revival_spectrum(*values, t.approx(), o.tol)
                                      : check_pst_spectrum(*values, t.approx(), o.tol);
    if (op) {
      const auto es = eigendecompose(*op);
      const Site first{1};
      if (revival) {
        const auto r = revival_fidelity(es, first, t);
        j["fidelity"] = r.fidelity;
        j["phase"] = r.phase_defined ? json(r.phase) : json(nullptr);
      } else {
        j["fidelity"] = transfer_fidelity(es, first, Site{op->size()}, t);
      }
    }
    return j;
  };
  if (!o.pst_time.empty()) out["pst"] = timed(o.pst_time, false);
  if (!o.revival_time.empty()) out["revival"] = timed(o.revival_time, true);
  if (o.n4_exhaustive) out["n4_exhaustive"] = n4_exhaustive(o.bound);
  if (!o.feasibility_range.empty()) out["linear_spectrum_feasibility"] = feasibility_sweep(o.feasibility_range);
  if (o.large_a_N > 0) out["large_a_no_go"] = io::to_json(large_a_no_go(o.large_a_N));
  if (out.empty()) throw ValidationError("certify: nothing to check (see --help)");
  emit(out);
}

struct PlanOptions {
  long N = 0;
  double epsilon = 0;
  bool truncate = false;
  bool evaluate = false;
  double k_ceiling = 1e12;
};

void run_plan(const PlanOptions& o) {
  PgtPlan plan;
  try {
    plan = o.truncate ? plan_truncated(o.N, o.epsilon) : plan_full_spectrum(o.N, o.epsilon);
  } catch (const InfeasibleError& e) {
    emit(json{{"N", o.N}, {"epsilon", o.epsilon}, {"feasible", false}, {"notice", e.what()}});
    return;
  }
  json out = io::to_json(plan);
  out["feasible"] = true;
  if (o.evaluate) {
    try {
      out["evaluation"] = io::to_json(evaluate_plan(plan, {o.k_ceiling}));
    } catch (const EvaluationRefused& e) {
      out["evaluation"] = nullptr;
      out["notice"] = e.what();
    }
  }
  emit(out);
}

void write_sidecar(const fs::path& dir) {
  io::write_json_file((dir / "versions.json").string(),
                      json{{"spinchain", kVersion},
                           {"precision_bits", phase_precision_bits()},
                           {"kernels", kernels::active().isa == kernels::Isa::Avx2 ? "avx2" : "scalar"}});
}

struct FigureOptions {
  long fig1 = 0;
  long fig2 = 0;
  std::string a_grid = "200,500,1000,2000";
  std::string out = ".";
};

void run_figures(const FigureOptions& o) {
  if (o.fig1 <= 0 && o.fig2 <= 0) throw ValidationError("figures: give --fig1 and/or --fig2");
  const fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + o.out);
  json summary = json::object();
  if (o.fig1 > 0) {
    if (o.fig1 < 2) throw ValidationError("--fig1: r_max must be at least 2");
    std::vector<long> r;
    for (long i = 2; i <= o.fig1; ++i) r.push_back(i);
    const auto data = fig1_dataset(r);
    std::ofstream f(dir / "fig1.csv");
    io::write_fig1_csv(f, data);
    summary["fig1"] = {{"file", (dir / "fig1.csv").string()},
                       {"rows", data.rows.size()},
                       {"slope", data.fit.slope},
                       {"intercept", data.fit.intercept},
                       {"r_squared", data.fit.r_squared}};
  }
  if (o.fig2 > 0) {
    const auto grid = parse_double_list(o.a_grid, "--a-grid");
    const auto rows = fig2_dataset(o.fig2, grid);
    std::ofstream f(dir / "fig2.csv");
    io::write_fig2_csv(f, rows);
    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      monotone = monotone && rows[i].max_fidelity >= rows[i - 1].max_fidelity - 1e-3;
    }
    summary["fig2"] = {{"file", (dir / "fig2.csv").string()},
                       {"rows", rows.size()},
                       {"monotone", monotone}};
  }
  write_sidecar(dir);
  emit(summary);
}

ChainSpec construct(const std::string& family, long N) {
  if (family == "hahn") return hahn_chain(N);
  if (family == "uniform-overlap") return uniform_overlap_chain(N);
  if (family == "lm") return lm_chain(N);
  throw ValidationError("construct: unknown family \"" + family + "\"");
}

struct SweepOptions {
  std::string spec_file;
  double mirror = -1;
  std::size_t from = 1;
  std::size_t to = 0;
  double t_begin = 0;
  double t_end = std::numbers::pi;
  std::size_t points = 1001;
  std::string out;
};

void run_sweep(const SweepOptions& o) {
  const auto op = load_operator(o.spec_file, o.mirror);
  const std::size_t to = o.to == 0 ? op.size() : o.to;
  if (o.from < 1 || o.from > op.size()) throw ValidationError("--from: site out of range");
  if (to < 1 || to > op.size()) throw ValidationError("--to: site out of range");
  if (o.points < 2 || !(o.t_end > o.t_begin)) throw ValidationError("sweep: need points >= 2 and t1 > t0");
  const auto es = eigendecompose(op);
  const double dt = (o.t_end - o.t_begin) / static_cast<double>(o.points - 1);
  std::vector<double> grid(o.points);
  for (std::size_t i = 0; i < o.points; ++i) grid[i] = o.t_begin + dt * static_cast<double>(i);
  const auto points = fidelity_sweep(es, Site{o.from}, Site{to}, grid);
  if (o.out.empty()) {
    io::write_sweep_csv(std::cout, points);
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    io::write_sweep_csv(f, points);
  }
}

void run_build(const std::string& path, double mirror, bool as_json) {
  const auto spec = load_spec(path);
  const auto op = mirror < 0 ? build_single_excitation_matrix(spec)
                             : compose_mirror_chain({spec, mirror, spec.model()});
  const auto values = eigenvalues(op);
  if (as_json) {
    json j{{"spec", io::to_json(spec)}, {"operator", io::to_json(op)}, {"eigenvalues", values}};
    if (mirror >= 0) j["central_coupling"] = mirror;
    emit(j);
    return;
  }
  std::cout << "model: " << model_name(spec.model()) << ", dimension " << op.size() << '\n';
  std::cout << "diagonal:";
  for (double d : op.diagonal()) std::cout << ' ' << io::format_double(d);
  std::cout << "\noff-diagonal:";
  for (double e : op.off_diagonal()) std::cout << ' ' << io::format_double(e);
  std::cout << "\neigenvalues:";
  for (double v : values) std::cout << ' ' << io::format_double(v);
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-excitation spin-chain state transfer toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string build_file;
  double build_mirror = -1;
  bool build_json = false;
  auto* build = app.add_subcommand("build", "Print the single-excitation operator and its eigenvalues");
  build->add_option("spec", build_file, "Chain spec JSON")->required();
  build->add_option("--mirror", build_mirror, "Compose a mirror chain with this central coupling");
  build->add_flag("--json", build_json, "Machine-readable output");

  CertifyOptions cert;
  auto* certify = app.add_subcommand("certify", "Run transfer criteria and no-go checks");
  certify->add_option("spec", cert.spec_file, "Chain spec JSON (or build --json output)");
  certify->add_option("--spectrum", cert.spectrum, "Comma-separated integer spectrum, decreasing");
  certify->add_flag("--pgst", cert.pgst, "Pretty-good-transfer certificate");
  certify->add_option("--pst", cert.pst_time, "Perfect transfer at time T (e.g. pi/2, 3pi, 1.5)");
  certify->add_option("--revival", cert.revival_time, "Perfect revival at time T");
  certify->add_flag("--centrosymmetry", cert.centrosymmetry, "Mirror symmetry of the operator");
  certify->add_flag("--no-pst", cert.no_pst, "Null-vector overlap obstruction");
  certify->add_flag("--n4-exhaustive", cert.n4_exhaustive, "Sweep all N=4 odd-gap spectra");
  certify->add_option("--bound", cert.bound, "Parameter bound for --n4-exhaustive")->check(CLI::PositiveNumber);
  certify->add_option("--linear-spectrum-feasibility", cert.feasibility_range, "N or LO..HI");
  certify->add_option("--large-a-no-go", cert.large_a_N, "Half-chain length N")->check(CLI::PositiveNumber);
  certify->add_option("--tol", cert.tol, "Relative tolerance for floating checks");

  PlanOptions plan;
  auto* plan_cmd = app.add_subcommand("plan", "Size a central coupling and time for target infidelity");
  plan_cmd->add_option("--N", plan.N, "Half-chain length")->required();
  plan_cmd->add_option("--epsilon", plan.epsilon, "Target infidelity")->required();
  plan_cmd->add_flag("--truncate", plan.truncate, "Retain only the leading eigenvalues");
  plan_cmd->add_flag("--evaluate", plan.evaluate, "Evaluate the plan with exact dynamics");
  plan_cmd->add_option("--k-ceiling", plan.k_ceiling, "Refuse evaluation above this t/pi");

  FigureOptions fig;
  auto* figures = app.add_subcommand("figures", "Write figure datasets as CSV");
  figures->add_option("--fig1", fig.fig1, "Largest r for N = 2^r");
  figures->add_option("--fig2", fig.fig2, "Half-chain length of the mirrored chain");
  figures->add_option("--a-grid", fig.a_grid, "Comma-separated central couplings for --fig2");
  figures->add_option("--out", fig.out, "Output directory (created if missing)");

  std::string family;
  long construct_N = 0;
  std::string construct_out;
  auto* construct_cmd = app.add_subcommand("construct", "Emit a chain spec for a known family");
  construct_cmd->add_option("family", family, "hahn | uniform-overlap | lm")
      ->required()
      ->check(CLI::IsMember({"hahn", "uniform-overlap", "lm"}));
  construct_cmd->add_option("--N", construct_N, "Chain length")->required();
  construct_cmd->add_option("--out", construct_out, "Write to file instead of stdout");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Transfer fidelity on a uniform time grid (CSV)");
  sweep_cmd->add_option("spec", sweep.spec_file, "Chain spec JSON")->required();
  sweep_cmd->add_option("--mirror", sweep.mirror, "Compose a mirror chain with this central coupling");
  sweep_cmd->add_option("--from", sweep.from, "Source site (1-based)");
  sweep_cmd->add_option("--to", sweep.to, "Target site (default: last)");
  sweep_cmd->add_option("--t0", sweep.t_begin, "Start time");
  sweep_cmd->add_option("--t1", sweep.t_end, "End time");
  sweep_cmd->add_option("--points", sweep.points, "Grid points");
  sweep_cmd->add_option("--out", sweep.out, "CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) run_build(build_file, build_mirror, build_json);
    if (certify->parsed()) run_certify(cert);
    if (plan_cmd->parsed()) run_plan(plan);
    if (figures->parsed()) run_figures(fig);
    if (construct_cmd->parsed()) {
      const json j = io::to_json(construct(family, construct_N));
      if (construct_out.empty()) {
        emit(j);
      } else {
        io::write_json_file(construct_out, j);
      }
    }
    if (sweep_cmd->parsed()) run_sweep(sweep);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
