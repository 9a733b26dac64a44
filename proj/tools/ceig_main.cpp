// ceig: C-eigenvalue inclusion intervals and largest-eigenvalue solver for
// piezoelectric-type tensors.
//
// Subcommands:
//   bounds   rho / rho_min inclusion radii for one tensor
//   solve    largest C-eigenvalue and eigenvectors
//   verify   containment checks (lambda* <= rho_min <= rho)
//   table1   bounds + lambda* for every bundled tensor vs published values
//   dataset  list bundled tensors; optionally export them as .pzt files
//
// Exit codes: 0 success, 1 input/validation error, 2 solver or verification
// failure.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ceig/bounds.hpp"
#include "ceig/dataset.hpp"
#include "ceig/piezo_tensor.hpp"
#include "ceig/solver.hpp"
#include "ceig/tensor_io.hpp"

namespace {

using nlohmann::json;

constexpr double kRhoMatchTol = 5e-4;     // published values carry 4 decimals
constexpr double kLambdaMatchTol = 1e-3;

struct CommonOpts {
  std::string input_path;
  std::string dataset_key;
  std::string format = "text";
  std::string subset_policy = "auto";
  int n_cap = ceig::kDefaultSubsetCap;
};

struct SolverOpts {
  int starts = 50;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  double residual_tol = 1e-8;
  int max_iters = 1000;

  ceig::SolveConfig to_config() const {
    ceig::SolveConfig cfg;
    cfg.random_starts = starts;
    cfg.seed = seed;
    cfg.tol = tol;
    cfg.residual_tol = residual_tol;
    cfg.max_iters = max_iters;
    return cfg;
  }
};

// One serializable result row; optional fields stay null/empty when the
// subcommand did not compute them.
struct Record {
  std::string name;
  int n = 0;
  double rho = 0.0;
  double rho_min = 0.0;
  std::vector<int> argmin_subset;
  std::string enumeration_mode;
  std::optional<double> lambda_star;
  std::optional<std::vector<double>> x;
  std::optional<std::vector<double>> y;
  std::optional<double> residual_x;
  std::optional<double> residual_y;
  std::optional<bool> containment_ok;
  std::optional<ceig::PublishedValues> published;
};

std::string fmt_full(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string fmt4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string join(const std::vector<int>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_full(const std::vector<double>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += fmt_full(v[i]);
  }
  return out;
}

ceig::PiezoTensor load_input(const CommonOpts& opts) {
  if (!opts.dataset_key.empty()) return ceig::dataset_get(opts.dataset_key).tensor;
  return ceig::load_tensor_file(opts.input_path);
}

std::optional<ceig::PublishedValues> published_for(const CommonOpts& opts) {
  if (opts.dataset_key.empty()) return std::nullopt;
  return ceig::dataset_get(opts.dataset_key).published;
}

ceig::EnumerationMode resolve_mode(const CommonOpts& opts, int n) {
  if (opts.subset_policy == "full") return ceig::EnumerationMode::full;
  if (opts.subset_policy == "heuristic") return ceig::EnumerationMode::heuristic;
  return n <= opts.n_cap ? ceig::EnumerationMode::full : ceig::EnumerationMode::heuristic;
}

json to_json(const Record& r) {
  json j;
  j["name"] = r.name;
  j["n"] = r.n;
  j["rho"] = r.rho;
  j["rho_min"] = r.rho_min;
  j["argmin_subset"] = r.argmin_subset;
  j["enumeration_mode"] = r.enumeration_mode;
  j["lambda_star"] = r.lambda_star ? json(*r.lambda_star) : json(nullptr);
  j["x"] = r.x ? json(*r.x) : json(nullptr);
  j["y"] = r.y ? json(*r.y) : json(nullptr);
  j["residual_x"] = r.residual_x ? json(*r.residual_x) : json(nullptr);
  j["residual_y"] = r.residual_y ? json(*r.residual_y) : json(nullptr);
  j["containment_ok"] = r.containment_ok ? json(*r.containment_ok) : json(nullptr);
  if (r.published) {
    j["published"] = {{"rho", r.published->rho},
                      {"rho_min", r.published->rho_min},
                      {"lambda_star", r.published->lambda_star}};
  } else {
    j["published"] = nullptr;
  }
  return j;
}

const char* kCsvHeader =
    "name,n,rho,rho_min,argmin_subset,enumeration_mode,lambda_star,x,y,"
    "residual_x,residual_y,containment_ok,published_rho,published_rho_min,"
    "published_lambda_star,match_rho,match_rho_min,match_lambda_star";

std::string csv_row(const Record& r, const std::optional<std::array<bool, 3>>& match = {}) {
  std::string out;
  out += r.name + "," + std::to_string(r.n) + "," + fmt_full(r.rho) + "," + fmt_full(r.rho_min);
  out += "," + join(r.argmin_subset, ";");
  out += "," + r.enumeration_mode;
  out += ",";
  if (r.lambda_star) out += fmt_full(*r.lambda_star);
  out += ",";
  if (r.x) out += join_full(*r.x, ";");
  out += ",";
  if (r.y) out += join_full(*r.y, ";");
  out += ",";
  if (r.residual_x) out += fmt_full(*r.residual_x);
  out += ",";
  if (r.residual_y) out += fmt_full(*r.residual_y);
  out += ",";
  if (r.containment_ok) out += *r.containment_ok ? "true" : "false";
  if (r.published) {
    out += "," + fmt_full(r.published->rho) + "," + fmt_full(r.published->rho_min) + "," +
           fmt_full(r.published->lambda_star);
  } else {
    out += ",,,";
  }
  for (int i = 0; i < 3; ++i) {
    out += ",";
    if (match) out += (*match)[i] ? "true" : "false";
  }
  return out;
}

void print_text(const Record& r, std::ostream& os) {
  os << "tensor: " << r.name << " (n = " << r.n << ")\n";
  os << "  rho              " << fmt_full(r.rho) << "\n";
  os << "  rho_min          " << fmt_full(r.rho_min) << "\n";
  os << "  argmin subset    {" << join(r.argmin_subset, ",") << "}\n";
  os << "  interval         [" << fmt_full(-r.rho_min) << ", " << fmt_full(r.rho_min) << "]\n";
  os << "  enumeration      " << r.enumeration_mode << "\n";
  if (r.lambda_star) {
    os << "  lambda_star      " << fmt_full(*r.lambda_star) << "\n";
    os << "  x                (" << join_full(*r.x, ", ") << ")\n";
    os << "  y                (" << join_full(*r.y, ", ") << ")\n";
    os << "  residual_x       " << fmt_full(*r.residual_x) << "\n";
    os << "  residual_y       " << fmt_full(*r.residual_y) << "\n";
  }
  if (r.published) {
    os << "  published        rho " << fmt4(r.published->rho) << ", rho_min "
       << fmt4(r.published->rho_min) << ", lambda_star " << fmt4(r.published->lambda_star)
       << "\n";
  }
  if (r.containment_ok) {
    os << "  containment      " << (*r.containment_ok ? "pass" : "FAIL") << "\n";
  }
}

Record bounds_record(const ceig::PiezoTensor& A, const ceig::BoundsReport& br,
                     std::optional<ceig::PublishedValues> pub) {
  Record r;
  r.name = A.name().empty() ? "(unnamed)" : A.name();
  r.n = A.dim();
  r.rho = br.rho;
  r.rho_min = br.rho_min;
  r.argmin_subset = ceig::subset_indices(br.argmin_subset, A.dim());
  r.enumeration_mode =
      br.enumeration_mode == ceig::EnumerationMode::full ? "full" : "heuristic";
  r.published = pub;
  return r;
}

void attach_solve(Record& r, const ceig::SolveReport& sr) {
  r.lambda_star = sr.best.lambda;
  r.x = sr.best.x;
  r.y = sr.best.y;
  r.residual_x = sr.best.residual_x;
  r.residual_y = sr.best.residual_y;
}

void emit_single(const Record& r, const CommonOpts& opts,
                 const std::vector<double>* stationary = nullptr) {
  if (opts.format == "json") {
    json j = to_json(r);
    if (stationary) j["stationary_values"] = *stationary;
    std::cout << j.dump(2) << "\n";
  } else if (opts.format == "csv") {
    std::cout << kCsvHeader << "\n" << csv_row(r) << "\n";
  } else {
    print_text(r, std::cout);
    if (stationary) {
      std::cout << "  stationary       (" << join_full(*stationary, ", ") << ")\n";
    }
  }
}

int run_bounds(const CommonOpts& opts) {
  const ceig::PiezoTensor A = load_input(opts);
  const ceig::BoundsReport br = ceig::rho_min(A, resolve_mode(opts, A.dim()), opts.n_cap);
  emit_single(bounds_record(A, br, published_for(opts)), opts);
  return 0;
}

int run_solve(const CommonOpts& opts, const SolverOpts& sopts) {
  const ceig::PiezoTensor A = load_input(opts);
  const ceig::BoundsReport br = ceig::rho_min(A, resolve_mode(opts, A.dim()), opts.n_cap);
  const ceig::SolveReport sr = ceig::solve_largest(A, sopts.to_config());
  Record r = bounds_record(A, br, published_for(opts));
  attach_solve(r, sr);
  emit_single(r, opts, &sr.stationary_values);
  return 0;
}

int run_verify(const CommonOpts& opts, const SolverOpts& sopts) {
  const ceig::PiezoTensor A = load_input(opts);
  const ceig::VerificationRecord vr =
      ceig::verify_containment(A, sopts.to_config(), resolve_mode(opts, A.dim()), opts.n_cap);
  Record r = bounds_record(A, vr.bounds, published_for(opts));
  attach_solve(r, vr.solve);
  r.containment_ok = vr.pass;
  if (opts.format == "text") {
    print_text(r, std::cout);
    std::cout << "  lambda* <= rho_min           "
              << (vr.lambda_within_rho_min ? "pass" : "FAIL") << "\n";
    std::cout << "  rho_min <= rho               "
              << (vr.rho_min_within_rho ? "pass" : "FAIL") << "\n";
    std::cout << "  stationary values in range   "
              << (vr.stationary_within_interval ? "pass" : "FAIL") << "\n";
    std::cout << "verdict: " << (vr.pass ? "pass" : "FAIL") << "\n";
  } else {
    emit_single(r, opts, &vr.solve.stationary_values);
  }
  return vr.pass ? 0 : 2;
}

int run_table1(const CommonOpts& opts, const SolverOpts& sopts) {
  const auto tensors = ceig::dataset_list();
  std::vector<Record> recs;
  std::vector<std::array<bool, 3>> match;
  for (const ceig::NamedTensor& nt : tensors) {
    const ceig::BoundsReport br = ceig::rho_min(nt.tensor);
    const ceig::SolveReport sr = ceig::solve_largest(nt.tensor, sopts.to_config());
    Record r = bounds_record(nt.tensor, br, nt.published);
    attach_solve(r, sr);
    recs.push_back(std::move(r));
    match.push_back({std::abs(br.rho - nt.published.rho) <= kRhoMatchTol,
                     std::abs(br.rho_min - nt.published.rho_min) <= kRhoMatchTol,
                     std::abs(sr.best.lambda - nt.published.lambda_star) <= kLambdaMatchTol});
  }

  if (opts.format == "json") {
    json arr = json::array();
    for (std::size_t i = 0; i < recs.size(); ++i) {
      json j = to_json(recs[i]);
      j["match"] = {{"rho", match[i][0]}, {"rho_min", match[i][1]}, {"lambda_star", match[i][2]}};
      arr.push_back(std::move(j));
    }
    std::cout << arr.dump(2) << "\n";
  } else if (opts.format == "csv") {
    std::cout << kCsvHeader << "\n";
    for (std::size_t i = 0; i < recs.size(); ++i) {
      std::cout << csv_row(recs[i], match[i]) << "\n";
    }
  } else {
    const int label_w = 22, col_w = 10;
    auto row = [&](const std::string& label, auto cell) {
      std::printf("%-*s", label_w, label.c_str());
      for (std::size_t i = 0; i < recs.size(); ++i) std::printf("%*s", col_w, cell(i).c_str());
      std::printf("\n");
    };
    row("", [&](std::size_t i) { return recs[i].name; });
    row("rho", [&](std::size_t i) { return fmt4(recs[i].rho); });
    row("rho (published)", [&](std::size_t i) { return fmt4(recs[i].published->rho); });
    row("rho match", [&](std::size_t i) { return std::string(match[i][0] ? "yes" : "NO"); });
    row("rho_min", [&](std::size_t i) { return fmt4(recs[i].rho_min); });
    row("rho_min (published)",
        [&](std::size_t i) { return fmt4(recs[i].published->rho_min); });
    row("rho_min match", [&](std::size_t i) { return std::string(match[i][1] ? "yes" : "NO"); });
    row("lambda_star", [&](std::size_t i) { return fmt4(*recs[i].lambda_star); });
    row("lambda_star (published)",
        [&](std::size_t i) { return fmt4(recs[i].published->lambda_star); });
    row("lambda_star match",
        [&](std::size_t i) { return std::string(match[i][2] ? "yes" : "NO"); });
    int mismatches = 0;
    for (const auto& m : match) mismatches += (!m[0]) + (!m[1]) + (!m[2]);
    std::printf("published-value mismatches: %d\n", mismatches);
  }
  return 0;
}

int run_dataset(const CommonOpts& opts, const std::string& export_dir) {
  const auto tensors = ceig::dataset_list();
  if (!export_dir.empty()) {
    std::filesystem::create_directories(export_dir);
    for (const ceig::NamedTensor& nt : tensors) {
      const auto path = std::filesystem::path(export_dir) / (nt.key + ".pzt");
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::invalid_argument("cannot write " + path.string());
      out << ceig::write_tensor_file(nt.tensor);
    }
  }
  if (opts.format == "json") {
    json arr = json::array();
    for (const ceig::NamedTensor& nt : tensors) {
      arr.push_back({{"name", nt.key},
                     {"n", nt.tensor.dim()},
                     {"published",
                      {{"rho", nt.published.rho},
                       {"rho_min", nt.published.rho_min},
                       {"lambda_star", nt.published.lambda_star}}}});
    }
    std::cout << arr.dump(2) << "\n";
  } else if (opts.format == "csv") {
    std::cout << "name,n,published_rho,published_rho_min,published_lambda_star\n";
    for (const ceig::NamedTensor& nt : tensors) {
      std::cout << nt.key << "," << nt.tensor.dim() << "," << fmt_full(nt.published.rho) << ","
                << fmt_full(nt.published.rho_min) << "," << fmt_full(nt.published.lambda_star)
                << "\n";
    }
  } else {
    std::printf("%-12s %3s %10s %10s %12s\n", "key", "n", "rho", "rho_min", "lambda_star");
    for (const ceig::NamedTensor& nt : tensors) {
      std::printf("%-12s %3d %10s %10s %12s\n", nt.key.c_str(), nt.tensor.dim(),
                  fmt4(nt.published.rho).c_str(), fmt4(nt.published.rho_min).c_str(),
                  fmt4(nt.published.lambda_star).c_str());
    }
  }
  return 0;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_input) {
  if (needs_input) {
    auto* in = cmd->add_option("input", opts.input_path, "path to a .pzt tensor file");
    auto* ds = cmd->add_option("--dataset", opts.dataset_key, "bundled tensor key");
    in->excludes(ds);
    ds->excludes(in);
  }
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--subset-policy", opts.subset_policy,
                  "subset enumeration: full, heuristic, or auto (full when n <= n-cap)")
      ->check(CLI::IsMember({"auto", "full", "heuristic"}))
      ->capture_default_str();
  cmd->add_option("--n-cap", opts.n_cap, "max dimension for full enumeration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_solver(CLI::App* cmd, SolverOpts& opts) {
  cmd->add_option("--starts", opts.starts, "random starts on top of coordinate starts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "random-start seed")->capture_default_str();
  cmd->add_option("--tol", opts.tol, "relative objective tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--residual-tol", opts.residual_tol, "residual acceptance threshold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iters", opts.max_iters, "iteration cap per start")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C-eigenvalue inclusion intervals and solver for piezoelectric-type tensors"};
  app.require_subcommand(1);

  CommonOpts bounds_opts, solve_opts, verify_opts, table_opts, ds_opts;
  SolverOpts solve_solver, verify_solver, table_solver;
  std::string export_dir;

  auto* cmd_bounds = app.add_subcommand("bounds", "inclusion interval radii rho and rho_min");
  add_common(cmd_bounds, bounds_opts, true);

  auto* cmd_solve = app.add_subcommand("solve", "largest C-eigenvalue and eigenvectors");
  add_common(cmd_solve, solve_opts, true);
  add_solver(cmd_solve, solve_solver);

  auto* cmd_verify = app.add_subcommand("verify", "containment checks for one tensor");
  add_common(cmd_verify, verify_opts, true);
  add_solver(cmd_verify, verify_solver);

  auto* cmd_table = app.add_subcommand("table1", "computed vs published values, all tensors");
  add_common(cmd_table, table_opts, false);
  add_solver(cmd_table, table_solver);

  auto* cmd_dataset = app.add_subcommand("dataset", "list bundled tensors");
  add_common(cmd_dataset, ds_opts, false);
  cmd_dataset->add_option("--export", export_dir, "write each tensor as <dir>/<key>.pzt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(cmd_bounds)) {
      if (bounds_opts.input_path.empty() && bounds_opts.dataset_key.empty()) {
        throw std::invalid_argument("bounds: provide a tensor file or --dataset KEY");
      }
      return run_bounds(bounds_opts);
    }
    if (app.got_subcommand(cmd_solve)) {
      if (solve_opts.input_path.empty() && solve_opts.dataset_key.empty()) {
        throw std::invalid_argument("solve: provide a tensor file or --dataset KEY");
      }
      return run_solve(solve_opts, solve_solver);
    }
    if (app.got_subcommand(cmd_verify)) {
      if (verify_opts.input_path.empty() && verify_opts.dataset_key.empty()) {
        throw std::invalid_argument("verify: provide a tensor file or --dataset KEY");
      }
      return run_verify(verify_opts, verify_solver);
    }
    if (app.got_subcommand(cmd_table)) return run_table1(table_opts, table_solver);
    if (app.got_subcommand(cmd_dataset)) return run_dataset(ds_opts, export_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ceig::SolveError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
