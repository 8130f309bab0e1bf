#include "simcheck/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "simcheck/attack.hpp"
#include "simcheck/error.hpp"
#include "simcheck/lp.hpp"
#include "simcheck/version.hpp"

namespace simcheck::cli {

using nlohmann::json;

namespace {

std::vector<std::string> read_labels(const json& doc, const char* key, std::size_t expected,
                                     char prefix) {
  std::vector<std::string> out;
  if (!doc.contains(key)) {
    for (std::size_t i = 0; i < expected; ++i) out.push_back(prefix + std::to_string(i + 1));
    return out;
  }
  const json& arr = doc.at(key);
  if (!arr.is_array() || arr.size() != expected) {
    throw Error(ErrorCode::ParseError, std::string("label array '") + key +
                                           "' must list " + std::to_string(expected) + " symbols");
  }
  for (const auto& v : arr) {
    if (v.is_string()) {
      out.push_back(v.get<std::string>());
    } else {
      out.push_back(v.dump());
    }
  }
  return out;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json matrix_to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json tolerances_json(const CheckOptions& opts) {
  json t;
  t["pmf"] = kPmfTolerance;
  if (opts.tol_rank) {
    t["rank"] = *opts.tol_rank;
  } else {
    t["rank"] = "max(m,n)*eps";
  }
  t["verdict"] = opts.tol_verdict;
  t["lp"] = lp::kFeasibilityTol;
  return t;
}

Direction parse_direction(const std::string& s) {
  if (s == "y") return Direction::YFixedZToX;
  if (s == "x") return Direction::XFixedZToY;
  throw Error(ErrorCode::InvalidArgument, "direction must be 'y' or 'x', got '" + s + "'");
}

std::string format_value(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

struct CommonFlags {
  std::string direction = "y";
  bool full_lp = false;
  std::optional<double> tol_rank;
  double tol_verdict = kVerdictTol;
  std::optional<std::uint64_t> seed;
  bool early_stop = false;

  CheckOptions options() const {
    CheckOptions o;
    o.tol_rank = tol_rank;
    o.tol_verdict = tol_verdict;
    o.path = full_lp ? EvalPath::Full : EvalPath::Auto;
    o.early_stop = early_stop;
    return o;
  }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--direction", f.direction, "y: Sim_Y(Z->X) (default), x: Sim_X(Z->Y)")
      ->check(CLI::IsMember({"y", "x"}));
  cmd->add_flag("--full-lp", f.full_lp, "always solve the full-size Farkas LP");
  cmd->add_option("--tol-rank", f.tol_rank, "relative singular value cutoff");
  cmd->add_option("--tol-verdict", f.tol_verdict, "h* sign threshold");
  cmd->add_option("--seed", f.seed, "seed for randomized diagnostics");
  cmd->add_flag("--early-stop", f.early_stop, "stop the LP at the first negative objective");
}

int cmd_check(const std::string& input, const CommonFlags& flags, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const JointPMF pmf = load_pmf(input);
  const Direction dir = parse_direction(flags.direction);
  const CheckOptions opts = flags.options();
  const Verdict v = check_simulatability(pmf, dir, opts);
  json report = verdict_to_json(v, dir, opts);
  report["input"] = input;
  report["timings"] = {{"total_ms", elapsed_ms(start)}};
  if (flags.seed) report["seed"] = *flags.seed;
  out << report.dump(2) << "\n";
  return v.holds ? kHolds : kDoesNotHold;
}

int cmd_attack(const std::string& input, const CommonFlags& flags, const std::string& cost_spec,
               const std::string& out_path, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const JointPMF pmf = load_pmf(input);
  validate_pmf(pmf);
  const Direction dir = parse_direction(flags.direction);
  const JointPMF oriented = dir == Direction::XFixedZToY ? swap_xy(pmf) : pmf;
  const LinearSystem sys = build_system(marginal_yz(oriented), marginal_yx(oriented));
  AttackRequest req{sys, cost_spec.empty() ? Vector::Ones(sys.n) : parse_cost(cost_spec)};

  json report;
  report["version"] = kVersion;
  report["direction"] = to_string(dir);
  report["m"] = sys.m;
  report["n"] = sys.n;
  report["cost"] = vector_to_json(req.cost_e);
  try {
    const AttackResult res = find_attack_channel(req);
    json channel;
    channel["z"] = oriented.labels().z;
    channel["x"] = oriented.labels().x;
    channel["channel"] = matrix_to_json(res.channel.probs());
    channel["objective"] = res.objective;
    report["status"] = "ok";
    report["channel"] = channel["channel"];
    report["objective"] = res.objective;
    report["valid"] = validate_channel(sys.a, sys.c, res.channel, lp::kFeasibilityTol);
    report["timings"] = {{"total_ms", elapsed_ms(start)}};
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + out_path);
      f << channel.dump(2) << "\n";
      report["output"] = out_path;
    }
    out << report.dump(2) << "\n";
    return kHolds;
  } catch (const NotSimulatable& e) {
    const lp::Problem prob{req.cost_e, sys.a_big, sys.c_vec};
    lp::Outcome o;
    o.status = lp::Status::Infeasible;
    o.certificate = e.certificate();
    report["status"] = "not_simulatable";
    report["farkas_certificate"] = vector_to_json(e.certificate());
    report["certificate_verified"] = lp::check_certificate(prob, o);
    report["timings"] = {{"total_ms", elapsed_ms(start)}};
    out << report.dump(2) << "\n";
    return kDoesNotHold;
  }
}

int cmd_sweep(const std::string& template_path, const CommonFlags& flags,
              const std::string& alpha_spec, const std::string& gamma_spec, std::ostream& out) {
  std::ifstream f(template_path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open " + template_path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  SweepTemplate tmpl = parse_sweep_template(doc);
  if (!doc.contains("direction")) tmpl.direction = parse_direction(flags.direction);
  const auto rows =
      run_sweep(tmpl, parse_values(alpha_spec), parse_values(gamma_spec), flags.options());
  out << "alpha,gamma,holds\n";
  for (const auto& r : rows) {
    out << format_value(r.alpha) << "," << format_value(r.gamma) << ","
        << (r.holds ? "true" : "false") << "\n";
  }
  return kHolds;
}

}  // namespace

JointPMF parse_pmf(const json& doc) {
  if (!doc.is_object() || !doc.contains("p")) {
    throw Error(ErrorCode::ParseError, "PMF document needs a \"p\" table");
  }
  const json& p = doc.at("p");
  if (!p.is_array() || p.empty() || !p[0].is_array() || p[0].empty() || !p[0][0].is_array() ||
      p[0][0].empty()) {
    throw Error(ErrorCode::ParseError, "\"p\" must be a nonempty [x][y][z] nested array");
  }
  const Alphabets dims{p.size(), p[0].size(), p[0][0].size()};
  std::vector<Rational> exact;
  std::vector<double> probs;
  bool all_strings = true;
  for (std::size_t x = 0; x < dims.x; ++x) {
    if (!p[x].is_array() || p[x].size() != dims.y) {
      throw Error(ErrorCode::ParseError, "\"p\" is not rectangular in y");
    }
    for (std::size_t y = 0; y < dims.y; ++y) {
      const json& row = p[x][y];
      if (!row.is_array() || row.size() != dims.z) {
        throw Error(ErrorCode::ParseError, "\"p\" is not rectangular in z");
      }
      for (const auto& v : row) {
        if (v.is_string()) {
          const Rational r = parse_rational(v.get<std::string>());
          exact.push_back(r);
          probs.push_back(to_double(r));
        } else if (v.is_number()) {
          all_strings = false;
          probs.push_back(v.get<double>());
        } else {
          throw Error(ErrorCode::ParseError, "probability entries must be numbers or strings");
        }
      }
    }
  }
  JointPMF::Labels labels{read_labels(doc, "x", dims.x, 'x'), read_labels(doc, "y", dims.y, 'y'),
                          read_labels(doc, "z", dims.z, 'z')};
  if (all_strings) return JointPMF(dims, std::move(exact), std::move(labels));
  return JointPMF(dims, std::move(probs), std::move(labels));
}

JointPMF load_pmf(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return parse_pmf(doc);
}

json pmf_to_json(const JointPMF& p) {
  const auto& d = p.dims();
  json doc;
  doc["x"] = p.labels().x;
  doc["y"] = p.labels().y;
  doc["z"] = p.labels().z;
  json table = json::array();
  for (std::size_t x = 0; x < d.x; ++x) {
    json plane = json::array();
    for (std::size_t y = 0; y < d.y; ++y) {
      json row = json::array();
      for (std::size_t z = 0; z < d.z; ++z) {
        if (p.exact()) {
          row.push_back((*p.exact())[p.index(x, y, z)].str());
        } else {
          row.push_back(p.at(x, y, z));
        }
      }
      plane.push_back(std::move(row));
    }
    table.push_back(std::move(plane));
  }
  doc["p"] = std::move(table);
  return doc;
}

json verdict_to_json(const Verdict& v, Direction direction, const CheckOptions& opts) {
  json r;
  r["version"] = kVersion;
  r["direction"] = to_string(direction);
  r["holds"] = v.holds;
  r["reason"] = to_string(v.reason);
  r["rank_a"] = v.rank_a;
  r["rank_aug"] = v.rank_aug;
  r["m"] = v.m;
  r["n"] = v.n;
  if (v.reason == VerdictReason::RankMismatch) {
    r["h_star"] = nullptr;
    r["h_star_sign"] = nullptr;
  } else {
    r["h_star"] = *v.h_star;
    r["h_star_sign"] = v.reason == VerdictReason::HStarZero ? "zero" : "negative";
    r["lp_objective"] = v.trace.lp_objective;
  }
  r["reduction_used"] = v.trace.reduction_used;
  r["null_dim"] = v.trace.null_dim;
  r["g_inverse"] = v.trace.g_inverse;
  r["solver_iterations"] = v.trace.solver_iterations;
  if (v.witness.size() > 0) r["witness"] = vector_to_json(v.witness);
  r["tolerances"] = tolerances_json(opts);
  return r;
}

std::vector<double> parse_values(std::string_view spec) {
  const std::string s(spec);
  auto number = [&](const std::string& tok) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "not a number: '" + tok + "'");
    }
  };
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) throw Error(ErrorCode::ParseError, "range must be start:stop:step");
    const double start = number(parts[0]);
    const double stop = number(parts[1]);
    const double step = number(parts[2]);
    if (!(step > 0.0) || stop < start) throw Error(ErrorCode::ParseError, "bad range '" + s + "'");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long k = 0; k < count; ++k) {
      // Snap to 12 significant decimals so 0.01 * 80 reads as 0.8.
      const double v = start + static_cast<double>(k) * step;
      out.push_back(std::stod(format_value(v)));
    }
    return out;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(number(tok));
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty value list");
  return out;
}

Vector parse_cost(std::string_view spec) {
  const std::vector<double> vals = parse_values(spec);
  Vector e(static_cast<Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!(vals[i] > 0.0) || !std::isfinite(vals[i])) {
      throw Error(ErrorCode::InvalidCost, "cost entries must be positive");
    }
    e(static_cast<Index>(i)) = vals[i];
  }
  return e;
}

SweepTemplate parse_sweep_template(const json& doc) {
  if (!doc.is_object() || !doc.contains("construction") || !doc["construction"].is_string()) {
    throw Error(ErrorCode::ParseError, "sweep template needs a \"construction\" string");
  }
  SweepTemplate t;
  t.construction = doc["construction"].get<std::string>();
  if (t.construction != "binary_symmetric_erasure") {
    throw Error(ErrorCode::ParseError, "unknown construction '" + t.construction + "'");
  }
  if (doc.contains("direction")) {
    if (!doc["direction"].is_string()) throw Error(ErrorCode::ParseError, "direction");
    t.direction = parse_direction(doc["direction"].get<std::string>());
  }
  return t;
}

std::vector<SweepRow> run_sweep(const SweepTemplate& tmpl, const std::vector<double>& alphas,
                                const std::vector<double>& gammas, const CheckOptions& opts) {
  for (double v : alphas) {
    if (!(v > 0.0 && v < 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha outside (0, 1)");
  }
  for (double v : gammas) {
    if (!(v > 0.0 && v < 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma outside (0, 1)");
  }
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size() * gammas.size());
  for (double a : alphas) {
    for (double g : gammas) {
      const Verdict v = check_simulatability(binary_symmetric_erasure(a, g), tmpl.direction, opts);
      rows.push_back({a, g, v.holds});
    }
  }
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("simcheck");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide the simulatability condition for a joint PMF and synthesize attack channels"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonFlags check_flags;
  std::string check_input;
  auto* check = app.add_subcommand("check", "decide Sim_Y(Z->X) or Sim_X(Z->Y)");
  check->add_option("input", check_input, "PMF JSON file")->required();
  add_common(check, check_flags);

  CommonFlags attack_flags;
  std::string attack_input;
  std::string cost_spec;
  std::string out_path;
  auto* attack = app.add_subcommand("attack", "synthesize a simulatability channel");
  attack->add_option("input", attack_input, "PMF JSON file")->required();
  attack->add_option("--cost", cost_spec, "positive cost vector e, comma separated, length n");
  attack->add_option("--out", out_path, "also write the channel JSON here");
  add_common(attack, attack_flags);

  CommonFlags sweep_flags;
  std::string template_path;
  std::string alpha_spec;
  std::string gamma_spec;
  auto* sweep = app.add_subcommand("sweep", "verdict grid over (alpha, gamma) as CSV");
  sweep->add_option("template", template_path, "sweep template JSON")->required();
  sweep->add_option("--alpha", alpha_spec, "list a,b,c or range start:stop:step")->required();
  sweep->add_option("--gamma", gamma_spec, "list a,b,c or range start:stop:step")->required();
  add_common(sweep, sweep_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }

  try {
    if (*check) return cmd_check(check_input, check_flags, out);
    if (*attack) return cmd_attack(attack_input, attack_flags, cost_spec, out_path, out);
    if (*sweep) return cmd_sweep(template_path, sweep_flags, alpha_spec, gamma_spec, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace simcheck::cli
