// ncf: command-line front end. Exit status 0 = all checks pass, 1 = a check
// failed, 2 = usage or input error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ncf/verify.hpp"

namespace {

using namespace ncf;
using verify::RunReport;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

/// Input problem that maps to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 0;
  std::string out;
  double tol = -1.0;  // negative: command default
  std::string group_path;
  std::string fn_path;
};

std::size_t max_group_order() {
  const char* env = std::getenv("NCF_MAX_GROUP_ORDER");
  if (!env || !*env) return kDefaultMaxOrder;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0 || env[0] == '-') throw UsageError("NCF_MAX_GROUP_ORDER must be a positive integer");
  return static_cast<std::size_t>(v);
}

json read_json_file(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + what + " file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(what, std::string("malformed JSON: ") + e.what());
  }
}

void emit(const json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write '" + out + "'");
  f << text;
}

std::string summary_line(const RunReport& r) {
  std::size_t failed = 0, soft = 0;
  for (const auto& c : r.checks)
    if (!c.passed) ++(c.gating ? failed : soft);
  std::ostringstream os;
  os << r.command << ": " << (r.ok() ? "PASS" : "FAIL") << " (" << r.checks.size() << " checks, " << failed
     << " failed";
  if (soft) os << ", " << soft << " report-only outside tolerance";
  os << ")";
  return os.str();
}

/// Writes the report (plus an optional result payload) and returns the exit status.
int finish(RunReport& r, const Options& o, std::chrono::steady_clock::time_point start, json result = nullptr) {
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json doc = verify::to_json(r);
  if (!result.is_null()) doc["result"] = std::move(result);
  emit(doc, o.out);
  if (!o.out.empty()) std::cout << summary_line(r) << "\n";
  return r.ok() ? kExitOk : kExitCheckFailed;
}

/// Function input: --fn is required; --group, when given, must agree with
/// the group embedded in the function file.
OpValFn load_fn(const Options& o, std::string& digest_input) {
  if (o.fn_path.empty()) throw UsageError("--fn is required");
  const std::size_t cap = max_group_order();
  GroupPtr g;
  if (!o.group_path.empty()) {
    const json gj = read_json_file(o.group_path, "group");
    g = group_from_json(gj, cap);
    digest_input += gj.dump();
  }
  const json fj = read_json_file(o.fn_path, "fn");
  digest_input += fj.dump();
  return fn_from_json(fj, g, cap);
}

GroupPtr load_group(const Options& o, std::string& digest_input) {
  if (o.group_path.empty()) throw UsageError("--group is required");
  const json gj = read_json_file(o.group_path, "group");
  digest_input += gj.dump();
  return group_from_json(gj, max_group_order());
}

std::string command_line(const std::string& cmd, const Options& o, const std::string& extra = "") {
  std::string s = "ncf " + cmd + extra;
  if (o.tol >= 0.0) {
    std::ostringstream os;
    os << o.tol;
    s += " --tol " + os.str();
  }
  return s;
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& suite, const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  if (!verify::is_suite(suite)) throw UsageError("unknown suite '" + suite + "' (expected core, inversion, posdef, abelian, axb or all)");
  RunReport r;
  r.command = "ncf verify " + suite;
  r.seed = o.seed;
  r.inputs_digest = verify::fnv1a_hex(r.command + " --seed " + std::to_string(o.seed));
  Rng rng(o.seed);
  verify::run_suite(suite, rng, r);
  return finish(r, o, start);
}

int cmd_transform(const std::string& direction, const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  if (direction != "forward" && direction != "invert") throw UsageError("--direction must be forward or invert");
  std::string digest;
  const OpValFn a = load_fn(o, digest);
  const double tol = o.tol >= 0.0 ? o.tol : 1e-10;
  RunReport r;
  r.command = command_line("transform", o, " --direction " + direction);
  r.seed = o.seed;
  r.inputs_digest = verify::fnv1a_hex(r.command + digest);
  json result;
  if (direction == "forward") {
    const OpValFn ahat = fourier_transform(a);
    r.record("transform/weight_route_vs_coefficients", max_diff(ahat, fourier_transform_direct(a)), tol);
    result = fn_to_json(ahat);
  } else {
    // Input holds the coefficients a^(t); rebuild the operator and read it back.
    const Inversion inv = invert(a);
    const double scale = 1.0 + norm(a);
    r.record("invert/operator_vs_lambda", (inv.x.matrix() - left_regular(inv.a).matrix()).norm() / scale, tol);
    r.record("invert/roundtrip", max_diff(fourier_transform(inv.a), a) / scale, tol);
    result = {{"coefficients", fn_to_json(inv.a)}, {"operator", block_operator_to_json(inv.x)}};
  }
  return finish(r, o, start, std::move(result));
}

int cmd_dilate(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  std::string digest;
  const OpValFn f = load_fn(o, digest);
  const double rank_tol = o.tol >= 0.0 ? o.tol : 1e-10;
  RunReport r;
  r.command = command_line("dilate", o);
  r.seed = o.seed;
  r.inputs_digest = verify::fnv1a_hex(r.command + digest);
  const auto pd = is_positive_definite(f);
  r.record_bool("dilate/positive_definite", pd.pd);
  r.details["min_eig"] = pd.min_eig;
  if (!pd.pd) return finish(r, o, start);
  const Dilation d = naimark_dilate(f, rank_tol);
  const double scale = 1.0 + op_norm(f[0]);
  r.record("dilate/reconstruction", d.residuals.reconstruction / scale, 1e-8);
  r.record("dilate/unitarity", d.residuals.unitarity, 1e-10);
  r.record("dilate/homomorphism", d.residuals.homomorphism, 1e-10);
  r.record_bool("dilate/structure_report", pd_structure_report(f).passed());
  r.details["rank"] = d.dim;
  return finish(r, o, start, dilation_to_json(d));
}

int cmd_dft_crosscheck(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  std::string digest;
  const double tol = o.tol >= 0.0 ? o.tol : 1e-10;
  OpValFn a = [&] {
    if (!o.fn_path.empty()) return load_fn(o, digest);
    const GroupPtr g = load_group(o, digest);
    Rng rng(o.seed);
    return random_fn(g, 1, rng);
  }();
  RunReport r;
  r.command = command_line("dft-crosscheck", o, o.fn_path.empty() ? " --seed " + std::to_string(o.seed) : "");
  r.seed = o.seed;
  r.inputs_digest = verify::fnv1a_hex(r.command + digest);
  const auto dual = dual_group(a.group_ptr());
  const auto c = crosscheck_inversion(a);
  r.record("dft/forward_residual", c.forward_residual, tol);
  r.record("dft/inverse_residual", c.inverse_residual, tol);
  if (a.group().descriptor().kind == GroupKind::cyclic && a.k() == 1) {
    const auto oracle = verify::dft_compare(a);
    r.record("dft/classical_oracle", std::max(oracle.forward, oracle.inverse), tol);
  }
  json result = dual_group_to_json(dual);
  json big_a = json::array();
  for (const auto& m : gelfand_transform(dual, a)) big_a.push_back(matrix_to_json(m));
  result["gelfand_transform"] = std::move(big_a);
  return finish(r, o, start, std::move(result));
}

int cmd_axb_demo(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  r.command = "ncf axb-demo";
  r.seed = o.seed;
  r.inputs_digest = verify::fnv1a_hex(r.command);
  verify::check_axb(r);
  return finish(r, o, start);
}

GroupPtr builtin_group(const std::string& kind, int n, std::size_t cap) {
  GroupDescriptor d;
  if (kind == "cyclic") d = GroupDescriptor::cyclic(n);
  else if (kind == "dihedral") d = GroupDescriptor::dihedral(n);
  else if (kind == "symmetric") d = GroupDescriptor::symmetric(n);
  else if (kind == "quaternion8") d = GroupDescriptor::quaternion8();
  else if (kind == "heisenberg") d = GroupDescriptor::heisenberg(n);
  else throw UsageError("unknown --kind '" + kind + "'");
  return build_group(d, cap);
}

int cmd_gen(const std::string& what, const std::string& kind, int n, std::size_t k, const Options& o) {
  GroupPtr g;
  std::string unused;
  if (!o.group_path.empty()) g = load_group(o, unused);
  else if (!kind.empty()) g = builtin_group(kind, n, max_group_order());
  else throw UsageError("gen needs --group or --kind");
  if (k == 0) throw UsageError("--k must be positive");
  Rng rng(o.seed);
  json doc;
  if (what == "group") doc = group_to_json(*g);
  else if (what == "fn") doc = fn_to_json(random_fn(g, k, rng));
  else if (what == "hermitian") doc = fn_to_json(random_hermitian_fn(g, k, rng));
  else if (what == "pd") doc = fn_to_json(random_dilation_fn(g, k, rng));
  else throw UsageError("gen: expected group, fn, hermitian or pd");
  emit(doc, o.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncf: Fourier analysis on finite groups"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "Seed for the random generator");
    c->add_option("--out", o.out, "Write the JSON report here instead of stdout");
  };
  auto add_inputs = [&](CLI::App* c) {
    c->add_option("--group", o.group_path, "Group descriptor JSON");
    c->add_option("--fn", o.fn_path, "Function JSON");
    c->add_option("--tol", o.tol, "Tolerance");
  };

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite");
  verify_cmd->add_option("suite", suite, "core | inversion | posdef | abelian | axb | all")->required();
  add_common(verify_cmd);

  std::string direction = "forward";
  auto* transform_cmd = app.add_subcommand("transform", "Fourier transform or inversion of a function");
  transform_cmd->add_option("--direction", direction, "forward | invert");
  add_common(transform_cmd);
  add_inputs(transform_cmd);

  auto* invert_cmd = app.add_subcommand("invert", "Same as transform --direction invert");
  add_common(invert_cmd);
  add_inputs(invert_cmd);

  auto* dilate_cmd = app.add_subcommand("dilate", "Naimark dilation of a positive definite function");
  add_common(dilate_cmd);
  add_inputs(dilate_cmd);

  auto* dft_cmd = app.add_subcommand("dft-crosscheck", "Compare with the dual-group transform (Abelian groups)");
  add_common(dft_cmd);
  add_inputs(dft_cmd);

  auto* axb_cmd = app.add_subcommand("axb-demo", "Quadrature report for the ax+b group");
  add_common(axb_cmd);

  std::string gen_what, gen_kind;
  int gen_n = 0;
  std::size_t gen_k = 1;
  auto* gen_cmd = app.add_subcommand("gen", "Emit a group or a random function as JSON");
  gen_cmd->add_option("what", gen_what, "group | fn | hermitian | pd")->required();
  gen_cmd->add_option("--kind", gen_kind, "cyclic | dihedral | symmetric | quaternion8 | heisenberg");
  gen_cmd->add_option("--n", gen_n, "Size parameter (n, or p for heisenberg)");
  gen_cmd->add_option("--k", gen_k, "Coefficient dimension");
  gen_cmd->add_option("--group", o.group_path, "Group descriptor JSON");
  add_common(gen_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify_cmd) return cmd_verify(suite, o);
    if (*transform_cmd) return cmd_transform(direction, o);
    if (*invert_cmd) return cmd_transform("invert", o);
    if (*dilate_cmd) return cmd_dilate(o);
    if (*dft_cmd) return cmd_dft_crosscheck(o);
    if (*axb_cmd) return cmd_axb_demo(o);
    if (*gen_cmd) return cmd_gen(gen_what, gen_kind, gen_n, gen_k, o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: invalid input at '" << e.key() << "': " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: group table fails the " << e.axiom() << " axiom: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotAbelianError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ShapeError& e) {
    std::cerr << "error: dimension mismatch: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeError& e) {
    std::cerr << "error: " << e.what() << " (raise NCF_MAX_GROUP_ORDER to allow larger groups)\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DilationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
