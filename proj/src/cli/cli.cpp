#include "cottonlab/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "cottonlab/error.hpp"
#include "cottonlab/frames/frames.hpp"
#include "cottonlab/geometry/curvature.hpp"
#include "cottonlab/geometry/verify.hpp"
#include "cottonlab/lcf/lcf.hpp"
#include "cottonlab/liegroup/liegroup.hpp"
#include "cottonlab/quad/quad.hpp"

namespace cottonlab::cli {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& builtin_specs();
}

namespace {

using json = nlohmann::ordered_json;
using tensor::Mat3;
using tensor::SymMat3;
using tensor::Tensor;
using tensor::Vec3;

constexpr std::array<const char*, 6> kMetricKeys = {"g11", "g12", "g13", "g22", "g23", "g33"};

jets::Expr parse_expr(const std::string& text, const std::string& key) {
  try {
    return jets::parse(text);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.offset(), e.reason(), key);
  } catch (const UnknownSymbol& e) {
    throw UnknownSymbol(e.offset(), e.symbol(), key);
  }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(key, "missing key in " + path);
  return *it;
}

std::string require_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw SchemaError(key, "expected a string");
  return v.get<std::string>();
}

Vec3 require_vec3(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3) throw SchemaError(key, "expected an array of 3 numbers");
  Vec3 out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_number()) throw SchemaError(key, "expected an array of 3 numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return buf.str();
}

// JSON helpers.
json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

template <class M>
json mat_json(const M& m) {
  json out = json::array();
  for (int i = 0; i < 3; ++i) out.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
  return out;
}

json tensor3_json(const Tensor<double, 3>& t) {
  json out = json::array();
  for (int i = 0; i < 3; ++i) {
    json a = json::array();
    for (int j = 0; j < 3; ++j) a.push_back(json::array({t(i, j, 0), t(i, j, 1), t(i, j, 2)}));
    out.push_back(a);
  }
  return out;
}

json tensor4_json(const Tensor<double, 4>& t) {
  json out = json::array();
  for (int i = 0; i < 3; ++i) {
    json a = json::array();
    for (int j = 0; j < 3; ++j) {
      json b = json::array();
      for (int k = 0; k < 3; ++k) b.push_back(json::array({t(i, j, k, 0), t(i, j, k, 1), t(i, j, k, 2)}));
      a.push_back(b);
    }
    out.push_back(a);
  }
  return out;
}

// NaN or infinity anywhere in a result is a numeric error.
void check_finite(const json& j, const std::string& path) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    throw DomainError("non-finite value in output at " + path);
  }
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) check_finite(j[i], path + "[" + std::to_string(i) + "]");
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) check_finite(v, path + "." + k);
  }
}

void emit(std::ostream& out, const json& j) {
  check_finite(j, "$");
  out << j.dump(2) << "\n";
}

std::vector<Vec3> sample_points(const geometry::Box& box, int n) {
  std::mt19937_64 rng(0);
  std::vector<Vec3> out(static_cast<std::size_t>(n));
  for (auto& p : out) {
    for (std::size_t a = 0; a < 3; ++a) {
      std::uniform_real_distribution<double> u(box.min[a], box.max[a]);
      p[a] = u(rng);
    }
  }
  return out;
}

Vec3 to_vec3(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

// --- curvature -----------------------------------------------------------

int cmd_curvature(const std::string& spec_path, const Vec3& p, std::ostream& out) {
  const SpecFile spec = load_spec(spec_path);
  if (!spec.metric.domain.contains(p)) {
    throw InvalidArgument("point " + format_point(p) + " lies outside the spec domain");
  }
  const auto c = geometry::curvature_packet(spec.metric, p);
  json j;
  j["spec"] = spec.name;
  j["point"] = vec_json(p);
  j["orientation"] = spec.metric.orientation;
  j["metric"] = mat_json(c.g);
  j["christoffel"] = tensor3_json(c.gamma);
  j["riemann"] = tensor4_json(c.riemann);
  j["ricci"] = mat_json(c.ricci);
  j["scalar"] = c.scal;
  j["schouten"] = mat_json(c.schouten);
  j["cotton_form"] = tensor3_json(c.cotton_form);
  j["cotton"] = mat_json(c.cotton_tensor);
  emit(out, j);
  return 0;
}

// --- cotton ---------------------------------------------------------------

int cmd_cotton(const std::string& spec_path, int samples, double tol, std::ostream& out) {
  const SpecFile spec = load_spec(spec_path);
  const auto r = lcf::check_cotton_zero(spec.metric, sampling_box(spec.metric.domain), samples, tol);
  json j;
  j["spec"] = spec.name;
  j["samples"] = samples;
  j["tol"] = tol;
  j["max_norm"] = r.max_norm;
  j["worst_point"] = vec_json(r.worst_point);
  j["pass"] = r.vanishes;
  emit(out, j);
  return r.vanishes ? 0 : 1;
}

// --- cs -------------------------------------------------------------------

struct GroupChoice {
  liegroup::LieAlgebraData algebra;
  quad::GroupChart chart;
};

GroupChoice choose_group(const std::string& key) {
  if (key == "so3") return {liegroup::catalog("so3"), quad::so3_euler_chart(1.0)};
  if (key == "s3") return {liegroup::catalog("su2"), quad::s3_hyperspherical_chart()};
  if (key.rfind("berger:", 0) == 0) {
    auto l = liegroup::catalog(key);
    const double t = l.ip(0, 0);
    if (!(t > 0.0)) throw InvalidArgument("Berger parameter must be positive");
    return {l, quad::so3_euler_chart(t)};
  }
  throw InvalidArgument("unknown group '" + key + "' (expected so3, s3 or berger:t=<real>)");
}

int cmd_cs(const std::string& group, const std::string& method, int order, std::ostream& out) {
  const GroupChoice g = choose_group(group);
  const double closed = liegroup::cs_invariant_group(g.algebra);
  json j;
  j["group"] = group;
  j["method"] = method;
  if (method == "closed") {
    j["value"] = closed;
  } else {
    const double value = quad::chern_simons_invariant(g.chart.metric, g.chart.frame, g.chart.domain, order);
    j["order"] = order;
    j["value"] = value;
    j["closed_form"] = closed;
    j["error"] = std::abs(value - closed);
  }
  emit(out, j);
  return 0;
}

// --- lcf ------------------------------------------------------------------

struct LcfArgs {
  std::string spec;
  std::vector<double> center;
  double radius = 0.5;
  int resolution = 33;
  std::vector<double> x0{0.0, 0.0, 0.0};
  std::string out;
  double tol = 1e-5;
};

int cmd_lcf(const LcfArgs& a, std::ostream& out) {
  const SpecFile spec = load_spec(a.spec);
  lcf::GridSpec grid;
  grid.center = to_vec3(a.center);
  grid.half_width = a.radius;
  grid.resolution = a.resolution;
  const auto field = lcf::solve(spec.metric, grid, to_vec3(a.x0));
  const auto& d = field.diagnostics;
  json diag;
  diag["cotton_norm"] = d.cotton_norm;
  diag["rk4_error_estimate"] = d.rk4_error_estimate;
  diag["a_defect"] = d.a_defect;
  diag["closedness_defect"] = d.closedness_defect;
  diag["path_consistency"] = d.path_consistency;
  diag["flatness_residual"] = d.flatness_residual;
  const bool pass = d.flatness_residual < a.tol;

  json g;
  g["spec"] = spec.name;
  g["box"] = {{"center", vec_json(grid.center)}, {"half_width", grid.half_width}};
  g["resolution"] = grid.resolution;
  g["x0"] = vec_json(to_vec3(a.x0));
  json xs = json::array();
  for (const auto& x : field.x) xs.push_back(vec_json(x));
  g["X"] = std::move(xs);
  g["f"] = field.f;
  g["diagnostics"] = diag;
  check_finite(g, "$");
  {
    std::ofstream file(a.out, std::ios::binary);
    if (!file) throw IoError("cannot write '" + a.out + "'");
    file << g.dump() << "\n";
    if (!file) throw IoError("cannot write '" + a.out + "'");
  }

  json s;
  s["spec"] = spec.name;
  s["out"] = a.out;
  s["resolution"] = grid.resolution;
  s["diagnostics"] = diag;
  s["tol"] = a.tol;
  s["pass"] = pass;
  emit(out, s);
  return pass ? 0 : 1;
}

// --- verify ---------------------------------------------------------------

constexpr int kVerifySamples = 20;

struct Check {
  std::string name;
  double tol = 0.0;
  double worst = 0.0;
  Vec3 where{};

  void add(double v, const Vec3& p) {
    if (v > worst || !std::isfinite(v)) {
      worst = v;
      where = p;
    }
  }
  json to_json() const {
    json j;
    j["name"] = name;
    j["max"] = worst;
    j["tol"] = tol;
    j["worst_point"] = vec_json(where);
    j["pass"] = worst < tol;
    return j;
  }
};

std::vector<json> suite_bianchi(const SpecFile& spec) {
  Check first{"bianchi_first", 1e-9};
  Check second{"bianchi_second", 1e-7};
  Check sym{"riemann_symmetries", 1e-9};
  Check recon{"schouten_reconstruction", 1e-7};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const Vec3& p : sample_points(sampling_box(spec.metric.domain), kVerifySamples)) {
    const auto c = geometry::curvature_jets(spec.metric, p);
    const auto packet = geometry::packet_from_jets(c, spec.metric.orientation);
    first.add(geometry::bianchi_first_defect(packet.riemann), p);
    second.add(geometry::bianchi_second_defect(c), p);
    sym.add(geometry::riemann_symmetry_defect(packet.riemann), p);
    const Vec3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, x{u(rng), u(rng), u(rng)};
    recon.add(geometry::schouten_reconstruction_error(packet, a, b, x), p);
  }
  return {first.to_json(), second.to_json(), sym.to_json(), recon.to_json()};
}

std::vector<json> suite_cotton(const SpecFile& spec) {
  Check sym{"cotton_symmetry", 1e-6};
  Check trace{"cotton_trace", 1e-6};
  Check div{"cotton_divergence", 1e-6};
  Check tr13{"cotton_form_trace", 1e-6};
  for (const Vec3& p : sample_points(sampling_box(spec.metric.domain), kVerifySamples)) {
    const auto packet = geometry::curvature_packet(spec.metric, p);
    sym.add(geometry::cotton_symmetry_defect(packet), p);
    trace.add(geometry::cotton_trace_defect(packet), p);
    tr13.add(geometry::tr13_defect(packet), p);
    div.add(geometry::cotton_divergence_defect(spec.metric, p), p);
  }
  return {sym.to_json(), trace.to_json(), div.to_json(), tr13.to_json()};
}

std::vector<json> suite_conformal(const SpecFile& spec) {
  std::vector<std::pair<std::string, jets::Expr>> factors;
  if (spec.conformal_factor) factors.emplace_back(jets::to_string(*spec.conformal_factor), *spec.conformal_factor);
  for (const char* f : {"0.3*x1", "0.2*sin(x1 + x2)", "0.1*x1*x2*x3"}) factors.emplace_back(f, jets::parse(f));
  std::vector<json> out;
  for (const auto& [text, f] : factors) {
    Check c{"conformal_invariance", 1e-7};
    for (const Vec3& p : sample_points(sampling_box(spec.metric.domain), kVerifySamples)) {
      c.add(geometry::conformal_cotton_defect(spec.metric, f, p), p);
    }
    json j = c.to_json();
    j["factor"] = text;
    out.push_back(j);
  }
  return out;
}

std::vector<json> suite_variational(const SpecFile& spec) {
  if (!spec.group || spec.group->rfind("berger:", 0) != 0) {
    throw SchemaError("group", "the variational suite needs \"group\": \"berger:t=<real>\"");
  }
  const auto l = liegroup::catalog(*spec.group);
  const double t = l.ip(0, 0);
  std::vector<json> out;
  if (spec.frame) {
    // The chart must carry the group's metric: its CS has to match.
    const auto frame = frames::FrameField::from_expressions(*spec.frame);
    const quad::Domain d{spec.metric.domain.min, spec.metric.domain.max, spec.periodic};
    const double chart = quad::chern_simons_invariant(spec.metric, frame, d, 16);
    const double closed = liegroup::cs_invariant_group(l);
    json j;
    j["name"] = "chart_cs_matches_group";
    j["chart_value"] = chart;
    j["closed_form"] = closed;
    j["max"] = std::abs(chart - closed);
    j["tol"] = 1e-6;
    j["pass"] = std::abs(chart - closed) < 1e-6;
    out.push_back(j);
  }
  const auto r = liegroup::berger_variational_check(t);
  json j;
  j["name"] = "variational_formula";
  j["t"] = r.t;
  j["step"] = r.step;
  j["finite_difference"] = r.finite_difference;
  j["cotton_pairing"] = r.cotton_pairing;
  j["stated_value"] = -r.cotton_pairing;
  j["max"] = r.relative_error;
  j["tol"] = 1e-4;
  j["relative_error_opposite_sign"] = r.relative_error_opposite_sign;
  j["pass"] = r.relative_error < 1e-4;
  out.push_back(j);
  return out;
}

int cmd_verify(const std::string& spec_path, const std::string& suite, std::ostream& out) {
  const SpecFile spec = load_spec(spec_path);
  json tests = json::array();
  auto append = [&](const std::string& name, const std::vector<json>& results) {
    for (json r : results) {
      r["suite"] = name;
      tests.push_back(std::move(r));
    }
  };
  const bool all = suite == "all";
  if (all || suite == "bianchi") append("bianchi", suite_bianchi(spec));
  if (all || suite == "cotton") append("cotton", suite_cotton(spec));
  if (all || suite == "conformal") append("conformal", suite_conformal(spec));
  // "all" includes the variational suite only for specs that name a group.
  if (suite == "variational" || (all && spec.group)) append("variational", suite_variational(spec));
  bool pass = true;
  for (const auto& t : tests) pass = pass && t["pass"].get<bool>();
  json j;
  j["spec"] = spec.name;
  j["suite"] = suite;
  j["tests"] = tests;
  j["pass"] = pass;
  emit(out, j);
  return pass ? 0 : 1;
}

}  // namespace

SpecFile parse_spec(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("json", source + ": " + e.what());
  }
  if (!doc.is_object()) throw SchemaError("json", source + ": top level must be an object");

  SpecFile spec;
  spec.name = require_string(require(doc, "name", source), "name");
  if (const auto it = doc.find("coords"); it != doc.end()) {
    if (*it != json::array({"x1", "x2", "x3"})) throw SchemaError("coords", "must be [\"x1\", \"x2\", \"x3\"]");
  }
  const json& metric = require(doc, "metric", source);
  if (!metric.is_object()) throw SchemaError("metric", "expected an object");
  std::array<jets::Expr, 6> g;
  for (std::size_t i = 0; i < 6; ++i) {
    const std::string key = kMetricKeys[i];
    g[i] = parse_expr(require_string(require(metric, key, "metric"), key), "metric." + key);
  }
  for (const auto& [k, v] : metric.items()) {
    if (std::find(kMetricKeys.begin(), kMetricKeys.end(), k) == kMetricKeys.end()) {
      throw SchemaError(k, "unexpected metric key (use g11, g12, g13, g22, g23, g33)");
    }
  }
  const json& domain = require(doc, "domain", source);
  geometry::Box box{require_vec3(require(domain, "min", "domain"), "min"),
                    require_vec3(require(domain, "max", "domain"), "max")};
  for (std::size_t a = 0; a < 3; ++a) {
    if (!(box.min[a] < box.max[a])) throw SchemaError("domain", "empty on axis x" + std::to_string(a + 1));
  }
  if (const auto it = domain.find("periodic"); it != domain.end()) {
    if (!it->is_array() || it->size() != 3) throw SchemaError("periodic", "expected an array of 3 booleans");
    for (std::size_t a = 0; a < 3; ++a) {
      if (!(*it)[a].is_boolean()) throw SchemaError("periodic", "expected an array of 3 booleans");
      spec.periodic[a] = (*it)[a].get<bool>();
    }
  }
  int orientation = 1;
  if (const auto it = doc.find("orientation"); it != doc.end()) {
    if (!it->is_number_integer() || (it->get<int>() != 1 && it->get<int>() != -1)) {
      throw SchemaError("orientation", "must be 1 or -1");
    }
    orientation = it->get<int>();
  }
  spec.metric.name = spec.name;
  spec.metric.g = g;
  spec.metric.domain = box;
  spec.metric.orientation = orientation;

  if (const auto it = doc.find("conformal_factor"); it != doc.end()) {
    spec.conformal_factor = parse_expr(require_string(*it, "conformal_factor"), "conformal_factor");
  }
  if (const auto it = doc.find("frame"); it != doc.end()) {
    if (!it->is_array() || it->size() != 9) throw SchemaError("frame", "expected 9 expression strings");
    std::array<jets::Expr, 9> f;
    for (std::size_t i = 0; i < 9; ++i) {
      const std::string key = "frame[" + std::to_string(i) + "]";
      f[i] = parse_expr(require_string((*it)[i], key), key);
    }
    spec.frame = f;
  }
  if (const auto it = doc.find("group"); it != doc.end()) {
    spec.group = require_string(*it, "group");
    try {
      liegroup::catalog(*spec.group);
    } catch (const InvalidArgument& e) {
      throw SchemaError("group", e.what());
    }
  }
  return spec;
}

geometry::Box sampling_box(const geometry::Box& domain) {
  geometry::Box b = domain;
  for (std::size_t a = 0; a < 3; ++a) {
    const double margin = 0.05 * (domain.max[a] - domain.min[a]);
    b.min[a] += margin;
    b.max[a] -= margin;
  }
  return b;
}

std::vector<std::string> builtin_spec_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::builtin_specs()) out.emplace_back(name);
  return out;
}

SpecFile load_spec(const std::string& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_regular_file(path, ec)) return parse_spec(read_file(path), path);
  if (path.find('/') == std::string::npos) {
    std::string name = path;
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json") name.resize(name.size() - 5);
    for (const auto& [key, text] : detail::builtin_specs()) {
      if (key == name) return parse_spec(std::string(text), "builtin:" + name);
    }
  }
  throw IoError("cannot open '" + path + "' (not a file or a built-in spec)");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cotton tensor and Chern-Simons invariants of Riemannian 3-manifolds", "cottonlab"};
  app.require_subcommand(1);

  std::string spec;
  std::vector<double> point;
  auto* curvature = app.add_subcommand("curvature", "Curvature packet at a point");
  curvature->add_option("--spec", spec, "Spec file or built-in name")->required();
  curvature->add_option("--point", point, "Chart point a,b,c")->required()->delimiter(',')->expected(3);

  int samples = 64;
  double tol = 1e-6;
  auto* cotton = app.add_subcommand("cotton", "Check that the Cotton tensor vanishes");
  cotton->add_option("--spec", spec, "Spec file or built-in name")->required();
  cotton->add_option("--samples", samples, "Number of sample points")->required()->check(CLI::PositiveNumber);
  cotton->add_option("--tol", tol, "Tolerance on the normalized norm")->check(CLI::NonNegativeNumber);

  std::string group;
  std::string method = "closed";
  int order = 32;
  auto* cs = app.add_subcommand("cs", "Chern-Simons invariant of a group");
  cs->add_option("--group", group, "so3, s3 or berger:t=<real>")->required();
  cs->add_option("--method", method, "closed or quadrature")->check(CLI::IsMember({"closed", "quadrature"}));
  cs->add_option("--order", order, "Quadrature nodes per axis")->check(CLI::Range(2, 512));

  LcfArgs lcf_args;
  auto* lcf_cmd = app.add_subcommand("lcf", "Solve for a flattening conformal factor");
  lcf_cmd->add_option("--spec", lcf_args.spec, "Spec file or built-in name")->required();
  lcf_cmd->add_option("--center", lcf_args.center, "Box center a,b,c")->required()->delimiter(',')->expected(3);
  lcf_cmd->add_option("--radius", lcf_args.radius, "Box half-width")->required()->check(CLI::PositiveNumber);
  lcf_cmd->add_option("--resolution", lcf_args.resolution, "Odd number of nodes per axis")->required();
  lcf_cmd->add_option("--x0", lcf_args.x0, "Initial value of X at the center a,b,c")->delimiter(',')->expected(3);
  lcf_cmd->add_option("--out", lcf_args.out, "Grid output JSON file")->required();
  lcf_cmd->add_option("--tol", lcf_args.tol, "Flatness residual tolerance")->check(CLI::NonNegativeNumber);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run identity checks on a spec");
  verify->add_option("--spec", spec, "Spec file or built-in name")->required();
  verify->add_option("--suite", suite, "all, bianchi, cotton, conformal or variational")
      ->check(CLI::IsMember({"all", "bianchi", "cotton", "conformal", "variational"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (curvature->parsed()) return cmd_curvature(spec, to_vec3(point), out);
    if (cotton->parsed()) return cmd_cotton(spec, samples, tol, out);
    if (cs->parsed()) return cmd_cs(group, method, order, out);
    if (lcf_cmd->parsed()) return cmd_lcf(lcf_args, out);
    if (verify->parsed()) return cmd_verify(spec, suite, out);
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::Input ? 2 : 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace cottonlab::cli
