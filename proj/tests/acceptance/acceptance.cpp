// One line per acceptance criterion: "[PASS] 7 conformal invariance: ..."
// Usage: acceptance [--criterion N]...  (all criteria when none given)

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cottonlab/error.hpp"
#include "cottonlab/frames/frames.hpp"
#include "cottonlab/geometry/curvature.hpp"
#include "cottonlab/geometry/verify.hpp"
#include "cottonlab/lcf/lcf.hpp"
#include "cottonlab/liegroup/liegroup.hpp"
#include "cottonlab/quad/quad.hpp"
#include "support/form_checks.hpp"
#include "support/metrics.hpp"

namespace {

using namespace cottonlab;
using tensor::Vec3;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. CS(SO(3)) = -1/2: closed form and Euler-angle quadrature.
Outcome cs_so3() {
  const double closed = liegroup::cs_invariant_group(liegroup::catalog("so3"));
  const auto chart = quad::so3_euler_chart();
  const auto t0 = std::chrono::steady_clock::now();
  const double q = quad::chern_simons_invariant(chart.metric, chart.frame, chart.domain, 32);
  const double dt = seconds_since(t0);
  const bool ok = std::abs(closed + 0.5) < 1e-12 && std::abs(q + 0.5) < 1e-6 && dt < 10.0;
  return {ok, fmt("closed %.15g, quadrature(32) %.15g, %.1f s", closed, q, dt)};
}

// 2. Density coefficients on SO(3), from the Lie algebra and from the chart.
Outcome cs_density() {
  const auto d = liegroup::cs_density_leftinv(liegroup::catalog("so3"));
  const auto chart = quad::so3_euler_chart();
  const Vec3 p = {0.7, 1.3, 2.1};
  const double vol = std::sqrt(geometry::metric_at(chart.metric, p).determinant());
  const double pointwise = frames::cs_three_form(chart.metric, chart.frame, p) / (chart.metric.orientation * vol);
  const bool ok = std::abs(d.wedge_term - 12) < 1e-12 && std::abs(d.cube_term + 6) < 1e-12 &&
                  std::abs(d.density - 8) < 1e-12 && std::abs(pointwise - 8) < 1e-12;
  return {ok, fmt("tr(w^dw) %.15g, tr(w^3) %.15g, cs %.15g, chart cs %.15g", d.wedge_term, d.cube_term,
                  d.density, pointwise)};
}

// 3. Volumes.
Outcome volumes() {
  const double s3 = quad::volume(quad::s3_embedding(), 32);
  const auto so3 = quad::so3_euler_chart();
  const double v = quad::volume(so3.metric, so3.domain, 32);
  const bool ok = std::abs(s3 - 2 * kPi * kPi) < 1e-8 && std::abs(v - kPi * kPi) < 1e-8;
  return {ok, fmt("vol S3 = %.15g (2 pi^2 = %.15g), vol SO(3) = %.15g (pi^2 = %.15g)", s3, 2 * kPi * kPi, v,
                  kPi * kPi)};
}

// 4. CS(S^3) is an integer.
Outcome cs_s3() {
  const auto c = quad::s3_hyperspherical_chart();
  const double cs = quad::chern_simons_invariant(c.metric, c.frame, c.domain, 24);
  const double frac = std::abs(cs - std::round(cs));
  return {frac < 1e-6, fmt("CS(S3) = %.15g, distance to Z %.3g", cs, frac)};
}

// 5. Maurer-Cartan cube: pointwise -48 and integral -48 pi^2.
Outcome maurer_cartan() {
  const double coefficient = liegroup::mc_cube_trace(liegroup::catalog("so3"));
  const auto chart = quad::so3_euler_chart();
  const auto rot = quad::euler_rotation();
  const Vec3 p = {0.4, 1.9, 5.0};
  const double vol = std::sqrt(geometry::metric_at(chart.metric, p).determinant());
  const double chart_coefficient = frames::winding_density(rot(p)) / (chart.metric.orientation * vol);
  const double integral = quad::integrate_3form([&](const Vec3& x) { return frames::winding_density(rot(x)); },
                                                chart.metric.orientation, chart.domain, 32);
  const double rel = std::abs(std::abs(integral) - 48 * kPi * kPi) / (48 * kPi * kPi);
  const bool ok = std::abs(coefficient + 48) < 1e-12 && std::abs(chart_coefficient + 48) < 1e-10 && rel < 1e-6;
  return {ok, fmt("coefficient %.15g (chart %.15g), integral %.15g = %.12g pi^2, rel err %.3g", coefficient,
                  chart_coefficient, integral, integral / (kPi * kPi), rel)};
}

// 6. Cotton symmetric, trace-free, divergence-free.
Outcome cotton_properties() {
  std::mt19937_64 rng(6);
  double sym = 0, tr = 0, div = 0;
  for (const auto& m : testkit::generic_metrics()) {
    for (int i = 0; i < 100; ++i) {
      const Vec3 p = testkit::random_point(rng);
      const auto packet = geometry::curvature_packet(m, p);
      sym = std::max(sym, geometry::cotton_symmetry_defect(packet));
      tr = std::max(tr, geometry::cotton_trace_defect(packet));
      div = std::max(div, geometry::cotton_divergence_defect(m, p));
    }
  }
  return {sym < 1e-6 && tr < 1e-6 && div < 1e-6,
          fmt("5 metrics x 100 points: symmetry %.3g, trace %.3g, divergence %.3g", sym, tr, div)};
}

// 7. Conformal invariance of the Cotton form.
Outcome conformal_invariance() {
  std::mt19937_64 rng(7);
  const auto metrics = testkit::generic_metrics();
  double worst = 0;
  for (int k = 0; k < 3; ++k) {
    for (const char* f : {"0.3*x1", "sin(x1) + 0.2*x2^2", "0.1*x1*x2*x3 - 0.2*cos(x3)"}) {
      const auto fe = jets::parse(f);
      for (int i = 0; i < 10; ++i) {
        worst = std::max(worst, geometry::conformal_cotton_defect(metrics[static_cast<std::size_t>(k)], fe,
                                                                  testkit::random_point(rng)));
      }
    }
  }
  return {worst < 1e-7, fmt("3 metrics x 3 factors x 10 points: max |C(e^2f g) - C(g)| %.3g", worst)};
}

// 8. Curvature from the Schouten tensor.
Outcome schouten_reconstruction() {
  std::mt19937_64 rng(8);
  const auto metrics = testkit::generic_metrics();
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const auto& m = metrics[static_cast<std::size_t>(i) % metrics.size()];
    const auto packet = geometry::curvature_packet(m, testkit::random_point(rng));
    worst = std::max(worst, geometry::schouten_reconstruction_error(packet, testkit::random_vector(rng),
                                                                     testkit::random_vector(rng),
                                                                     testkit::random_vector(rng)));
  }
  return {worst < 1e-7, fmt("50 random triples: max relative error %.3g", worst)};
}

// 9. Bianchi identities.
Outcome bianchi() {
  std::mt19937_64 rng(9);
  double first = 0, second = 0;
  for (const auto& m : testkit::generic_metrics()) {
    for (int i = 0; i < 20; ++i) {
      const auto c = geometry::curvature_jets(m, testkit::random_point(rng));
      first = std::max(first, geometry::bianchi_first_defect(geometry::packet_from_jets(c, 1).riemann));
      second = std::max(second, geometry::bianchi_second_defect(c));
    }
  }
  return {first < 1e-9 && second < 1e-7, fmt("first %.3g, second %.3g", first, second)};
}

// 10. Variational formula dCS/dt = -(1/8 pi^2) <gdot, Cott> on the Berger family.
Outcome variational() {
  bool ok = true;
  std::string detail;
  for (double t : {0.5, 1.0, 2.0}) {
    const auto r = liegroup::berger_variational_check(t);
    ok = ok && r.relative_error < 1e-4;
    detail += fmt("t=%g: dCS/dt %.12g vs stated %.12g (rel err %.3g; opposite sign %.3g)  ", t, r.finite_difference,
                  -r.cotton_pairing, r.relative_error, r.relative_error_opposite_sign);
  }
  return {ok, detail};
}

// 11. d cs = tr(Omega ^ Omega) and the variation lemma, convergence order.
Outcome lemmas() {
  double order = 1e9, fine = 0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (const auto& r : {testkit::chern_simons_exterior_derivative_check(seed), testkit::variation_lemma_check(seed)}) {
      order = std::min(order, r.order);
      fine = std::max(fine, r.fine_error);
    }
  }
  return {order >= 1.9, fmt("min observed order %.4f, max fine-step error %.3g", order, fine)};
}

// 12. Locally conformally flat solver end to end.
Outcome lcf_end_to_end() {
  lcf::GridSpec grid;
  grid.half_width = 0.5;
  grid.resolution = 33;
  bool ok = true;
  std::string detail;
  for (const char* f0 : {"0.3*x1", "sin(x1) + 0.2*x2^2"}) {
    const auto m = geometry::conformal_rescale(geometry::flat_metric(testkit::cube(2)), jets::parse(f0));
    const auto t0 = std::chrono::steady_clock::now();
    const auto field = lcf::solve(m, grid, {0, 0, 0});
    const double dt = seconds_since(t0);
    ok = ok && field.diagnostics.flatness_residual < 1e-5 && dt < 60.0;
    detail += fmt("f0=%s: residual %.3g in %.1f s; ", f0, field.diagnostics.flatness_residual, dt);
  }
  try {
    lcf::solve(testkit::generic_metrics()[0], grid, {0, 0, 0});
    ok = false;
    detail += "perturbed metric accepted";
  } catch (const CottonNotZero& e) {
    detail += fmt("perturbed: CottonNotZero (norm %.3g)", e.norm());
  }
  return {ok, detail};
}

// 13. Gauge change by the identity map SO(3) -> SO(3) shifts CS by an integer.
Outcome gauge_integrality() {
  const auto chart = quad::so3_euler_chart();
  const auto gauged = chart.frame.gauge(quad::euler_rotation());
  const double before = quad::chern_simons_invariant(chart.metric, chart.frame, chart.domain, 24);
  const double after = quad::chern_simons_invariant(chart.metric, gauged, chart.domain, 24);
  const double delta = after - before;
  const double frac = std::abs(delta - std::round(delta));
  return {frac < 1e-4 && std::round(delta) != 0.0,
          fmt("CS %.12g -> %.12g, difference %.12g, distance to Z %.3g", before, after, delta, frac)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "CS(SO(3)) = -1/2", cs_so3},
      {2, "cs density on SO(3)", cs_density},
      {3, "volumes of S3 and SO(3)", volumes},
      {4, "CS(S3) integral", cs_s3},
      {5, "Maurer-Cartan cube", maurer_cartan},
      {6, "Cotton tensor properties", cotton_properties},
      {7, "conformal invariance", conformal_invariance},
      {8, "curvature from Schouten", schouten_reconstruction},
      {9, "Bianchi identities", bianchi},
      {10, "variational formula", variational},
      {11, "Chern-Simons lemmas", lemmas},
      {12, "conformal flattening", lcf_end_to_end},
      {13, "gauge integrality", gauge_integrality},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Run only these criteria (1-13)")->check(CLI::Range(1, 13));
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
