#include "mhd/mms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "mhd/assembly.hpp"

namespace mhd::mms {

namespace {

using Idx = std::array<int, 3>;

std::array<double, 3> g(double t) { return {4.0 - 2.0 * t, 1.0 + t, 1.0 - t}; }
constexpr std::array<double, 3> kGdot = {-2.0, 1.0, -1.0};
std::array<double, 3> a(double t) { return {2.0 * t, t - 3.0, 3.0 - 3.0 * t}; }
constexpr std::array<double, 3> kAdot = {2.0, 1.0, -3.0};

double D(const Idx& i, const Vec3& x) { return mms::D(i[0], i[1], i[2], x); }

Idx unit(int m) {
  Idx e{0, 0, 0};
  e[m] = 1;
  return e;
}

Idx plus(Idx i, const Idx& j) {
  for (int m = 0; m < 3; ++m) i[m] += j[m];
  return i;
}

// Index pattern of B_i: ones except at i.
Idx b_index(int i) {
  Idx e{1, 1, 1};
  e[i] = 0;
  return e;
}

// d u_i / d x_m and d B_i / d x_m.
double du(int i, int m, const Vec3& x, double t) { return -g(t)[i] * D(plus(unit(i), unit(m)), x); }
double db(int i, int m, const Vec3& x, double t) { return a(t)[i] * D(plus(b_index(i), unit(m)), x); }

double d6(const std::function<double(double)>& f, double d) {
  return (-f(-3 * d) + 9 * f(-2 * d) - 45 * f(-d) + 45 * f(d) - 9 * f(2 * d) + f(3 * d)) / (60.0 * d);
}

Vec3 shifted(const Vec3& x, int m, double s) {
  Vec3 y = x;
  y[m] += s;
  return y;
}

Vec3 curl_of(const std::function<Vec3(const Vec3&)>& f, const Vec3& x, double dx) {
  auto partial = [&](int comp, int m) { return d6([&](double s) { return f(shifted(x, m, s))[comp]; }, dx); };
  return {partial(2, 1) - partial(1, 2), partial(0, 2) - partial(2, 0), partial(1, 0) - partial(0, 1)};
}

double max_norm(const Vec3& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

}  // namespace

double h(int order, double s) {
  switch (order) {
    case 0: return s * s * (1.0 - s) * (1.0 - s);
    case 1: return 4.0 * s * s * s - 6.0 * s * s + 2.0 * s;
    case 2: return 12.0 * s * s - 12.0 * s + 2.0;
    case 3: return 24.0 * s - 12.0;
    case 4: return 24.0;
    default: return 0.0;
  }
}

double D(int a, int b, int c, const Vec3& x) { return h(a, x[0]) * h(b, x[1]) * h(c, x[2]); }

Vec3 velocity(const Vec3& x, double t) {
  const auto gt = g(t);
  return {-gt[0] * D(1, 0, 0, x), -gt[1] * D(0, 1, 0, x), -gt[2] * D(0, 0, 1, x)};
}

Vec3 velocity_dt(const Vec3& x, double) {
  return {-kGdot[0] * D(1, 0, 0, x), -kGdot[1] * D(0, 1, 0, x), -kGdot[2] * D(0, 0, 1, x)};
}

Vec3 magnetic(const Vec3& x, double t) {
  const auto at = a(t);
  return {at[0] * D(0, 1, 1, x), at[1] * D(1, 0, 1, x), at[2] * D(1, 1, 0, x)};
}

Vec3 magnetic_dt(const Vec3& x, double) {
  return {kAdot[0] * D(0, 1, 1, x), kAdot[1] * D(1, 0, 1, x), kAdot[2] * D(1, 1, 0, x)};
}

Vec3 current(const Vec3& x, double t) {
  const auto at = a(t);
  return {at[2] * D(1, 2, 0, x) - at[1] * D(1, 0, 2, x), at[0] * D(0, 1, 2, x) - at[2] * D(2, 1, 0, x),
          at[1] * D(2, 0, 1, x) - at[0] * D(0, 2, 1, x)};
}

Vec3 current_curl(const Vec3& x, double t) {
  const auto at = a(t);
  return {at[1] * D(2, 1, 1, x) - at[0] * D(0, 3, 1, x) - at[0] * D(0, 1, 3, x) + at[2] * D(2, 1, 1, x),
          at[2] * D(1, 2, 1, x) - at[1] * D(1, 0, 3, x) - at[1] * D(3, 0, 1, x) + at[0] * D(1, 2, 1, x),
          at[0] * D(1, 1, 2, x) - at[2] * D(3, 1, 0, x) - at[2] * D(1, 3, 0, x) + at[1] * D(1, 1, 2, x)};
}

double divergence_velocity(const Vec3& x, double t) {
  const auto gt = g(t);
  return -(gt[0] * D(2, 0, 0, x) + gt[1] * D(0, 2, 0, x) + gt[2] * D(0, 0, 2, x));
}

double total_pressure(const Vec3& x, double t) {
  const Vec3 u = velocity(x, t);
  return D(0, 0, 0, x) + 0.5 * dot(u, u);
}

Vec3 total_pressure_gradient(const Vec3& x, double t) {
  const Vec3 u = velocity(x, t);
  Vec3 out;
  for (int m = 0; m < 3; ++m) {
    out[m] = D(unit(m), x);
    for (int i = 0; i < 3; ++i) out[m] += u[i] * du(i, m, x, t);
  }
  return out;
}

Vec3 momentum_source(const Coefficients& k, const Vec3& x, double t) {
  const Vec3 u = velocity(x, t);
  const Vec3 b = magnetic(x, t);
  const Vec3 j = current(x, t);
  return velocity_dt(x, t) - cross(u, b) + k.re_inv * j - k.coupling * cross(j, b) + total_pressure_gradient(x, t);
}

Vec3 induction_source(const Coefficients& k, const Vec3& x, double t) {
  const Vec3 u = velocity(x, t);
  const Vec3 b = magnetic(x, t);
  const double divu = divergence_velocity(x, t);
  // curl(u x B) = -B div u + (B . grad) u - (u . grad) B, using div B = 0.
  Vec3 curl_uxb;
  for (int i = 0; i < 3; ++i) {
    curl_uxb[i] = -b[i] * divu;
    for (int m = 0; m < 3; ++m) curl_uxb[i] += b[m] * du(i, m, x, t) - u[m] * db(i, m, x, t);
  }
  return magnetic_dt(x, t) + k.rm_inv * current_curl(x, t) - curl_uxb;
}

Sources sources(const Coefficients& k) {
  Sources s;
  s.momentum = [k](const Vec3& x, double t) { return momentum_source(k, x, t); };
  s.induction = [k](const Vec3& x, double t) { return induction_source(k, x, t); };
  s.constraint_velocity = [](const Vec3& x, double t) { return velocity(x, t); };
  return s;
}

SourceCheck validate_sources_against(const Coefficients& used, const Coefficients& truth, int samples, double dx,
                                     double dtime, double tol) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double fmax = 0.0, gmax = 0.0, ferr = 0.0, gerr = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec3 x{unif(rng), unif(rng), unif(rng)};
    const double t = unif(rng);
    auto u_at = [t](const Vec3& y) { return velocity(y, t); };
    auto b_at = [t](const Vec3& y) { return magnetic(y, t); };
    Vec3 dudt, dbdt, gradp;
    for (int c = 0; c < 3; ++c) {
      dudt[c] = d6([&](double d) { return velocity(x, t + d)[c]; }, dtime);
      dbdt[c] = d6([&](double d) { return magnetic(x, t + d)[c]; }, dtime);
      gradp[c] = d6([&](double d) { return total_pressure(shifted(x, c, d), t); }, dx);
    }
    const Vec3 u = velocity(x, t);
    const Vec3 b = magnetic(x, t);
    const Vec3 omega = curl_of(u_at, x, dx);
    const Vec3 j = curl_of(b_at, x, dx);
    const Vec3 curl_omega = curl_of([&](const Vec3& y) { return curl_of(u_at, y, dx); }, x, dx);
    const Vec3 curl_e = curl_of(
        [&](const Vec3& y) { return truth.rm_inv * curl_of(b_at, y, dx) - cross(velocity(y, t), magnetic(y, t)); }, x,
        dx);
    const Vec3 f_fd = dudt - cross(u, omega) + truth.re_inv * curl_omega - truth.coupling * cross(j, b) + gradp;
    const Vec3 g_fd = dbdt + curl_e;
    const Vec3 f = momentum_source(used, x, t);
    const Vec3 gs = induction_source(used, x, t);
    fmax = std::max(fmax, max_norm(f_fd));
    gmax = std::max(gmax, max_norm(g_fd));
    ferr = std::max(ferr, max_norm(f - f_fd));
    gerr = std::max(gerr, max_norm(gs - g_fd));
  }
  SourceCheck out;
  out.momentum_error = ferr / std::max(fmax, 1e-300);
  out.induction_error = gerr / std::max(gmax, 1e-300);
  out.passed = out.momentum_error <= tol && out.induction_error <= tol;
  return out;
}

SourceCheck validate_sources(const Coefficients& k, int samples, double dx, double dtime, double tol) {
  return validate_sources_against(k, k, samples, dx, dtime, tol);
}

std::vector<ConvergenceRow> run_convergence(const std::vector<std::size_t>& meshes, double dt, double t_end,
                                            const Coefficients& k, SimParams base) {
  if (meshes.empty()) throw std::invalid_argument("run_convergence: no meshes given");
  const int steps = static_cast<int>(std::lround(t_end / dt));
  if (steps < 1 || std::abs(steps * dt - t_end) > 1e-9 * std::max(1.0, t_end)) {
    throw std::invalid_argument("run_convergence: t_end must be a positive multiple of dt");
  }
  std::vector<ConvergenceRow> rows;
  for (std::size_t n : meshes) {
    SimParams p = base;
    p.n = n;
    p.dt = dt;
    p.t_end = t_end;
    p.re_inv = k.re_inv;
    p.rm_inv = k.rm_inv;
    p.coupling = k.coupling;
    p.scheme = Scheme::Main;
    DeRhamComplex cx(n);
    Integrator integ(cx, p, sources(k));
    auto u0 = l2_project(cx, SpaceKind::Curl, VectorField([](const Vec3& x) { return velocity(x, 0.0); }));
    // B(0) = curl u(0) and u vanishes on the boundary.
    const auto ui = interpolate(cx, SpaceKind::Curl, VectorField([](const Vec3& x) { return velocity(x, 0.0); }));
    FieldVector b0{SpaceKind::Div, cx.curl() * std::span<const double>(ui.values)};
    auto s = integ.initial_state(std::move(u0), std::move(b0));
    for (int i = 0; i < steps; ++i) s = integ.step(s);
    const double t = s.t;
    const double tp = t - 0.5 * dt;
    ConvergenceRow r;
    r.h = 1.0 / static_cast<double>(n);
    r.steps = steps;
    r.err_b = l2_error(cx, s.B, VectorField([t](const Vec3& x) { return magnetic(x, t); }));
    r.err_u = l2_error(cx, s.u, VectorField([t](const Vec3& x) { return velocity(x, t); }));
    r.err_p = h1_error(cx, s.P, ScalarField([tp](const Vec3& x) { return total_pressure(x, tp); }),
                       VectorField([tp](const Vec3& x) { return total_pressure_gradient(x, tp); }));
    if (!rows.empty()) {
      const auto& q = rows.back();
      const double lr = std::log(q.h / r.h);
      r.order_b = std::log(q.err_b / r.err_b) / lr;
      r.order_u = std::log(q.err_u / r.err_u) / lr;
      r.order_p = std::log(q.err_p / r.err_p) / lr;
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace mhd::mms
