#include "mhd/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mhd {

namespace {

std::vector<double> residual(const LinearOperator& a, std::span<const double> b, std::span<const double> x) {
  std::vector<double> r(b.size());
  a(x, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

void check_sizes(std::span<const double> b, std::vector<double>& x) {
  if (x.empty()) x.assign(b.size(), 0.0);
  if (x.size() != b.size()) throw std::invalid_argument("krylov: initial guess has wrong size");
}

std::vector<double> checked_diagonal(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("preconditioner: matrix not square");
  auto d = a.diagonal_entries();
  for (double v : d) {
    if (v == 0.0) throw std::invalid_argument("preconditioner: zero diagonal entry");
  }
  return d;
}

// One forward and one backward relaxation sweep on A z = r, updating z in place.
void ssor_sweep(const SparseMatrix& a, std::span<const double> diag, double omega, std::span<const double> r,
                std::span<double> z) {
  const auto rp = a.row_ptr(), ci = a.col_idx();
  const auto v = a.values();
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = r[i];
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) s -= v[k] * z[ci[k]];
    z[i] += omega * s / diag[i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = r[ii];
    for (std::size_t k = rp[ii]; k < rp[ii + 1]; ++k) s -= v[k] * z[ci[k]];
    z[ii] += omega * s / diag[ii];
  }
}

}  // namespace

LinearOperator as_operator(const SparseMatrix& a) {
  return [&a](std::span<const double> x, std::span<double> y) { a.multiply(x, y); };
}

Preconditioner identity_preconditioner() {
  return {"identity", [](std::span<const double> x, std::span<double> y) { std::copy(x.begin(), x.end(), y.begin()); }};
}

Preconditioner jacobi_preconditioner(const SparseMatrix& a) {
  auto d = checked_diagonal(a);
  return {"jacobi", [d = std::move(d)](std::span<const double> x, std::span<double> y) {
            for (std::size_t i = 0; i < d.size(); ++i) y[i] = x[i] / d[i];
          }};
}

Preconditioner ssor_preconditioner(const SparseMatrix& a, double omega, int sweeps) {
  if (!(omega > 0.0 && omega < 2.0)) throw std::invalid_argument("ssor: omega must lie in (0, 2)");
  if (sweeps < 1) throw std::invalid_argument("ssor: sweeps must be positive");
  auto d = checked_diagonal(a);
  return {"ssor", [a, d = std::move(d), omega, sweeps](std::span<const double> x, std::span<double> y) {
            std::fill(y.begin(), y.end(), 0.0);
            for (int s = 0; s < sweeps; ++s) ssor_sweep(a, d, omega, x, y);
          }};
}

Preconditioner block_diagonal_preconditioner(const SparseMatrix& velocity_block, const SparseMatrix& pressure_operator,
                                             double pressure_scale, int sweeps) {
  auto dv = checked_diagonal(velocity_block);
  const std::size_t nv = dv.size();
  const std::size_t np = pressure_operator.rows();
  Preconditioner inner = ssor_preconditioner(pressure_operator, 1.0, sweeps);
  return {"block_diag",
          [dv = std::move(dv), nv, np, inner = std::move(inner), pressure_scale](std::span<const double> x,
                                                                                 std::span<double> y) {
            for (std::size_t i = 0; i < nv; ++i) y[i] = x[i] / dv[i];
            if (np > 0) {
              inner.apply(x.subspan(nv, np), y.subspan(nv, np));
              for (std::size_t i = nv; i < nv + np; ++i) y[i] *= pressure_scale;
            }
          }};
}

Preconditioner make_preconditioner(const std::string& kind, const SparseMatrix& a) {
  if (kind == "identity") return identity_preconditioner();
  if (kind == "jacobi") return jacobi_preconditioner(a);
  if (kind == "ssor") return ssor_preconditioner(a);
  throw std::invalid_argument("make_preconditioner: unknown kind '" + kind + "'");
}

SolverReport cg(const LinearOperator& a, std::span<const double> b, std::vector<double>& x, const KrylovOptions& opt,
                const Preconditioner& m) {
  check_sizes(b, x);
  SolverReport rep;
  const double bnorm = vec::norm(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    rep.converged = true;
    rep.history.push_back(0.0);
    return rep;
  }
  auto r = residual(a, b, x);
  double rel = vec::norm(r) / bnorm;
  rep.history.push_back(rel);
  if (rel <= opt.tol) {
    rep.relative_residual = rel;
    rep.converged = true;
    return rep;
  }
  std::vector<double> z(b.size()), p(b.size()), q(b.size());
  m.apply(r, z);
  p = z;
  double rz = vec::dot(r, z);
  for (int it = 1; it <= opt.max_iterations; ++it) {
    a(p, q);
    const double pq = vec::dot(p, q);
    if (!(pq > 0.0) || !(rz > 0.0)) {
      rep.breakdown = true;
      break;
    }
    const double alpha = rz / pq;
    vec::axpy(alpha, p, x);
    vec::axpy(-alpha, q, r);
    rel = vec::norm(r) / bnorm;
    rep.iterations = it;
    rep.history.push_back(rel);
    if (rel <= opt.tol) {
      // Guard against drift of the recursive residual.
      rel = vec::norm(residual(a, b, x)) / bnorm;
      if (rel <= opt.tol) {
        rep.converged = true;
        break;
      }
    }
    m.apply(r, z);
    const double rz_new = vec::dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
  }
  rep.relative_residual = rel;
  return rep;
}

SolverReport cg(const SparseMatrix& a, std::span<const double> b, std::vector<double>& x, const KrylovOptions& opt,
                const Preconditioner& m) {
  return cg(as_operator(a), b, x, opt, m);
}

SolverReport minres(const LinearOperator& a, std::span<const double> b, std::vector<double>& x,
                    const KrylovOptions& opt, const Preconditioner& m) {
  check_sizes(b, x);
  const std::size_t n = b.size();
  SolverReport rep;
  std::vector<double> mb(n);
  m.apply(b, mb);
  const double bb = vec::dot(b, mb);
  if (bb < 0.0) {
    rep.breakdown = true;
    return rep;
  }
  const double bnorm = std::sqrt(bb);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    rep.converged = true;
    rep.history.push_back(0.0);
    return rep;
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> r1(n), r2(n), y(n), v(n), w(n), w1(n), w2(n);
  int restarts = 0;
  while (true) {
    r1 = residual(a, b, x);
    m.apply(r1, y);
    const double rr = vec::dot(r1, y);
    if (rr < 0.0) {
      rep.breakdown = true;
      break;
    }
    double beta = std::sqrt(rr);
    double rel = beta / bnorm;
    if (rep.history.empty()) rep.history.push_back(rel);
    rep.relative_residual = rel;
    if (rel <= opt.tol) {
      rep.converged = true;
      break;
    }
    if (rep.iterations >= opt.max_iterations || restarts > 5) break;
    r2 = r1;
    double oldb = 0.0, dbar = 0.0, epsln = 0.0, phibar = beta, cs = -1.0, sn = 0.0;
    std::fill(w.begin(), w.end(), 0.0);
    std::fill(w2.begin(), w2.end(), 0.0);
    bool estimate_converged = false;
    for (int k = 1; rep.iterations < opt.max_iterations; ++k) {
      const double s = 1.0 / beta;
      for (std::size_t i = 0; i < n; ++i) v[i] = s * y[i];
      a(v, y);
      if (k >= 2) vec::axpy(-beta / oldb, r1, y);
      const double alfa = vec::dot(v, y);
      vec::axpy(-alfa / beta, r2, y);
      std::swap(r1, r2);
      r2 = y;
      m.apply(r2, y);
      oldb = beta;
      const double b2 = vec::dot(r2, y);
      if (b2 < 0.0) {
        rep.breakdown = true;
        break;
      }
      beta = std::sqrt(b2);
      const double oldeps = epsln;
      const double delta = cs * dbar + sn * alfa;
      const double gbar = sn * dbar - cs * alfa;
      epsln = sn * beta;
      dbar = -cs * beta;
      const double gamma = std::max(std::hypot(gbar, beta), eps);
      cs = gbar / gamma;
      sn = beta / gamma;
      const double phi = cs * phibar;
      phibar = sn * phibar;
      std::swap(w1, w2);
      std::swap(w2, w);
      for (std::size_t i = 0; i < n; ++i) w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
      vec::axpy(phi, w, x);
      ++rep.iterations;
      rel = phibar / bnorm;
      rep.history.push_back(rel);
      if (rel <= opt.tol || beta == 0.0) {
        estimate_converged = true;
        break;
      }
    }
    if (rep.breakdown || !estimate_converged) {
      if (!rep.breakdown) {
        // Report the true residual at exit.
        auto r = residual(a, b, x);
        std::vector<double> z(n);
        m.apply(r, z);
        rep.relative_residual = std::sqrt(std::max(0.0, vec::dot(r, z))) / bnorm;
        rep.converged = rep.relative_residual <= opt.tol;
      }
      break;
    }
    ++restarts;
  }
  return rep;
}

SolverReport minres(const SparseMatrix& a, std::span<const double> b, std::vector<double>& x,
                    const KrylovOptions& opt, const Preconditioner& m) {
  return minres(as_operator(a), b, x, opt, m);
}

SolverReport gmres(const LinearOperator& a, std::span<const double> b, std::vector<double>& x,
                   const KrylovOptions& opt, const Preconditioner& m) {
  check_sizes(b, x);
  const std::size_t n = b.size();
  SolverReport rep;
  const double bnorm = vec::norm(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    rep.converged = true;
    rep.history.push_back(0.0);
    return rep;
  }
  const int restart = std::max(1, opt.restart);
  std::vector<std::vector<double>> basis;
  std::vector<std::vector<double>> h;
  std::vector<double> cs(restart), sn(restart), g(restart + 1), z(n), w(n);
  while (true) {
    auto r = residual(a, b, x);
    double beta = vec::norm(r);
    double rel = beta / bnorm;
    if (rep.history.empty()) rep.history.push_back(rel);
    rep.relative_residual = rel;
    if (rel <= opt.tol) {
      rep.converged = true;
      break;
    }
    if (rep.iterations >= opt.max_iterations) break;
    basis.assign(1, r);
    vec::scale(1.0 / beta, basis[0]);
    h.assign(restart, std::vector<double>(restart + 1, 0.0));
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    int k = 0;
    bool happy = false;
    while (k < restart && rep.iterations < opt.max_iterations) {
      m.apply(basis[k], z);
      a(z, w);
      auto& hk = h[k];
      for (int i = 0; i <= k; ++i) {
        hk[i] = vec::dot(w, basis[i]);
        vec::axpy(-hk[i], basis[i], w);
      }
      hk[k + 1] = vec::norm(w);
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * hk[i] + sn[i] * hk[i + 1];
        hk[i + 1] = -sn[i] * hk[i] + cs[i] * hk[i + 1];
        hk[i] = t;
      }
      const double denom = std::hypot(hk[k], hk[k + 1]);
      if (denom == 0.0) {
        rep.breakdown = true;
        break;
      }
      cs[k] = hk[k] / denom;
      sn[k] = hk[k + 1] / denom;
      const double sub = hk[k + 1];
      hk[k] = denom;
      hk[k + 1] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      ++k;
      ++rep.iterations;
      rel = std::abs(g[k]) / bnorm;
      rep.history.push_back(rel);
      if (rel <= opt.tol) break;
      if (sub == 0.0) {
        happy = true;
        break;
      }
      basis.push_back(w);
      vec::scale(1.0 / sub, basis.back());
    }
    // Back substitution and update x += M (V y).
    std::vector<double> yk(k, 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= h[j][i] * yk[j];
      yk[i] = s / h[i][i];
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (int i = 0; i < k; ++i) vec::axpy(yk[i], basis[i], w);
    m.apply(w, z);
    vec::axpy(1.0, z, x);
    if (rep.breakdown) {
      rep.relative_residual = vec::norm(residual(a, b, x)) / bnorm;
      break;
    }
    if (happy) {
      rep.relative_residual = vec::norm(residual(a, b, x)) / bnorm;
      rep.converged = rep.relative_residual <= opt.tol;
      if (!rep.converged) rep.breakdown = true;
      break;
    }
  }
  return rep;
}

SolverReport gmres(const SparseMatrix& a, std::span<const double> b, std::vector<double>& x,
                   const KrylovOptions& opt, const Preconditioner& m) {
  return gmres(as_operator(a), b, x, opt, m);
}

}  // namespace mhd
