#include "quasiorth/quadrature.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "quasiorth/errors.hpp"

namespace quasiorth {

namespace {

Scalar power_of_two(long exponent, mpfr_prec_t precision) {
  BigFloat f(precision);
  mpfr_set_ui_2exp(f.get(), 1, exponent, MPFR_RNDN);
  return Scalar(std::move(f));
}

Scalar hypot(const Scalar& a, const Scalar& b) { return sqrt(a * a + b * b); }

Scalar max_norm(const std::vector<Scalar>& v) {
  Scalar m(0);
  for (const auto& x : v) {
    Scalar ax = abs(x);
    if (m < ax) m = ax;
  }
  return m;
}

void require_finite(const std::vector<Scalar>& values, const Scalar& x) {
  for (const auto& v : values) {
    if (!v.is_finite()) {
      throw Error(ErrorCode::integrand_singular,
                  "integrand is not finite at x = " + x.display());
    }
  }
}

}  // namespace

// ------------------------------------------------------------ eigensolver

TridiagonalEigen tridiagonal_eigen(const JacobiMatrix& jm) {
  const std::size_t n = jm.dimension();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "empty Jacobi matrix");
  std::vector<Scalar> d = jm.diag;
  std::vector<Scalar> e(n, Scalar(0));
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = jm.offdiag[i];
  mpfr_prec_t prec = 0;
  for (const auto& x : d) prec = std::max(prec, x.precision());
  for (const auto& x : e) prec = std::max(prec, x.precision());
  if (prec == 0) throw Error(ErrorCode::backend_unsupported, "eigensolver needs float entries");
  for (auto& x : d) x = x.to_floating(prec);
  for (auto& x : e) x = x.to_floating(prec);

  std::vector<Scalar> z(n, Scalar(0).to_floating(prec));
  z[0] = Scalar(1).to_floating(prec);
  const Scalar eps = power_of_two(-static_cast<long>(prec), prec);
  const std::size_t iteration_cap = 30 * n;
  std::size_t iterations = 0;

  for (std::size_t l = 0; l < n; ++l) {
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        Scalar dd = abs(d[m]) + abs(d[m + 1]);
        if (abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (++iterations > iteration_cap) {
          throw Error(ErrorCode::eigen_failure, "implicit QL did not converge", l);
        }
        Scalar g = (d[l + 1] - d[l]) / (2 * e[l]);
        Scalar r = hypot(g, Scalar(1));
        g = d[m] - d[l] + e[l] / (g + (g.sign() >= 0 ? r : -r));
        Scalar s(1), c(1), p(0);
        bool deflated = false;
        for (std::size_t ii = m; ii-- > l;) {
          Scalar f = s * e[ii];
          Scalar b = c * e[ii];
          r = hypot(f, g);
          e[ii + 1] = r;
          if (r.is_zero()) {
            d[ii + 1] -= p;
            e[m] = Scalar(0).to_floating(prec);
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + 2 * c * b;
          p = s * r;
          d[ii + 1] = g + p;
          g = c * r - b;
          Scalar zf = z[ii + 1];
          z[ii + 1] = s * z[ii] + c * zf;
          z[ii] = c * z[ii] - s * zf;
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = Scalar(0).to_floating(prec);
      }
    } while (m != l);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  TridiagonalEigen out;
  out.values.reserve(n);
  out.first_components.reserve(n);
  for (auto i : order) {
    out.values.push_back(d[i]);
    out.first_components.push_back(z[i]);
  }
  return out;
}

QuadratureRule gauss_rule(const RecurrenceCoefficients& rc, std::size_t m) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "Gauss rule needs at least one node");
  auto eig = tridiagonal_eigen(jacobi_matrix(rc, m));
  QuadratureRule rule;
  rule.nodes = std::move(eig.values);
  rule.weights.reserve(m);
  for (auto& v : eig.first_components) rule.weights.push_back(v * v);
  rule.measure_tag = "gauss(" + std::to_string(m) + ")";
  return rule;
}

Scalar integrate(const QuadratureRule& rule, const std::function<Scalar(const Scalar&)>& f) {
  Scalar sum(0);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    Scalar v = f(rule.nodes[j]);
    if (!v.is_finite()) {
      throw Error(ErrorCode::integrand_singular,
                  "integrand is not finite at node " + rule.nodes[j].display(), j);
    }
    sum += rule.weights[j] * v;
  }
  return sum;
}

// ------------------------------------------------------ adaptive schemes

namespace {

struct Workspace {
  std::size_t dim;
  mpfr_prec_t precision;
  Scalar tol;
  const AdaptiveLimits& limits;
};

// Successive estimates agree to tol relative to the integral of |f|, so
// integrals that cancel to zero still converge.
bool converged(const std::vector<Scalar>& now, const std::vector<Scalar>& before,
               const std::vector<Scalar>& magnitude, const Scalar& tol) {
  Scalar diff(0);
  for (std::size_t i = 0; i < now.size(); ++i) {
    Scalar d = abs(now[i] - before[i]);
    if (diff < d) diff = d;
  }
  return diff <= tol * max(max_norm(now), max_norm(magnitude));
}

// Tanh-sinh on [lo, hi]. Nodes x = c + half*tanh(pi/2 sinh t); the endpoint
// distances come from u = exp(-pi sinh|t|) without cancellation.
std::vector<Scalar> tanh_sinh(const ContinuousMeasure& m, const VectorIntegrand& f,
                              const Workspace& ws) {
  const mpfr_prec_t p = ws.precision;
  const Scalar lo = m.lo.to_floating(p);
  const Scalar hi = m.hi.to_floating(p);
  if (!(lo < hi)) throw Error(ErrorCode::invalid_argument, "empty integration interval");
  const Scalar half = (hi - lo) / 2;
  const Scalar half_pi = Scalar::pi(p) / 2;
  const Scalar tail_eps = ws.tol * power_of_two(-12, p);
  const Scalar t_cap = Scalar(12).to_floating(p);
  std::size_t evaluations = 0;

  std::vector<Scalar> values(ws.dim);
  std::vector<Scalar> abs_total(ws.dim, Scalar(0).to_floating(p));
  auto sample = [&](const Scalar& t, std::vector<Scalar>& acc) -> Scalar {
    // Returns the max-norm of the contribution.
    Scalar at = abs(t);
    Scalar sh = (exp(at) - exp(-at)) / 2;
    Scalar ch = (exp(at) + exp(-at)) / 2;
    Scalar u = exp(-2 * half_pi * sh);
    Scalar one_plus_u = 1 + u;
    Scalar near = half * 2 * u / one_plus_u;  // distance to the nearer endpoint
    Scalar far = half * 2 / one_plus_u;
    Scalar w = half * half_pi * ch * 4 * u / (one_plus_u * one_plus_u);
    Abscissa a;
    a.lo = lo;
    a.hi = hi;
    if (t.sign() >= 0) {
      a.above = near;
      a.below = far;
      a.x = hi - near;
    } else {
      a.below = near;
      a.above = far;
      a.x = lo + near;
    }
    for (auto& v : values) v = Scalar(0);
    f(a, values);
    require_finite(values, a.x);
    Scalar density = m.density(a);
    if (!density.is_finite()) {
      throw Error(ErrorCode::integrand_singular, "density is not finite at x = " + a.x.display());
    }
    Scalar mag(0);
    for (std::size_t i = 0; i < ws.dim; ++i) {
      Scalar term = w * density * values[i];
      if (!term.is_finite()) {
        throw Error(ErrorCode::quadrature_divergent, "integrand overflow near an endpoint");
      }
      acc[i] += term;
      Scalar at_ = abs(term);
      abs_total[i] += at_;
      if (mag < at_) mag = at_;
    }
    ++evaluations;
    return mag;
  };

  std::vector<Scalar> total(ws.dim, Scalar(0).to_floating(p));
  std::vector<Scalar> previous;
  for (int level = 0; level <= ws.limits.max_levels; ++level) {
    const Scalar h = power_of_two(-level, p);
    const long stride = level == 0 ? 1 : 2;
    std::vector<Scalar> fresh(ws.dim, Scalar(0).to_floating(p));
    if (level == 0) sample(Scalar(0).to_floating(p), fresh);
    Scalar reference = previous.empty() ? Scalar(0) : max_norm(previous);
    for (int direction : {1, -1}) {
      int small_run = 0;
      for (long k = 1;; k += stride) {
        Scalar t = h * k * direction;
        if (abs(t) > t_cap) {
          throw Error(ErrorCode::quadrature_divergent,
                      "integrand does not decay at the interval endpoints");
        }
        Scalar mag = sample(t, fresh);
        Scalar ref = max(max(reference, max_norm(fresh)), max_norm(abs_total) * h);
        if (abs(t) > 1 && mag <= tail_eps * ref) {
          if (++small_run >= 2) break;
        } else {
          small_run = 0;
        }
        if (evaluations > ws.limits.max_evaluations) {
          throw Error(ErrorCode::quadrature_divergent, "tanh-sinh evaluation budget exhausted");
        }
      }
    }
    std::vector<Scalar> estimate(ws.dim), magnitude(ws.dim);
    for (std::size_t i = 0; i < ws.dim; ++i) {
      total[i] += fresh[i];
      estimate[i] = total[i] * h;
      magnitude[i] = abs_total[i] * h;
    }
    if (level >= 3 && converged(estimate, previous, magnitude, ws.tol)) return estimate;
    previous = std::move(estimate);
  }
  throw Error(ErrorCode::quadrature_divergent, "tanh-sinh levels exhausted before convergence");
}

std::vector<Scalar> gauss_schedule(const RecurrenceMeasure& m, const VectorIntegrand& f,
                                   const Workspace& ws) {
  auto rc = m.rc.as_floating(ws.precision);
  std::size_t cap = ws.limits.max_gauss_nodes;
  if (auto count = rc.beta_count()) cap = std::min(cap, *count);
  if (auto count = rc.beta_hat_count()) cap = std::min(cap, *count + 1);
  std::vector<Scalar> previous;
  std::vector<Scalar> values(ws.dim);
  for (std::size_t nodes = 16;; nodes *= 2) {
    std::size_t used = std::min(nodes, cap);
    auto rule = gauss_rule(rc, used);
    std::vector<Scalar> sum(ws.dim, Scalar(0).to_floating(ws.precision));
    std::vector<Scalar> magnitude = sum;
    for (std::size_t j = 0; j < used; ++j) {
      auto a = Abscissa::point(rule.nodes[j]);
      for (auto& v : values) v = Scalar(0);
      f(a, values);
      require_finite(values, a.x);
      Scalar w = rule.weights[j];
      if (m.factor) w *= m.factor(a);
      if (!w.is_finite()) throw Error(ErrorCode::integrand_singular, "weight factor not finite", j);
      for (std::size_t i = 0; i < ws.dim; ++i) {
        Scalar term = w * values[i];
        magnitude[i] += abs(term);
        sum[i] += term;
      }
    }
    if (!previous.empty() && converged(sum, previous, magnitude, ws.tol)) return sum;
    if (used >= cap) {
      throw Error(ErrorCode::quadrature_divergent,
                  "Gauss rules up to " + std::to_string(used) + " nodes did not converge");
    }
    previous = std::move(sum);
  }
}

std::vector<Scalar> atom_sum(const DiscreteMeasure& m, const VectorIntegrand& f,
                             const Workspace& ws) {
  std::vector<Scalar> sum(ws.dim, Scalar(0).to_floating(ws.precision));
  std::vector<Scalar> values(ws.dim);
  std::vector<Scalar> magnitude = sum;
  const Scalar term_eps = ws.tol * power_of_two(-4, ws.precision);
  int small_run = 0;
  for (std::size_t k = 0;; ++k) {
    if (m.atom_count && k >= *m.atom_count) return sum;
    if (k >= ws.limits.max_atoms) {
      throw Error(ErrorCode::quadrature_divergent, "atom summation did not converge", k);
    }
    auto a = Abscissa::point(m.location(k));
    for (auto& v : values) v = Scalar(0);
    f(a, values);
    require_finite(values, a.x);
    Scalar w = m.weight(k);
    Scalar term_mag(0);
    for (std::size_t i = 0; i < ws.dim; ++i) {
      Scalar term = w * values[i];
      sum[i] += term;
      Scalar at = abs(term);
      magnitude[i] += at;
      if (term_mag < at) term_mag = at;
    }
    Scalar scale = max(max_norm(sum), max_norm(magnitude));
    small_run = term_mag <= term_eps * scale ? small_run + 1 : 0;
    Scalar tail = m.tail_bound(k);
    if (!tail.is_finite()) continue;
    Scalar tail_mag = tail * max_norm(values);
    if (tail_mag.is_zero() || (small_run >= 3 && tail_mag <= ws.tol * scale)) return sum;
  }
}

}  // namespace

std::vector<Scalar> integrate_adaptive(const MeasureSpec& measure, const VectorIntegrand& f,
                                       std::size_t dim, const Scalar& tol,
                                       const AdaptiveLimits& limits) {
  if (tol.is_rational()) {
    throw Error(ErrorCode::backend_unsupported, "adaptive quadrature needs a float tolerance");
  }
  if (dim == 0) return {};
  const mpfr_prec_t p = tol.precision();
  Scalar floor = power_of_two(16 - static_cast<long>(p), p);
  Workspace ws{dim, p, max(tol, floor), limits};
  if (auto* c = std::get_if<ContinuousMeasure>(&measure.kind)) return tanh_sinh(*c, f, ws);
  if (auto* d = std::get_if<DiscreteMeasure>(&measure.kind)) return atom_sum(*d, f, ws);
  return gauss_schedule(std::get<RecurrenceMeasure>(measure.kind), f, ws);
}

Scalar integrate_adaptive(const MeasureSpec& measure, const Integrand& f, const Scalar& tol,
                          const AdaptiveLimits& limits) {
  auto out = integrate_adaptive(
      measure, [&f](const Abscissa& a, std::vector<Scalar>& v) { v[0] = f(a); }, 1, tol, limits);
  return out[0];
}

}  // namespace quasiorth
