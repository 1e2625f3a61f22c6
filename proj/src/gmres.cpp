#include "imexcouple/gmres.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace imexcouple {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void residual(const LinearMap& apply, std::span<const double> b, std::span<const double> x,
              std::vector<double>& r) {
  apply(x, r);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = b[k] - r[k];
}

}  // namespace

GmresResult gmres(const LinearMap& apply, std::span<const double> b, std::span<double> x,
                  const KrylovSettings& settings) {
  const std::size_t n = b.size();
  if (x.size() != n) throw std::invalid_argument("gmres: size mismatch");
  const int m = std::max(1, settings.restart);

  GmresResult result;
  std::vector<double> r(n);
  residual(apply, b, x, r);
  double beta = norm(r);
  result.initial_norm = beta;
  result.residual_norm = beta;
  if (beta == 0.0 || beta <= settings.absolute_tolerance) {
    result.converged = true;
    return result;
  }
  const double target = std::max(settings.tolerance * beta, settings.absolute_tolerance);

  std::vector<std::vector<double>> V(static_cast<std::size_t>(m + 1), std::vector<double>(n));
  std::vector<double> H(static_cast<std::size_t>((m + 1) * m));
  std::vector<double> cs(static_cast<std::size_t>(m)), sn(static_cast<std::size_t>(m));
  std::vector<double> gvec(static_cast<std::size_t>(m + 1));
  std::vector<double> y(static_cast<std::size_t>(m));
  auto h = [&](int row, int col) -> double& { return H[static_cast<std::size_t>(row * m + col)]; };

  while (result.iterations < settings.max_iterations) {
    for (std::size_t k = 0; k < n; ++k) V[0][k] = r[k] / beta;
    std::fill(gvec.begin(), gvec.end(), 0.0);
    gvec[0] = beta;
    int used = 0;
    for (int k = 0; k < m; ++k) {
      auto& w = V[static_cast<std::size_t>(k + 1)];
      apply(V[static_cast<std::size_t>(k)], w);
      ++result.iterations;
      for (int l = 0; l <= k; ++l) {
        const double hl = dot(w, V[static_cast<std::size_t>(l)]);
        h(l, k) = hl;
        const auto& vl = V[static_cast<std::size_t>(l)];
        for (std::size_t q = 0; q < n; ++q) w[q] -= hl * vl[q];
      }
      const double hn = norm(w);
      h(k + 1, k) = hn;
      if (hn > 0.0) {
        for (std::size_t q = 0; q < n; ++q) w[q] /= hn;
      }
      for (int l = 0; l < k; ++l) {
        const double t = cs[l] * h(l, k) + sn[l] * h(l + 1, k);
        h(l + 1, k) = -sn[l] * h(l, k) + cs[l] * h(l + 1, k);
        h(l, k) = t;
      }
      const double denom = std::hypot(h(k, k), h(k + 1, k));
      if (denom == 0.0) {
        cs[k] = 1.0;
        sn[k] = 0.0;
      } else {
        cs[k] = h(k, k) / denom;
        sn[k] = h(k + 1, k) / denom;
      }
      h(k, k) = denom;
      h(k + 1, k) = 0.0;
      gvec[k + 1] = -sn[k] * gvec[k];
      gvec[k] = cs[k] * gvec[k];
      used = k + 1;
      if (std::abs(gvec[k + 1]) <= target || hn == 0.0 ||
          result.iterations >= settings.max_iterations) {
        break;
      }
    }
    for (int l = used - 1; l >= 0; --l) {
      double s = gvec[l];
      for (int c = l + 1; c < used; ++c) s -= h(l, c) * y[c];
      y[l] = h(l, l) != 0.0 ? s / h(l, l) : 0.0;
    }
    for (int l = 0; l < used; ++l) {
      const auto& vl = V[static_cast<std::size_t>(l)];
      for (std::size_t q = 0; q < n; ++q) x[q] += y[l] * vl[q];
    }
    residual(apply, b, x, r);
    beta = norm(r);
    result.residual_norm = beta;
    if (beta <= target) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace imexcouple
