#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace imexcouple {

// Additive Runge-Kutta pair: explicit (a, b, c) and diagonally implicit
// (a_tilde, b_tilde, c_tilde). Matrices are row-major s x s.
struct IMEXTableau {
  std::string name;
  int stages = 0;
  int order = 0;
  std::vector<double> a;
  std::vector<double> a_tilde;
  std::vector<double> b;
  std::vector<double> b_tilde;
  std::vector<double> c;
  std::vector<double> c_tilde;
  // Dense output B*_i(theta) = sum_k bstar[i*dense_order + k-1] theta^k.
  int dense_order = 0;
  std::vector<double> bstar;
  bool dense_fallback = false;  // linear interpolant b_i * theta

  double A(int i, int j) const { return a[static_cast<std::size_t>(i * stages + j)]; }
  double At(int i, int j) const { return a_tilde[static_cast<std::size_t>(i * stages + j)]; }
  double dense_weight(int i, double theta) const;
  bool has_implicit() const;
  bool same_weights() const { return b == b_tilde; }
};

// Names: rk2, rk3, rk4, ark2, ark3, ark4 (case-insensitive). Every entry is
// validated on first access; throws TableauError for an unknown name or a
// failed check.
const IMEXTableau& tableau(std::string_view name);
std::vector<std::string> tableau_names();

struct TableauCheck {
  std::string condition;
  double residual = 0.0;
  bool ok = false;
};

// Order conditions on bicoloured trees up to the tableau order (tolerance
// 1e-13), consistency of c and c_tilde, explicit/diagonally-implicit
// structure, B*(1) = b (1e-14) and dense-output conditions up to
// dense_order.
std::vector<TableauCheck> validate_tableau(const IMEXTableau& t);

// Copy with the implicit part replaced by the explicit one.
IMEXTableau explicit_limit(const IMEXTableau& t);

}  // namespace imexcouple
