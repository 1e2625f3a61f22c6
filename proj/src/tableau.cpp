#include "imexcouple/tableau.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "imexcouple/error.hpp"

namespace imexcouple {

double IMEXTableau::dense_weight(int i, double theta) const {
  double v = 0.0;
  double p = theta;
  for (int k = 0; k < dense_order; ++k) {
    v += bstar[static_cast<std::size_t>(i * dense_order + k)] * p;
    p *= theta;
  }
  return v;
}

bool IMEXTableau::has_implicit() const {
  for (int i = 0; i < stages; ++i) {
    if (At(i, i) != 0.0) return true;
  }
  return false;
}

namespace {

IMEXTableau explicit_rk(std::string name, int order, std::vector<double> a, std::vector<double> b,
                        std::vector<double> c) {
  IMEXTableau t;
  t.name = std::move(name);
  t.stages = static_cast<int>(b.size());
  t.order = order;
  t.a = a;
  t.a_tilde = std::move(a);
  t.b = b;
  t.b_tilde = b;
  t.c = c;
  t.c_tilde = std::move(c);
  t.dense_order = 1;
  t.bstar = std::move(b);
  t.dense_fallback = true;
  return t;
}

IMEXTableau make_rk2() {
  return explicit_rk("rk2", 2, {0, 0, 1, 0}, {0.5, 0.5}, {0, 1});
}

IMEXTableau make_rk3() {
  return explicit_rk("rk3", 3, {0, 0, 0, 1, 0, 0, 0.25, 0.25, 0}, {1.0 / 6, 1.0 / 6, 2.0 / 3},
                     {0, 1, 0.5});
}

IMEXTableau make_rk4() {
  IMEXTableau t = explicit_rk("rk4", 4,
                              {0, 0, 0, 0, 0.5, 0, 0, 0, 0, 0.5, 0, 0, 0, 0, 1, 0},
                              {1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6}, {0, 0.5, 0.5, 1});
  t.dense_order = 3;
  t.dense_fallback = false;
  t.bstar = {1.0, -1.5, 2.0 / 3, 0.0, 1.0, -2.0 / 3, 0.0, 1.0, -2.0 / 3, 0.0, -0.5, 2.0 / 3};
  return t;
}

IMEXTableau make_ark2() {
  const double r2 = std::sqrt(2.0);
  const double g = 1.0 - 1.0 / r2;
  const double d = 1.0 / (2.0 * r2);
  IMEXTableau t;
  t.name = "ark2";
  t.stages = 3;
  t.order = 2;
  t.a_tilde = {0, 0, 0, g, g, 0, d, d, g};
  t.a = {0, 0, 0, 2.0 - r2, 0, 0, (3.0 - 2.0 * r2) / 6.0, (3.0 + 2.0 * r2) / 6.0, 0};
  t.b = {d, d, g};
  t.b_tilde = t.b;
  t.c = {0, 2.0 - r2, 1};
  t.c_tilde = t.c;
  t.dense_order = 2;
  t.bstar = {1.0 / r2, -1.0 / (2.0 * r2), 1.0 / r2, -1.0 / (2.0 * r2), 1.0 - r2, 1.0 / r2};
  return t;
}

IMEXTableau make_ark3() {
  const double d = 1767732205903.0 / 4055673282236.0;
  IMEXTableau t;
  t.name = "ark3";
  t.stages = 4;
  t.order = 3;
  t.a_tilde = {0,
               0,
               0,
               0,
               d,
               d,
               0,
               0,
               2746238789719.0 / 10658868560708.0,
               -640167445237.0 / 6845629431997.0,
               d,
               0,
               1471266399579.0 / 7840856788654.0,
               -4482444167858.0 / 7529755066697.0,
               11266239266428.0 / 11593286722821.0,
               d};
  t.a = {0,
         0,
         0,
         0,
         1767732205903.0 / 2027836641118.0,
         0,
         0,
         0,
         5535828885825.0 / 10492691773637.0,
         788022342437.0 / 10882634858940.0,
         0,
         0,
         6485989280629.0 / 16251701735622.0,
         -4246266847089.0 / 9704473918619.0,
         10755448449292.0 / 10357097424841.0,
         0};
  t.b = {t.a_tilde[12], t.a_tilde[13], t.a_tilde[14], t.a_tilde[15]};
  t.b_tilde = t.b;
  t.c = {0, 1767732205903.0 / 2027836641118.0, 3.0 / 5.0, 1.0};
  t.c_tilde = t.c;
  t.dense_order = 2;
  t.bstar = {4655552711362.0 / 22874653954995.0,   -215264564351.0 / 13552729205753.0,
             -18682724506714.0 / 9892148508045.0,  17870216137069.0 / 13817060693119.0,
             34259539580243.0 / 13192909600954.0,  -28141676662227.0 / 17317692491321.0,
             584795268549.0 / 6622622206610.0,     2508943948391.0 / 7218656332882.0};
  return t;
}

IMEXTableau make_ark4() {
  IMEXTableau t;
  t.name = "ark4";
  t.stages = 6;
  t.order = 4;
  const double q = 0.25;
  t.a_tilde = {0, 0, 0, 0, 0, 0,
               q, q, 0, 0, 0, 0,
               8611.0 / 62500.0, -1743.0 / 31250.0, q, 0, 0, 0,
               5012029.0 / 34652500.0, -654441.0 / 2922500.0, 174375.0 / 388108.0, q, 0, 0,
               15267082809.0 / 155376265600.0, -71443401.0 / 120774400.0,
               730878875.0 / 902184768.0, 2285395.0 / 8070912.0, q, 0,
               82889.0 / 524892.0, 0, 15625.0 / 83664.0, 69875.0 / 102672.0, -2260.0 / 8211.0, q};
  t.a = {0, 0, 0, 0, 0, 0,
         0.5, 0, 0, 0, 0, 0,
         13861.0 / 62500.0, 6889.0 / 62500.0, 0, 0, 0, 0,
         -116923316275.0 / 2393684061468.0, -2731218467317.0 / 15368042101831.0,
         9408046702089.0 / 11113171139209.0, 0, 0, 0,
         -451086348788.0 / 2902428689909.0, -2682348792572.0 / 7519795681897.0,
         12662868775082.0 / 11960479115383.0, 3355817975965.0 / 11060851509271.0, 0, 0,
         647845179188.0 / 3216320057751.0, 73281519250.0 / 8382639484533.0,
         552539513391.0 / 3454668386233.0, 3354512671639.0 / 8306763924573.0, 4040.0 / 17871.0, 0};
  t.b.assign(t.a_tilde.begin() + 30, t.a_tilde.end());
  t.b_tilde = t.b;
  t.c = {0, 0.5, 83.0 / 250.0, 31.0 / 50.0, 17.0 / 20.0, 1.0};
  t.c_tilde = t.c;
  t.dense_order = 3;
  t.bstar = {6943876665148.0 / 7220017795957.0, -54480133.0 / 30881146.0,
             6818779379841.0 / 7100303317025.0,
             0, 0, 0,
             7640104374378.0 / 9702883013639.0, -11436875.0 / 14766696.0,
             2173542590792.0 / 12501825683035.0,
             -20649996744609.0 / 7521556579894.0, 174696575.0 / 18121608.0,
             -31592104683404.0 / 5083833661969.0,
             8854892464581.0 / 2390941311638.0, -12120380.0 / 966161.0,
             61146701046299.0 / 7138195549469.0,
             -11397109935349.0 / 6675773540249.0, 3843.0 / 706.0,
             -17219254887155.0 / 4939391667607.0};
  return t;
}

struct Tree {
  std::vector<Tree> kids;
};

int tree_order(const Tree& t) {
  int n = 1;
  for (const auto& k : t.kids) n += tree_order(k);
  return n;
}

double tree_density(const Tree& t) {
  double g = tree_order(t);
  for (const auto& k : t.kids) g *= tree_density(k);
  return g;
}

std::string tree_label(const Tree& t) {
  if (t.kids.empty()) return "o";
  std::string s = "[";
  for (std::size_t k = 0; k < t.kids.size(); ++k) {
    if (k) s += ",";
    s += tree_label(t.kids[k]);
  }
  return s + "]";
}

std::vector<Tree> trees_up_to(int order) {
  const Tree o{};
  const Tree t2{{o}};
  const Tree t3a{{o, o}};
  const Tree t3b{{t2}};
  std::vector<Tree> out{o};
  if (order >= 2) out.push_back(t2);
  if (order >= 3) {
    out.push_back(t3a);
    out.push_back(t3b);
  }
  if (order >= 4) {
    out.push_back(Tree{{o, o, o}});
    out.push_back(Tree{{o, t2}});
    out.push_back(Tree{{t3a}});
    out.push_back(Tree{{t3b}});
  }
  return out;
}

// Stage vector g(node) = prod_children sum_j A^{colour(child)}_{ij} g(child)_j.
// Colours are consumed in pre-order from `mask`.
std::vector<double> stage_weights(const IMEXTableau& t, const Tree& node, unsigned mask, int& pos) {
  const int s = t.stages;
  std::vector<double> g(static_cast<std::size_t>(s), 1.0);
  for (const auto& child : node.kids) {
    const bool implicit = (mask >> pos) & 1u;
    ++pos;
    const std::vector<double> gc = stage_weights(t, child, mask, pos);
    for (int i = 0; i < s; ++i) {
      double acc = 0.0;
      for (int j = 0; j < s; ++j) acc += (implicit ? t.At(i, j) : t.A(i, j)) * gc[static_cast<std::size_t>(j)];
      g[static_cast<std::size_t>(i)] *= acc;
    }
  }
  return g;
}

std::string colour_label(const Tree& tree, unsigned mask) {
  std::string s = tree_label(tree) + " colours ";
  const int n = tree_order(tree);
  for (int k = 0; k < n; ++k) s += ((mask >> k) & 1u) ? 'I' : 'E';
  return s;
}

std::string lower(std::string_view s) {
  std::string r(s);
  std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return std::tolower(c); });
  return r;
}

}  // namespace

std::vector<TableauCheck> validate_tableau(const IMEXTableau& t) {
  std::vector<TableauCheck> out;
  const int s = t.stages;
  const std::size_t ss = static_cast<std::size_t>(s) * s;
  auto add = [&](std::string name, double residual, double tol) {
    out.push_back({std::move(name), residual, std::abs(residual) <= tol});
  };
  if (t.a.size() != ss || t.a_tilde.size() != ss || t.b.size() != static_cast<std::size_t>(s) ||
      t.b_tilde.size() != static_cast<std::size_t>(s) || t.c.size() != static_cast<std::size_t>(s) ||
      t.c_tilde.size() != static_cast<std::size_t>(s) ||
      t.bstar.size() != static_cast<std::size_t>(s * t.dense_order)) {
    add("array sizes", 1.0, 0.0);
    return out;
  }

  double upper = 0.0, upper_t = 0.0;
  for (int i = 0; i < s; ++i) {
    for (int j = i; j < s; ++j) upper = std::max(upper, std::abs(t.A(i, j)));
    for (int j = i + 1; j < s; ++j) upper_t = std::max(upper_t, std::abs(t.At(i, j)));
  }
  add("explicit part strictly lower triangular", upper, 0.0);
  add("implicit part lower triangular", upper_t, 0.0);
  double dc = 0.0;
  for (int i = 0; i < s; ++i) {
    double ra = 0.0, rt = 0.0;
    for (int j = 0; j < s; ++j) {
      ra += t.A(i, j);
      rt += t.At(i, j);
    }
    dc = std::max({dc, std::abs(ra - t.c[static_cast<std::size_t>(i)]),
                   std::abs(rt - t.c_tilde[static_cast<std::size_t>(i)]),
                   std::abs(t.c[static_cast<std::size_t>(i)] - t.c_tilde[static_cast<std::size_t>(i)])});
  }
  add("row sums equal c = c_tilde", dc, 1e-13);

  for (const Tree& tree : trees_up_to(t.order)) {
    const int n = tree_order(tree);
    const double target = 1.0 / tree_density(tree);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      int pos = 1;
      const std::vector<double> g = stage_weights(t, tree, mask, pos);
      const auto& w = (mask & 1u) ? t.b_tilde : t.b;
      double phi = 0.0;
      for (int i = 0; i < s; ++i) phi += w[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)];
      add("order condition " + colour_label(tree, mask), phi - target, 1e-13);
    }
  }

  double d1 = 0.0;
  for (int i = 0; i < s; ++i) {
    d1 = std::max(d1, std::abs(t.dense_weight(i, 1.0) - t.b[static_cast<std::size_t>(i)]));
  }
  add("dense output B*(1) = b", d1, 1e-14);
  if (!t.dense_fallback) {
    for (const Tree& tree : trees_up_to(t.dense_order)) {
      const int n = tree_order(tree);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int pos = 1;
        const std::vector<double> g = stage_weights(t, tree, mask, pos);
        double worst = 0.0;
        for (int k = 1; k <= t.dense_order; ++k) {
          double phi = 0.0;
          for (int i = 0; i < s; ++i) {
            phi += t.bstar[static_cast<std::size_t>(i * t.dense_order + k - 1)] * g[static_cast<std::size_t>(i)];
          }
          const double target = k == n ? 1.0 / tree_density(tree) : 0.0;
          worst = std::max(worst, std::abs(phi - target));
        }
        add("dense condition " + colour_label(tree, mask), worst, 1e-13);
      }
    }
  }
  return out;
}

const IMEXTableau& tableau(std::string_view name) {
  static std::once_flag once;
  static std::map<std::string, IMEXTableau> registry;
  static std::string failure;
  std::call_once(once, [] {
    for (IMEXTableau t : {make_rk2(), make_rk3(), make_rk4(), make_ark2(), make_ark3(), make_ark4()}) {
      for (const auto& check : validate_tableau(t)) {
        if (!check.ok && failure.empty()) {
          std::ostringstream os;
          os << "tableau " << t.name << " failed " << check.condition << " (residual "
             << check.residual << ")";
          failure = os.str();
        }
      }
      registry.emplace(t.name, t);
    }
  });
  if (!failure.empty()) throw TableauError(failure);
  const auto it = registry.find(lower(name));
  if (it == registry.end()) throw TableauError("unknown scheme '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> tableau_names() { return {"rk2", "rk3", "rk4", "ark2", "ark3", "ark4"}; }

IMEXTableau explicit_limit(const IMEXTableau& t) {
  IMEXTableau r = t;
  r.name = t.name + "-explicit";
  r.a_tilde = t.a;
  r.b_tilde = t.b;
  r.c_tilde = t.c;
  return r;
}

}  // namespace imexcouple
