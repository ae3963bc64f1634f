#include "thermowiener/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "thermowiener/errors.hpp"

namespace thermowiener {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-13;
constexpr int kDegenerateLimit = 50;
constexpr double kFeasTol = 1e-12;
constexpr double kHarrisTol = 1e-10;
constexpr int kRefreshPeriod = 400;
constexpr int kMaxRefreshes = 40;

// Dense primal simplex on the Tucker tableau starting from the slack
// basis. Row i reads  basic_i = rhs_i - sum_j T_ij nonbasic_j  and the
// objective  z = sum_j d_j nonbasic_j + const.
struct Tableau {
  int m, n;
  std::vector<double> T;
  std::vector<double> rhs, d;
  // Variable ids: 0..n-1 structural, n..n+m-1 slack.
  std::vector<int> basic, nonbasic;

  double& at(int i, int j) { return T[static_cast<std::size_t>(i) * n + j]; }

  void pivot(int p, int q) {
    const double alpha = at(p, q);
    double* rowp = &T[static_cast<std::size_t>(p) * n];
    const double inv = 1.0 / alpha;
    for (int j = 0; j < n; ++j) rowp[j] *= inv;
    rowp[q] = inv;
    rhs[p] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == p) continue;
      double* row = &T[static_cast<std::size_t>(i) * n];
      const double f = row[q];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) row[j] -= f * rowp[j];
      row[q] = -f * inv;
      rhs[i] -= f * rhs[p];
      if (rhs[i] < 0 && rhs[i] > -1e-9) rhs[i] = 0;
    }
    const double f = d[q];
    for (int j = 0; j < n; ++j) d[j] -= f * rowp[j];
    d[q] = -f * inv;
    std::swap(basic[p], nonbasic[q]);
  }
};

// Recomputes the tableau of the current basis from the scaled matrix W and
// costs c. With S the basic structural columns and R the rows whose slack is
// nonbasic, B = W[R,S] and
//   x_S = B^-1 1 - B^-1 W[R,N] x_N - B^-1 s_R
//   s_i = (1 - w_iS B^-1 1) - (W[i,N] - w_iS B^-1 W[R,N]) x_N + w_iS B^-1 s_R.
bool refresh(Tableau& tab, const Eigen::MatrixXd& W, const std::vector<int>& /*rows*/,
             const Eigen::VectorXd& c) {
  const int m = tab.m, n = tab.n;
  std::vector<int> S, R, Nn, others;
  std::vector<char> in_s(n, 0), in_r(m, 0);
  for (int r = 0; r < m; ++r)
    if (tab.basic[r] < n) {
      S.push_back(tab.basic[r]);
      in_s[tab.basic[r]] = 1;
    }
  for (int j = 0; j < n; ++j)
    if (tab.nonbasic[j] >= n) {
      R.push_back(tab.nonbasic[j] - n);
      in_r[tab.nonbasic[j] - n] = 1;
    }
  if (S.size() != R.size()) return false;
  for (int j = 0; j < n; ++j)
    if (!in_s[j]) Nn.push_back(j);
  for (int i = 0; i < m; ++i)
    if (!in_r[i]) others.push_back(i);
  const int k = static_cast<int>(S.size());
  const int nn = static_cast<int>(Nn.size());
  const int no = static_cast<int>(others.size());

  Eigen::MatrixXd B(k, k), WRN(k, nn), WOS(no, k), WON(no, nn);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) B(a, b) = W(R[a], S[b]);
    for (int b = 0; b < nn; ++b) WRN(a, b) = W(R[a], Nn[b]);
  }
  for (int a = 0; a < no; ++a) {
    for (int b = 0; b < k; ++b) WOS(a, b) = W(others[a], S[b]);
    for (int b = 0; b < nn; ++b) WON(a, b) = W(others[a], Nn[b]);
  }
  Eigen::VectorXd cS(k), cN(nn);
  for (int a = 0; a < k; ++a) cS(a) = c(S[a]);
  for (int b = 0; b < nn; ++b) cN(b) = c(Nn[b]);

  Eigen::MatrixXd Binv = Eigen::MatrixXd::Identity(k, k);
  if (k > 0) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    Binv = lu.inverse();
    if (!Binv.allFinite()) return false;
  }
  const Eigen::MatrixXd G = Binv * WRN;     // k x nn
  const Eigen::MatrixXd M = WOS * Binv;     // no x k
  const Eigen::MatrixXd H = WON - M * WRN;  // no x nn
  const Eigen::VectorXd ones_k = Eigen::VectorXd::Ones(k);
  const Eigen::VectorXd xS = Binv * ones_k;
  const Eigen::VectorXd yS = Binv.transpose() * cS;  // c_S B^-1 as a column

  // Columns: structural nonbasics first, then slacks of R.
  for (int b = 0; b < nn; ++b) tab.nonbasic[b] = Nn[b];
  for (int a = 0; a < k; ++a) tab.nonbasic[nn + a] = n + R[a];
  for (int a = 0; a < k; ++a) {
    tab.basic[a] = S[a];
    tab.rhs[a] = xS(a);
    for (int b = 0; b < nn; ++b) tab.at(a, b) = G(a, b);
    for (int b = 0; b < k; ++b) tab.at(a, nn + b) = Binv(a, b);
  }
  for (int a = 0; a < no; ++a) {
    const int r = k + a;
    tab.basic[r] = n + others[a];
    tab.rhs[r] = 1.0 - M.row(a).sum();
    for (int b = 0; b < nn; ++b) tab.at(r, b) = H(a, b);
    for (int b = 0; b < k; ++b) tab.at(r, nn + b) = -M(a, b);
  }
  for (int b = 0; b < nn; ++b) tab.d[b] = cN(b) - yS.dot(WRN.col(b));
  for (int a = 0; a < k; ++a) tab.d[nn + a] = -yS(a);
  return true;
}

// Dual simplex pivots until every basic value is nonnegative. Entering
// columns are picked by the dual ratio test so reduced costs stay <= 0
// where they already were. Returns the number of pivots.
int repair_primal(Tableau& tab, int budget) {
  int pivots = 0;
  while (pivots < budget) {
    int p = -1;
    double worst = -kFeasTol;
    for (int i = 0; i < tab.m; ++i)
      if (tab.rhs[i] < worst) {
        worst = tab.rhs[i];
        p = i;
      }
    if (p < 0) break;
    int q = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < tab.n; ++j) {
      const double a = tab.at(p, j);
      if (a >= -kPivotTol) continue;
      const double r = std::max(0.0, -tab.d[j]) / -a;
      if (r < best) {
        best = r;
        q = j;
      }
    }
    if (q < 0) break;
    tab.pivot(p, q);
    ++pivots;
  }
  for (double& v : tab.rhs)
    if (v < 0 && v > -kFeasTol) v = 0;
  return pivots;
}

bool drifted(const Tableau& tab) {
  for (double v : tab.rhs)
    if (v < -1e-7) return true;
  return false;
}

// One simplex run with the given relative pivot threshold. Always returns
// feasible certificates; optimal is false when the pivoting broke down.
PackingSolution packing_attempt(const std::vector<double>& A, int m, int n, int max_iterations,
                                double rel_pivot, bool& optimal) {
  PackingSolution sol;
  sol.x.assign(n, 0.0);
  sol.y.assign(m, 0.0);
  if (n == 0) return sol;

  std::vector<double> colmax(n, 0.0);
  std::vector<int> rows;
  for (int i = 0; i < m; ++i) {
    bool nonzero = false;
    for (int j = 0; j < n; ++j) {
      const double a = A[static_cast<std::size_t>(i) * n + j];
      if (!std::isfinite(a) || a < 0) throw InputError("packing matrix entries must be finite and >= 0");
      if (a > 0) nonzero = true;
      colmax[j] = std::max(colmax[j], a);
    }
    if (nonzero) rows.push_back(i);
  }
  for (int j = 0; j < n; ++j)
    if (!(colmax[j] > 0)) throw InputError("atom without any positive constraint row; capacity unbounded");

  // Column scaling to unit max entry; objective scaled to unit max.
  const int mr = static_cast<int>(rows.size());
  Tableau tab{mr, n, std::vector<double>(static_cast<std::size_t>(mr) * n), std::vector<double>(mr, 1.0),
              std::vector<double>(n), std::vector<int>(mr), std::vector<int>(n)};
  double cmax = 0;
  for (int j = 0; j < n; ++j) cmax = std::max(cmax, 1.0 / colmax[j]);
  for (int j = 0; j < n; ++j) {
    tab.d[j] = (1.0 / colmax[j]) / cmax;
    tab.nonbasic[j] = j;
  }
  for (int r = 0; r < mr; ++r) {
    tab.basic[r] = n + r;
    for (int j = 0; j < n; ++j) tab.at(r, j) = A[static_cast<std::size_t>(rows[r]) * n + j] / colmax[j];
  }
  const Eigen::MatrixXd Aw = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                             Eigen::RowMajor>>(tab.T.data(), mr, n);
  const Eigen::VectorXd cscaled = Eigen::Map<const Eigen::VectorXd>(tab.d.data(), n);

  const int budget = max_iterations > 0 ? max_iterations : 50 * (mr + n) + 1000;
  int degenerate = 0;
  int it = 0;
  int refreshes = 0;
  int since_refresh = 0;
  optimal = false;
  bool broken = false;
  while (it < budget) {
    const bool bland = degenerate > kDegenerateLimit;
    int q = -1;
    double best = kCostTol;
    for (int j = 0; j < n; ++j) {
      if (tab.d[j] > best) {
        if (bland) {
          if (q < 0 || tab.nonbasic[j] < tab.nonbasic[q]) q = j;
        } else {
          best = tab.d[j];
          q = j;
        }
      }
    }
    if (q < 0 || since_refresh >= kRefreshPeriod) {
      // Rebuild from the original data to shed accumulated rounding; only
      // a clean tableau may declare optimality.
      const bool was_optimal = q < 0;
      if (since_refresh == 0 || refreshes >= kMaxRefreshes || !refresh(tab, Aw, rows, cscaled)) {
        if (was_optimal) {
          optimal = true;
          break;
        }
      } else {
        ++refreshes;
        // A refreshed basis far from feasible means rounding drove the
        // pivots onto a nearly singular basis; give up on this run.
        if (drifted(tab)) {
          broken = true;
          break;
        }
        it += repair_primal(tab, budget - it);
      }
      since_refresh = 0;
      continue;
    }
    // Harris two-pass ratio test: bound the step with a small feasibility
    // slack, then take the largest pivot within that bound.
    int p = -1;
    double colmax_q = 0;
    for (int i = 0; i < mr; ++i) colmax_q = std::max(colmax_q, tab.at(i, q));
    const double piv_tol = std::max(kPivotTol, rel_pivot * colmax_q);
    double bound = std::numeric_limits<double>::infinity();
    for (int i = 0; i < mr; ++i) {
      const double a = tab.at(i, q);
      if (a > piv_tol) bound = std::min(bound, (std::max(tab.rhs[i], 0.0) + kHarrisTol) / a);
    }
    double ratio = 0;
    for (int i = 0; i < mr; ++i) {
      const double a = tab.at(i, q);
      if (a <= piv_tol) continue;
      const double r = std::max(tab.rhs[i], 0.0) / a;
      if (r > bound) continue;
      const bool better = p < 0 || (bland ? tab.basic[i] < tab.basic[p] : a > tab.at(p, q));
      if (better) {
        p = i;
        ratio = r;
      }
    }
    if (p < 0) {
      // Packing LPs are bounded; a column without a usable pivot is a
      // rounding artefact. Refresh if possible, otherwise drop its cost.
      if (since_refresh > 0 && refreshes < kMaxRefreshes && refresh(tab, Aw, rows, cscaled)) {
        ++refreshes;
        if (drifted(tab)) {
          broken = true;
          break;
        }
        it += repair_primal(tab, budget - it);
        since_refresh = 0;
      } else {
        tab.d[q] = 0.0;
      }
      continue;
    }
    degenerate = ratio <= 1e-14 ? degenerate + 1 : 0;
    tab.pivot(p, q);
    ++it;
    ++since_refresh;
  }
  sol.iterations = it;

  // Crossover: recompute the basic solution from the original data.
  std::vector<int> S, R;
  for (int r = 0; r < mr; ++r)
    if (tab.basic[r] < n) S.push_back(tab.basic[r]);
  for (int j = 0; j < n; ++j)
    if (tab.nonbasic[j] >= n) R.push_back(rows[tab.nonbasic[j] - n]);
  std::vector<double> x(n, 0.0), y(m, 0.0);
  bool crossover_ok = !S.empty() && S.size() == R.size();
  if (crossover_ok) {
    const int k = static_cast<int>(S.size());
    Eigen::MatrixXd B(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) B(a, b) = A[static_cast<std::size_t>(R[a]) * n + S[b]];
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(k);
    const Eigen::VectorXd xs = lu.solve(ones);
    const Eigen::VectorXd yr = lu.transpose().solve(ones);
    crossover_ok = xs.allFinite() && yr.allFinite();
    if (crossover_ok) {
      for (int a = 0; a < k; ++a) {
        x[S[a]] = std::max(0.0, xs(a));
        y[R[a]] = std::max(0.0, yr(a));
      }
    }
  }
  if (!crossover_ok) {
    std::fill(x.begin(), x.end(), 0.0);
    std::fill(y.begin(), y.end(), 0.0);
    for (int r = 0; r < mr; ++r)
      if (tab.basic[r] < n) x[tab.basic[r]] = std::max(0.0, tab.rhs[r]) / colmax[tab.basic[r]];
    for (int j = 0; j < n; ++j)
      if (tab.nonbasic[j] >= n) y[rows[tab.nonbasic[j] - n]] = std::max(0.0, -tab.d[j]) * cmax;
  }

  for (double& v : x)
    if (!std::isfinite(v)) v = 0.0;
  for (double& v : y)
    if (!std::isfinite(v)) v = 0.0;

  // Certificates: scale each side onto its feasible region.
  double activity = 0;
  for (int i : rows) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += A[static_cast<std::size_t>(i) * n + j] * x[j];
    activity = std::max(activity, s);
  }
  const double xs = activity > 1 ? 1.0 / activity : 1.0;
  double total_x = 0;
  for (double& v : x) {
    v *= xs;
    total_x += v;
  }
  double min_cover = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double s = 0;
    for (int i : rows) s += A[static_cast<std::size_t>(i) * n + j] * y[i];
    min_cover = std::min(min_cover, s);
  }
  double total_y = std::numeric_limits<double>::infinity();
  if (min_cover > 0) {
    total_y = 0;
    for (double& v : y) {
      v /= min_cover;
      total_y += v;
    }
  }
  sol.x = std::move(x);
  sol.y = std::move(y);
  sol.primal = total_x;
  sol.max_row_activity = activity * xs;
  sol.dual = std::isfinite(total_y) ? std::max(total_y, total_x) : std::numeric_limits<double>::infinity();
  optimal = optimal && !broken;
  return sol;
}

}  // namespace

PackingSolution solve_packing(const std::vector<double>& A, int m, int n, double tolerance,
                              int max_iterations) {
  if (m < 0 || n < 0 || A.size() != static_cast<std::size_t>(m) * n)
    throw InputError("packing matrix has the wrong size");
  if (!(tolerance > 0)) throw InputError("tolerance must be positive");
  // Both certificates are feasible whatever the pivoting did, so the best
  // primal and the best dual over several runs still bracket the optimum.
  // Later runs use stricter pivot thresholds for ill-conditioned kernels.
  PackingSolution best_primal, best_dual;
  bool have = false, any_optimal = false;
  int iterations = 0;
  for (double rel_pivot : {1e-9, 1e-7, 1e-5}) {
    bool optimal = false;
    PackingSolution s = packing_attempt(A, m, n, max_iterations, rel_pivot, optimal);
    iterations += s.iterations;
    any_optimal = any_optimal || optimal;
    if (!have || s.primal > best_primal.primal) best_primal = s;
    if (!have || s.dual < best_dual.dual) best_dual = s;
    have = true;
    if (best_dual.dual - best_primal.primal <= tolerance * std::max(best_primal.primal, 1e-300)) break;
  }
  PackingSolution sol = std::move(best_primal);
  sol.y = best_dual.y;
  sol.dual = std::max(best_dual.dual, sol.primal);
  sol.iterations = iterations;
  const double gap = sol.dual - sol.primal;
  if (!(gap <= tolerance * std::max(sol.primal, 1e-300)))
    throw ConvergenceError(any_optimal ? "packing LP certificates do not meet the tolerance"
                                       : "packing LP iteration budget exhausted",
                           sol.primal, sol.dual);
  return sol;
}

}  // namespace thermowiener
