#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relhyp/error.hpp"

namespace relhyp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
Matrix<T> identity_matrix(std::size_t n) {
  Matrix<T> I(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = T(1);
  return I;
}

template <class T>
std::size_t cols_of(Matrix<T> const& A, std::size_t fallback = 0) {
  return A.empty() ? fallback : A[0].size();
}

template <class T>
Matrix<T> multiply(Matrix<T> const& A, Matrix<T> const& B) {
  std::size_t n = A.size(), k = B.size(), m = cols_of(B);
  if (!A.empty() && A[0].size() != k) throw domain_error("matrix product: shape mismatch");
  Matrix<T> C(n, std::vector<T>(m, T(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (A[i][t] != 0)
        for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][t] * B[t][j];
  return C;
}

template <class T>
void check_rectangular(Matrix<T> const& A) {
  for (auto const& r : A)
    if (r.size() != A[0].size()) throw domain_error("matrix: rows of unequal length");
}

// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Int determinant(Matrix<Int> A) {
  std::size_t n = A.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && A[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(A[k], A[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
    prev = A[k][k];
  }
  return sign * A[n - 1][n - 1];
}

struct Snf {
  Matrix<Int> U, D, V;  // A = U D V
  std::size_t rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(D.size(), cols_of(D)); ++i) r += D[i][i] != 0;
    return r;
  }
};

inline Snf snf(Matrix<Int> const& A, std::size_t cols = 0) {
  check_rectangular(A);
  std::size_t m = A.size(), n = cols_of(A, cols);
  Snf s{identity_matrix<Int>(m), A, identity_matrix<Int>(n)};
  auto& D = s.D;
  auto& U = s.U;
  auto& V = s.V;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(D[i], D[j]);
    for (auto& r : U) std::swap(r[i], r[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& r : D) std::swap(r[i], r[j]);
    std::swap(V[i], V[j]);
  };
  auto add_row = [&](std::size_t i, std::size_t j, Int const& c) {  // row_i += c row_j
    for (std::size_t k = 0; k < n; ++k) D[i][k] += c * D[j][k];
    for (auto& r : U) r[j] -= c * r[i];
  };
  auto add_col = [&](std::size_t i, std::size_t j, Int const& c) {  // col_j += c col_i
    for (std::size_t k = 0; k < m; ++k) D[k][j] += c * D[k][i];
    for (std::size_t k = 0; k < n; ++k) V[i][k] -= c * V[j][k];
  };
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::optional<std::pair<std::size_t, std::size_t>> piv;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D[i][j] != 0 && (!piv || abs(D[i][j]) < abs(D[piv->first][piv->second]))) piv = {i, j};
      if (!piv) return s;
      if (piv->first != t) swap_rows(t, piv->first);
      if (piv->second != t) swap_cols(t, piv->second);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D[i][t] == 0) continue;
        add_row(i, t, -(D[i][t] / D[t][t]));
        clean &= D[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D[t][j] == 0) continue;
        add_col(t, j, -(D[t][j] / D[t][t]));
        clean &= D[t][j] == 0;
      }
      if (!clean) continue;
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m && !bad; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D[i][j] % D[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad) {
        add_row(t, *bad, 1);
        continue;
      }
      break;
    }
    if (D[t][t] < 0) {
      for (std::size_t k = 0; k < n; ++k) D[t][k] = -D[t][k];
      for (auto& r : U) r[t] = -r[t];
    }
  }
  return s;
}

struct RankNullity {
  std::size_t rank = 0, nullity = 0;
};

// Rows scaled to integers, then Bareiss elimination.
inline RankNullity rank_nullity(Matrix<Rat> const& M) {
  check_rectangular(M);
  if (M.empty()) return {};
  std::size_t m = M.size(), n = M[0].size();
  Matrix<Int> A(m, std::vector<Int>(n));
  for (std::size_t i = 0; i < m; ++i) {
    Int l = 1;
    for (auto const& x : M[i]) l = boost::multiprecision::lcm(l, denominator(x));
    for (std::size_t j = 0; j < n; ++j) A[i][j] = numerator(Rat(M[i][j] * l));
  }
  std::size_t r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && A[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(A[r], A[p]);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) A[i][j] = (A[i][j] * A[r][c] - A[i][c] * A[r][j]) / prev;
      A[i][c] = 0;
    }
    prev = A[r][c];
    ++r;
  }
  return {r, m - r};
}

template <class T>
Matrix<Rat> to_rational(Matrix<T> const& A) {
  Matrix<Rat> R;
  for (auto const& row : A) R.emplace_back(row.begin(), row.end());
  return R;
}

// Basis of {x : x A = 0}, one vector per free variable of the reduced system.
inline Matrix<Rat> left_kernel(Matrix<Rat> const& A) {
  check_rectangular(A);
  std::size_t m = A.size();
  if (m == 0) return {};
  std::size_t n = A[0].size();
  // solve A^T x = 0
  Matrix<Rat> T(n, std::vector<Rat>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) T[j][i] = A[i][j];
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t p = r;
    while (p < n && T[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(T[r], T[p]);
    Rat inv = 1 / T[r][c];
    for (auto& x : T[r]) x *= inv;
    for (std::size_t i = 0; i < n; ++i)
      if (i != r && T[i][c] != 0) {
        Rat f = T[i][c];
        for (std::size_t j = 0; j < m; ++j) T[i][j] -= f * T[r][j];
      }
    pivots.push_back(c);
    ++r;
  }
  Matrix<Rat> basis;
  for (std::size_t f = 0; f < m; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<Rat> x(m, Rat(0));
    x[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -T[k][f];
    basis.push_back(x);
  }
  return basis;
}

enum class LinkingConvention { skew, symmetric };

inline char const* to_string(LinkingConvention c) { return c == LinkingConvention::skew ? "skew" : "symmetric"; }

struct LinkingMatrix {
  Matrix<Int> k;
  LinkingConvention convention = LinkingConvention::skew;

  LinkingMatrix() = default;
  LinkingMatrix(Matrix<Int> entries, LinkingConvention c = LinkingConvention::skew) : k(std::move(entries)), convention(c) {
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i].size() != k.size()) throw domain_error("linking matrix must be square");
      if (k[i][i] != 0) throw domain_error("linking matrix needs a zero diagonal");
      for (std::size_t j = 0; j < i; ++j) {
        bool ok = c == LinkingConvention::skew ? k[i][j] == -k[j][i] : k[i][j] == k[j][i];
        if (!ok) throw domain_error(std::string("linking matrix is not ") + to_string(c));
      }
    }
  }
  std::size_t n() const { return k.size(); }
};

struct Filling {
  Int u = 1, v = 0;
  std::optional<std::pair<Int, Int>> pq;  // (p, q) with p v + q u = 1
};

inline Filling make_filling(Int u, Int v) {
  if (gcd(u, v) != 1) throw domain_error("filling: (u, v) must be coprime");
  return {u, v, std::nullopt};
}

// (p, q) with p v + q u = 1 from the extended Euclidean algorithm.
inline Filling complete_filling(Filling f) {
  Int a = f.v, b = f.u, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b, t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  if (a != 1) throw domain_error("filling: (u, v) must be coprime");
  f.pq = std::pair<Int, Int>{x0, y0};
  return f;
}

// Fillings per component; nullopt is the unfilled slot.
using Fillings = std::vector<std::optional<Filling>>;

struct FillingMatrix {
  Matrix<Rat> B;
  std::vector<std::size_t> rows;  // component of each row
  bool integer_rows = false;      // some v_i = 0: rows are u_i e_i + v_i K_i instead
};

inline FillingMatrix filling_matrix(LinkingMatrix const& K, Fillings const& f) {
  if (f.size() != K.n()) throw domain_error("filling_matrix: one slot per component expected");
  FillingMatrix out;
  for (auto const& x : f)
    if (x && x->v == 0) out.integer_rows = true;
  for (std::size_t i = 0; i < K.n(); ++i) {
    if (!f[i]) continue;
    std::vector<Rat> row(K.n());
    for (std::size_t j = 0; j < K.n(); ++j) row[j] = Rat(K.k[i][j]);
    if (out.integer_rows) {
      for (auto& x : row) x *= Rat(f[i]->v);
      row[i] = Rat(f[i]->u);
    } else {
      row[i] = Rat(f[i]->u, f[i]->v);
    }
    out.B.push_back(row);
    out.rows.push_back(i);
  }
  return out;
}

struct NullityCertificate {
  std::size_t nullity = 0;
  Matrix<Rat> alpha;  // left kernel basis
};

inline NullityCertificate filling_nullity_certificate(Matrix<Rat> const& B) {
  NullityCertificate c;
  c.alpha = left_kernel(B);
  c.nullity = c.alpha.size();
  if (c.nullity != rank_nullity(B).nullity) throw error("nullity certificate disagrees with rank computation");
  return c;
}

struct WishfulResult {
  std::vector<Rat> tau;
  std::vector<Rat> coefficients;  // u_i / v_i
  std::vector<Filling> fillings;
  Int min_norm;                   // min over i of u_i^2 + v_i^2
};

// tau = (1, t, t^2, ...); u_i/v_i = -sum_j k_ji tau_j / tau_i, which is the textbook
// sum_j k_ij tau_j / tau_i under the skew convention and keeps tau B = 0 under either.
inline WishfulResult wishful_fillings(LinkingMatrix const& K, Rat const& t) {
  std::size_t n = K.n();
  if (n == 0) throw domain_error("wishful_fillings: empty block");
  for (std::size_t j = 0; j < n; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) zero &= K.k[i][j] == 0;
    if (zero) throw hypothesis_error("wishful_fillings: column " + std::to_string(j) + " of the block is zero");
  }
  if (t <= 0) throw domain_error("wishful_fillings: growth factor must be positive");
  WishfulResult r;
  Rat p = 1;
  for (std::size_t i = 0; i < n; ++i, p *= t) r.tau.push_back(p);
  Int l = 1;
  for (auto const& x : r.tau) l = boost::multiprecision::lcm(l, denominator(x));
  for (auto& x : r.tau) x *= l;
  for (std::size_t i = 0; i < n; ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < n; ++j) s -= Rat(K.k[j][i]) * r.tau[j];
    Rat c = s / r.tau[i];
    if (c == 0) throw hypothesis_error("wishful_fillings: coefficient " + std::to_string(i) + " cancels to zero");
    r.coefficients.push_back(c);
    Filling f{numerator(c), denominator(c), std::nullopt};
    r.fillings.push_back(f);
    Int norm = f.u * f.u + f.v * f.v;
    if (i == 0 || norm < r.min_norm) r.min_norm = norm;
  }
  return r;
}

struct SurgeryRequest {
  std::size_t column;  // j, a filled component in [0, n-1)
  Rat value;           // requested -alpha . x_j
};

struct SurgeryResult {
  std::vector<Rat> alpha;
  std::vector<std::optional<Rat>> coefficients;  // u_j / v_j; nullopt where alpha_j = 0 leaves it free
  Matrix<Rat> B;                                 // A with the coefficients on the diagonal (free ones set to 1)
  NullityCertificate certificate;
  std::size_t column_rank = 0;
};

// A is (n-1) x n. Finds alpha with alpha . x_n = 0 and the requested values of
// -alpha . x_j; the fillings u_j/v_j = -alpha . x_j / alpha_j make B's rows dependent.
inline SurgeryResult surgery_solve(Matrix<Int> const& A, std::vector<SurgeryRequest> const& requests) {
  check_rectangular(A);
  std::size_t rows = A.size();
  if (rows == 0) throw domain_error("surgery_solve: A has no rows");
  std::size_t n = A[0].size();
  if (n != rows + 1) throw domain_error("surgery_solve: A must be (n-1) x n");
  auto AR = to_rational(A);
  SurgeryResult res;
  // column rank = row rank
  res.column_rank = rank_nullity(AR).rank;
  if (res.column_rank == 0) throw hypothesis_error("surgery_solve: A is zero");
  if (requests.size() + 1 > res.column_rank)
    throw hypothesis_error("surgery_solve: at most r - 1 = " + std::to_string(res.column_rank - 1) +
                           " coordinates can be chosen");
  bool last_zero = true;
  for (std::size_t i = 0; i < rows; ++i) last_zero &= A[i][n - 1] == 0;
  if (last_zero) throw hypothesis_error("surgery_solve: last column is zero");

  // system rows: x_n . alpha = 0, -x_j . alpha = value
  Matrix<Rat> S;
  std::vector<Rat> rhs;
  auto column = [&](std::size_t j) {
    std::vector<Rat> c(rows);
    for (std::size_t i = 0; i < rows; ++i) c[i] = AR[i][j];
    return c;
  };
  S.push_back(column(n - 1));
  rhs.push_back(0);
  for (auto const& rq : requests) {
    if (rq.column >= n - 1) throw range_error("surgery_solve: requested column is not a filled component");
    auto c = column(rq.column);
    for (auto& x : c) x = -x;
    S.push_back(c);
    rhs.push_back(rq.value);
  }
  // reduced row echelon form of [S | rhs]
  std::size_t m = S.size();
  for (std::size_t i = 0; i < m; ++i) S[i].push_back(rhs[i]);
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < rows && r < m; ++c) {
    std::size_t p = r;
    while (p < m && S[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(S[r], S[p]);
    Rat inv = 1 / S[r][c];
    for (auto& x : S[r]) x *= inv;
    for (std::size_t i = 0; i < m; ++i)
      if (i != r && S[i][c] != 0) {
        Rat f = S[i][c];
        for (std::size_t j = 0; j <= rows; ++j) S[i][j] -= f * S[r][j];
      }
    piv.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (S[i][rows] != 0) throw hypothesis_error("surgery_solve: requested coordinates are infeasible (rank deficiency)");

  // try a few settings of the free variables until every needed alpha_j is nonzero
  for (int seed = 1; seed <= 64; ++seed) {
    std::vector<Rat> alpha(rows, Rat(0));
    int k = 0;
    for (std::size_t c = 0; c < rows; ++c)
      if (std::find(piv.begin(), piv.end(), c) == piv.end()) alpha[c] = Rat(seed + k++);
    for (std::size_t t = 0; t < piv.size(); ++t) {
      Rat v = S[t][rows];
      for (std::size_t c = 0; c < rows; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) v -= S[t][c] * alpha[c];
      alpha[piv[t]] = v;
    }
    if (std::all_of(alpha.begin(), alpha.end(), [](Rat const& x) { return x == 0; })) continue;
    std::vector<std::optional<Rat>> coef(rows);
    bool ok = true;
    for (std::size_t j = 0; j < rows && ok; ++j) {
      Rat dot = 0;
      for (std::size_t i = 0; i < rows; ++i) dot += alpha[i] * AR[i][j];
      if (alpha[j] != 0)
        coef[j] = AR[j][j] - dot / alpha[j];
      else
        ok = dot == 0;
    }
    if (!ok) continue;
    // coefficients replace the diagonal: column j of B is x_j + (c_j - A_jj) e_j
    res.alpha = alpha;
    res.coefficients = coef;
    res.B = AR;
    for (std::size_t j = 0; j < rows; ++j) res.B[j][j] = coef[j] ? *coef[j] : Rat(1);
    res.certificate = filling_nullity_certificate(res.B);
    if (res.certificate.nullity == 0) throw error("surgery_solve: certificate failed");
    return res;
  }
  throw hypothesis_error("surgery_solve: no admissible alpha found");
}

struct H1Report {
  Matrix<Int> presentation;  // rows rho(lambda_i), rho(mu_i); columns alpha_1..alpha_n, e_1..e_f
  std::size_t rank_lower_bound = 0;
  std::vector<Int> torsion;
  std::size_t m = 0;  // unfilled components
  std::size_t nullity = 0;
  bool inequality_holds = false;  // rank - m >= nullity
  LinkingConvention convention = LinkingConvention::skew;
};

inline H1Report h1_presentation(LinkingMatrix const& K, Fillings const& fillings) {
  std::size_t n = K.n();
  if (fillings.size() != n) throw domain_error("h1_presentation: one slot per component expected");
  std::vector<std::size_t> filled;
  for (std::size_t i = 0; i < n; ++i)
    if (fillings[i]) filled.push_back(i);
  H1Report rep;
  rep.convention = K.convention;
  rep.m = n - filled.size();
  std::size_t cols = n + filled.size();
  for (std::size_t t = 0; t < filled.size(); ++t) {
    std::size_t i = filled[t];
    Filling f = *fillings[i];
    if (gcd(f.u, f.v) != 1) throw domain_error("h1_presentation: (u, v) must be coprime");
    if (!f.pq) f = complete_filling(f);
    auto [p, q] = *f.pq;
    if (p * f.v + q * f.u != 1) throw domain_error("h1_presentation: p v + q u != 1 on component " + std::to_string(i));
    std::vector<Int> lam(cols, 0), mu(cols, 0);
    for (std::size_t j = 0; j < n; ++j) {
      lam[j] = q * K.k[i][j];
      mu[j] = f.v * K.k[i][j];
    }
    lam[i] += p;
    mu[i] += f.u;
    lam[n + t] = 1;
    rep.presentation.push_back(lam);
    rep.presentation.push_back(mu);
  }
  auto s = snf(rep.presentation, cols);
  std::size_t r = s.rank();
  rep.rank_lower_bound = cols - r;
  for (std::size_t i = 0; i < r; ++i)
    if (s.D[i][i] > 1) rep.torsion.push_back(s.D[i][i]);
  rep.nullity = rank_nullity(filling_matrix(K, fillings).B).nullity;
  rep.inequality_holds = rep.rank_lower_bound >= rep.m + rep.nullity;
  return rep;
}

inline std::size_t kernel_rank_report(LinkingMatrix const& K, Fillings const& fillings) {
  auto h = h1_presentation(K, fillings);
  return h.rank_lower_bound > h.m ? h.rank_lower_bound - h.m : 0;
}

}  // namespace relhyp
