#pragma once
// Dense, deliberately naive reference implementations used to cross-check the
// sparse library code. Nothing here is shared with src/.

#include <random>
#include <vector>

#include "loophom/loophom.hpp"

namespace oracle {

using loophom::Rational;
using Dense = std::vector<std::vector<Rational>>;

// Plain Gauss-Jordan over Q.
inline int dense_rank(Dense m) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline Dense to_dense(const loophom::SparseMatrix& s) {
  Dense d(static_cast<std::size_t>(s.rows()), std::vector<Rational>(static_cast<std::size_t>(s.cols()), Rational(0)));
  for (int r = 0; r < s.rows(); ++r)
    for (const auto& [c, q] : s.row(r)) d[r][c] = q;
  return d;
}

inline Dense multiply(const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  Dense out(n, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (a[i][j] != 0)
        for (std::size_t l = 0; l < m; ++l) out[i][l] += a[i][j] * b[j][l];
  return out;
}

// Every tuple of positive-degree letters up to max_weight, no pruning.
inline std::vector<loophom::Word> all_words(const loophom::DGA& a, int max_weight) {
  std::vector<loophom::Word> out{{}};
  std::vector<loophom::Word> layer{{}};
  for (int w = 1; w <= max_weight; ++w) {
    std::vector<loophom::Word> next;
    for (const auto& v : layer)
      for (int i = 0; i < a.dim(); ++i)
        if (a.degree(i) > 0) {
          auto u = v;
          u.push_back(i);
          next.push_back(u);
        }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline int word_degree(const loophom::DGA& a, const loophom::Word& w) {
  int s = 0;
  for (int x : w) s += a.degree(x) - 1;
  return s;
}

// d_B written straight from the two-sum formula, as a dense column.
inline std::vector<Rational> dense_bar_d(const loophom::DGA& a, const loophom::Word& w,
                                         const std::vector<loophom::Word>& target) {
  std::vector<Rational> col(target.size(), Rational(0));
  auto put = [&](const loophom::Word& v, const Rational& q) {
    for (std::size_t i = 0; i < target.size(); ++i)
      if (target[i] == v) col[i] += q;
  };
  int eps = 0;  // degree of the prefix before position i
  for (std::size_t i = 0; i < w.size(); ++i) {
    int sign = (eps % 2 == 0) ? -1 : 1;
    for (const auto& [k, c] : a.d(w[i])) {
      auto v = w;
      v[i] = k;
      put(v, sign * c);
    }
    eps += a.degree(w[i]) - 1;
    if (i + 1 < w.size()) {
      int s2 = (eps % 2 == 0) ? -1 : 1;
      for (const auto& [k, c] : a.product(w[i], w[i + 1])) {
        if (a.degree(k) == 0) continue;
        loophom::Word v(w.begin(), w.begin() + static_cast<long>(i));
        v.push_back(k);
        v.insert(v.end(), w.begin() + static_cast<long>(i) + 2, w.end());
        put(v, s2 * c);
      }
    }
  }
  return col;
}

// Bar Betti numbers from scratch: dense matrices and dense_rank.
inline std::vector<int> dense_bar_betti(const loophom::DGA& a, int lo, int hi, int max_weight) {
  auto words = all_words(a, max_weight);
  auto slice = [&](int n) {
    std::vector<loophom::Word> s;
    for (const auto& w : words)
      if (word_degree(a, w) == n) s.push_back(w);
    return s;
  };
  auto rank_into = [&](int n) {  // rank of d_B: degree n -> n + 1
    auto src = slice(n), dst = slice(n + 1);
    if (src.empty() || dst.empty()) return 0;
    Dense m(dst.size(), std::vector<Rational>(src.size(), Rational(0)));
    for (std::size_t c = 0; c < src.size(); ++c) {
      auto col = dense_bar_d(a, src[c], dst);
      for (std::size_t r = 0; r < dst.size(); ++r) m[r][c] = col[r];
    }
    return dense_rank(m);
  };
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n)
    out.push_back(static_cast<int>(slice(n).size()) - rank_into(n) - rank_into(n - 1));
  return out;
}

inline Rational small_rational(std::mt19937& rng, int range = 3) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, 2);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

// Sparse random element of a cochain slice: each key kept with probability `density`.
inline loophom::CochainValues random_values(const loophom::SliceBasis& basis, std::mt19937& rng,
                                            double density = 0.4) {
  std::bernoulli_distribution keep(density);
  loophom::CochainValues v;
  for (const auto& k : basis.keys())
    if (keep(rng)) loophom::add_term(v, k, small_rational(rng));
  return v;
}

inline std::vector<loophom::DGA> builtin_roster() {
  using namespace loophom;
  return {sphere(2),  sphere(3),  sphere(4),       complex_projective(2), complex_projective(3),
          surface(1), surface(2), torus(2),        torus(3),              acyclic_extension(sphere(2)),
          acyclic_extension(surface(1))};
}

}  // namespace oracle
