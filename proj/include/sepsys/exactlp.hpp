#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace sepsys {

/// Dense rational matrix, row major.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> entries;

  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

  Rational& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

struct Feasible {
  std::vector<Rational> x;  // x >= 0 with Q^T x >= b
};

struct Infeasible {
  std::vector<Rational> y;  // y >= 0 with Qy <= 0 and b^T y > 0
};

using FeasibilityResult = std::variant<Feasible, Infeasible>;

/// Exact re-check of either alternative, independent of the solver path.
inline bool verify_certificate(const RationalMatrix& Q, const std::vector<Rational>& b,
                               const FeasibilityResult& result) {
  if (b.size() != Q.cols) return false;
  if (const Feasible* f = std::get_if<Feasible>(&result)) {
    if (f->x.size() != Q.rows) return false;
    for (const Rational& v : f->x)
      if (v < 0) return false;
    for (std::size_t j = 0; j < Q.cols; ++j) {
      Rational sum = 0;
      for (std::size_t i = 0; i < Q.rows; ++i) sum += Q.at(i, j) * f->x[i];
      if (sum < b[j]) return false;
    }
    return true;
  }
  const Infeasible& inf = std::get<Infeasible>(result);
  if (inf.y.size() != Q.cols) return false;
  for (const Rational& v : inf.y)
    if (v < 0) return false;
  for (std::size_t i = 0; i < Q.rows; ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < Q.cols; ++j) sum += Q.at(i, j) * inf.y[j];
    if (sum > 0) return false;
  }
  Rational value = 0;
  for (std::size_t j = 0; j < Q.cols; ++j) value += b[j] * inf.y[j];
  return value > 0;
}

/// Decides between the Farkas alternatives for Q^T x >= b, x >= 0 by a phase-1
/// simplex over exact rationals with Bland's anti-cycling rule. The infeasible
/// branch reads the witness off the optimal phase-1 reduced costs of the slack
/// columns. Deterministic; self-checks the certificate before returning.
inline FeasibilityResult solve_feasibility(const RationalMatrix& Q, const std::vector<Rational>& b) {
  if (b.size() != Q.cols) throw InputError("dimension mismatch between Q and b");
  const std::size_t n = Q.rows;   // variables
  const std::size_t m = Q.cols;   // constraints: rows of Q^T

  // Row i encodes d_i * (sum_j Q[j][i] x_j - s_i) = d_i b_i with d_i = sign
  // flip making the right-hand side non-negative; artificials start basic.
  const std::size_t n_cols = n + m + m;
  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(n_cols));
  std::vector<Rational> rhs(m);
  std::vector<Rational> sign(m);
  for (std::size_t i = 0; i < m; ++i) {
    sign[i] = (b[i] < 0) ? Rational(-1) : Rational(1);
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = sign[i] * Q.at(j, i);
    tab[i][n + i] = -sign[i];
    tab[i][n + m + i] = 1;
    rhs[i] = sign[i] * b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + m + i;

  // Reduced-cost row for minimizing the artificial sum; artificial columns
  // start at zero, every other column at minus its column sum.
  std::vector<Rational> red(n_cols);
  Rational objective = 0;
  for (std::size_t i = 0; i < m; ++i) objective += rhs[i];
  for (std::size_t j = 0; j < n + m; ++j) {
    Rational sum = 0;
    for (std::size_t i = 0; i < m; ++i) sum += tab[i][j];
    red[j] = -sum;
  }

  while (true) {
    // Bland: entering column of least index; artificials never re-enter.
    std::size_t enter = n_cols;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (red[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == n_cols) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter] <= 0) continue;
      const Rational ratio = rhs[i] / tab[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw InvariantError("phase-1 objective unbounded");

    const Rational pivot = tab[leave][enter];
    for (Rational& v : tab[leave]) v /= pivot;
    rhs[leave] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter] == 0) continue;
      const Rational factor = tab[i][enter];
      for (std::size_t j = 0; j < n_cols; ++j) tab[i][j] -= factor * tab[leave][j];
      rhs[i] -= factor * rhs[leave];
    }
    if (red[enter] != 0) {
      const Rational factor = red[enter];
      for (std::size_t j = 0; j < n_cols; ++j) red[j] -= factor * tab[leave][j];
      objective += factor * rhs[leave];
    }
    basis[leave] = enter;
  }

  FeasibilityResult result = Feasible{};
  if (objective == 0) {
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] < n) x[basis[i]] = rhs[i];
    result = Feasible{std::move(x)};
  } else {
    // Slack reduced costs equal the Farkas multipliers at optimality.
    std::vector<Rational> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = red[n + i];
    result = Infeasible{std::move(y)};
  }
  if (!verify_certificate(Q, b, result))
    throw InvariantError("simplex produced a certificate that fails verification");
  return result;
}

}  // namespace sepsys
