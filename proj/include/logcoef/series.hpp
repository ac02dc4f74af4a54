#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "logcoef/error.hpp"

namespace logcoef {

using cplx = std::complex<double>;

inline constexpr int kDefaultOrder = 32;

/// Power series a_0 + a_1 z + ... + a_N z^N with complex coefficients.
///
/// Arithmetic is exact up to the truncation order N: products and quotients
/// drop every term beyond z^N and never fold it back into lower orders.
class TruncatedSeries {
 public:
  /// Zero series of order `order` (N >= 0; at least 2 for anything that
  /// becomes a normalized function).
  explicit TruncatedSeries(int order = kDefaultOrder);

  /// Coefficients a_0..a_k, zero-padded up to `order`. Extra coefficients
  /// beyond `order` are rejected.
  TruncatedSeries(int order, std::initializer_list<cplx> coeffs);
  TruncatedSeries(int order, std::span<const cplx> coeffs);

  static TruncatedSeries constant(int order, cplx value);
  /// The monomial z.
  static TruncatedSeries z(int order);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  const cplx& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  cplx& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }

  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Same coefficients re-truncated (or zero-padded) to a new order.
  TruncatedSeries with_order(int order) const;

  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator-=(const TruncatedSeries& rhs);
  TruncatedSeries& operator*=(cplx s);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, cplx s) { return a *= s; }
  friend TruncatedSeries operator*(cplx s, TruncatedSeries a) { return a *= s; }

  bool operator==(const TruncatedSeries&) const = default;

 private:
  std::vector<cplx> coeffs_;
};

// Cauchy product truncated at the common order.
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

// q with mul(q, b) == a; requires b_0 != 0.
TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b);

/// Principal logarithm of a series with constant term exactly 1.
///
/// Solved from L' a = a' by the triangular recurrence
///   k L_k = k a_k - sum_{j=1}^{k-1} j L_j a_{k-j},
/// so no composition with the Taylor series of log is needed.
TruncatedSeries log_unit(const TruncatedSeries& a);

/// exp of a series with zero constant term, via E' = L' E.
TruncatedSeries exp_series(const TruncatedSeries& a);

/// a^beta for a series with constant term exactly 1 (principal branch).
///
/// Uses the J.C.P. Miller recurrence obtained from a P' = beta a' P:
///   k P_k = sum_{j=1}^{k} (beta j - (k - j)) a_j P_{k-j}.
TruncatedSeries pow_real(const TruncatedSeries& a, double beta);

// r_0 = 0, r_k = a_{k-1} / k.
TruncatedSeries integrate_termwise(const TruncatedSeries& a);

// Termwise derivative, padded with a zero at z^N.
TruncatedSeries differentiate(const TruncatedSeries& a);

// Multiply by z (drops a_N) / divide by z (requires nothing; a_0 is dropped,
// z^N becomes zero). Order is preserved.
TruncatedSeries shift_up(const TruncatedSeries& a);
TruncatedSeries shift_down(const TruncatedSeries& a);

// Horner evaluation of the truncated polynomial.
cplx evaluate(const TruncatedSeries& a, cplx z);

/// Series of a function in class A: a_0 = 0 and a_1 = 1 exactly.
class NormalizedSeries {
 public:
  explicit NormalizedSeries(TruncatedSeries inner);

  const TruncatedSeries& inner() const noexcept { return inner_; }
  int order() const noexcept { return inner_.order(); }
  cplx a(int n) const { return n <= order() ? inner_[n] : cplx{}; }

  /// f(z)/z as a series of order N-1 with constant term 1.
  TruncatedSeries quotient_by_z() const;

 private:
  TruncatedSeries inner_;
};

}  // namespace logcoef
