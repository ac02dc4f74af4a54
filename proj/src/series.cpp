#include "logcoef/series.hpp"

#include <algorithm>
#include <string>

namespace logcoef {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOrderMismatch: return "order mismatch";
    case ErrorCode::kDivisionByZeroConstant: return "division by series with zero constant term";
    case ErrorCode::kNormalization: return "normalization";
    case ErrorCode::kParameterRange: return "parameter out of range";
    case ErrorCode::kOrderTooLow: return "truncation order too low";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kSingularSample: return "singular sample";
    case ErrorCode::kUntrustedRadius: return "untrusted evaluation radius";
    case ErrorCode::kUnknownLabel: return "unknown label";
    case ErrorCode::kZeroPolynomial: return "zero polynomial";
  }
  return "unknown error";
}

namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order() != b.order()) {
    throw Error(ErrorCode::kOrderMismatch,
                "orders " + std::to_string(a.order()) + " and " + std::to_string(b.order()));
  }
}

void require_unit_constant(const TruncatedSeries& a) {
  if (a[0] != cplx{1.0, 0.0}) {
    throw Error(ErrorCode::kNormalization, "constant term must be exactly 1");
  }
}

}  // namespace

TruncatedSeries::TruncatedSeries(int order) {
  if (order < 0) throw Error(ErrorCode::kOrderTooLow, "negative order");
  coeffs_.assign(static_cast<std::size_t>(order) + 1, cplx{});
}

TruncatedSeries::TruncatedSeries(int order, std::initializer_list<cplx> coeffs)
    : TruncatedSeries(order, std::span<const cplx>(coeffs.begin(), coeffs.size())) {}

TruncatedSeries::TruncatedSeries(int order, std::span<const cplx> coeffs) : TruncatedSeries(order) {
  if (coeffs.size() > coeffs_.size()) {
    throw Error(ErrorCode::kOrderTooLow,
                std::to_string(coeffs.size()) + " coefficients exceed order " + std::to_string(order));
  }
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

TruncatedSeries TruncatedSeries::constant(int order, cplx value) {
  TruncatedSeries s(order);
  s[0] = value;
  return s;
}

TruncatedSeries TruncatedSeries::z(int order) {
  TruncatedSeries s(order);
  if (order >= 1) s[1] = 1.0;
  return s;
}

TruncatedSeries TruncatedSeries::with_order(int order) const {
  TruncatedSeries s(order);
  const int n = std::min(order, this->order());
  for (int k = 0; k <= n; ++k) s[k] = (*this)[k];
  return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  require_same_order(*this, rhs);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
  require_same_order(*this, rhs);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  const int n = a.order();
  TruncatedSeries out(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == cplx{}) continue;
    for (int j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  if (b[0] == cplx{}) throw Error(ErrorCode::kDivisionByZeroConstant, "b_0 = 0");
  const int n = a.order();
  TruncatedSeries q(n);
  for (int k = 0; k <= n; ++k) {
    cplx acc = a[k];
    for (int j = 1; j <= k; ++j) acc -= b[j] * q[k - j];
    q[k] = acc / b[0];
  }
  return q;
}

TruncatedSeries log_unit(const TruncatedSeries& a) {
  require_unit_constant(a);
  const int n = a.order();
  TruncatedSeries out(n);
  for (int k = 1; k <= n; ++k) {
    cplx acc = static_cast<double>(k) * a[k];
    for (int j = 1; j < k; ++j) acc -= static_cast<double>(j) * out[j] * a[k - j];
    out[k] = acc / static_cast<double>(k);
  }
  return out;
}

TruncatedSeries exp_series(const TruncatedSeries& a) {
  if (a[0] != cplx{}) throw Error(ErrorCode::kNormalization, "exp_series needs zero constant term");
  const int n = a.order();
  TruncatedSeries out(n);
  out[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    cplx acc{};
    for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * out[k - j];
    out[k] = acc / static_cast<double>(k);
  }
  return out;
}

TruncatedSeries pow_real(const TruncatedSeries& a, double beta) {
  require_unit_constant(a);
  const int n = a.order();
  TruncatedSeries out(n);
  out[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    cplx acc{};
    for (int j = 1; j <= k; ++j) {
      if (a[j] == cplx{}) continue;
      acc += (beta * j - static_cast<double>(k - j)) * a[j] * out[k - j];
    }
    out[k] = acc / static_cast<double>(k);
  }
  return out;
}

TruncatedSeries integrate_termwise(const TruncatedSeries& a) {
  const int n = a.order();
  TruncatedSeries out(n);
  for (int k = 1; k <= n; ++k) out[k] = a[k - 1] / static_cast<double>(k);
  return out;
}

TruncatedSeries differentiate(const TruncatedSeries& a) {
  const int n = a.order();
  TruncatedSeries out(n);
  for (int k = 1; k <= n; ++k) out[k - 1] = static_cast<double>(k) * a[k];
  return out;
}

TruncatedSeries shift_up(const TruncatedSeries& a) {
  TruncatedSeries out(a.order());
  for (int k = 1; k <= a.order(); ++k) out[k] = a[k - 1];
  return out;
}

TruncatedSeries shift_down(const TruncatedSeries& a) {
  TruncatedSeries out(a.order());
  for (int k = 0; k < a.order(); ++k) out[k] = a[k + 1];
  return out;
}

cplx evaluate(const TruncatedSeries& a, cplx z) {
  cplx acc{};
  for (int k = a.order(); k >= 0; --k) acc = acc * z + a[k];
  return acc;
}

NormalizedSeries::NormalizedSeries(TruncatedSeries inner) : inner_(std::move(inner)) {
  if (inner_.order() < 2) throw Error(ErrorCode::kOrderTooLow, "normalized series needs order >= 2");
  if (inner_[0] != cplx{} || inner_[1] != cplx{1.0, 0.0}) {
    throw Error(ErrorCode::kNormalization, "expected f(0) = 0 and f'(0) = 1");
  }
}

TruncatedSeries NormalizedSeries::quotient_by_z() const {
  return shift_down(inner_).with_order(inner_.order() - 1);
}

}  // namespace logcoef
