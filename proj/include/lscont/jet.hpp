#pragma once

#include <array>
#include <cmath>

namespace lscont {

/// Truncated Taylor expansion around a point: c[k] = f^{(k)}(r0) / k!.
template <int N>
struct Jet {
  std::array<double, N + 1> c{};

  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  static Jet variable(double r0) {
    Jet j;
    j.c[0] = r0;
    if (N >= 1) j.c[1] = 1.0;
    return j;
  }

  double value() const { return c[0]; }
  /// k-th derivative at the expansion point.
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[k] * f;
  }
  /// d/dr of the series; the top coefficient is lost.
  Jet differentiate() const {
    Jet d;
    for (int k = 0; k < N; ++k) d.c[k] = (k + 1) * c[k + 1];
    return d;
  }

  Jet operator-() const {
    Jet r;
    for (int k = 0; k <= N; ++k) r.c[k] = -c[k];
    return r;
  }
  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c[k] += o.c[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  Jet& operator+=(double s) {
    c[0] += s;
    return *this;
  }
};

template <int N>
Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <int N>
Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <int N>
Jet<N> operator+(Jet<N> a, double s) { return a += s; }
template <int N>
Jet<N> operator+(double s, Jet<N> a) { return a += s; }
template <int N>
Jet<N> operator-(double s, const Jet<N>& a) { return (-a) += s; }
template <int N>
Jet<N> operator-(Jet<N> a, double s) { return a += -s; }
template <int N>
Jet<N> operator*(Jet<N> a, double s) { return a *= s; }
template <int N>
Jet<N> operator*(double s, Jet<N> a) { return a *= s; }

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

template <int N>
Jet<N> reciprocal(const Jet<N>& a) {
  Jet<N> r;
  r.c[0] = 1.0 / a.c[0];
  for (int k = 1; k <= N; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += a.c[j] * r.c[k - j];
    r.c[k] = -s * r.c[0];
  }
  return r;
}

template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) { return a * reciprocal(b); }
template <int N>
Jet<N> operator/(double s, const Jet<N>& b) { return s * reciprocal(b); }

template <int N>
Jet<N> exp(const Jet<N>& a) {
  Jet<N> r;
  r.c[0] = std::exp(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a.c[j] * r.c[k - j];
    r.c[k] = s / k;
  }
  return r;
}

template <int N>
Jet<N> pow(const Jet<N>& a, int n) {
  Jet<N> r = Jet<N>::constant(1.0);
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

}  // namespace lscont
