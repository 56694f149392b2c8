#include "svealab/specfn.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <sstream>

#include "svealab/errors.hpp"

namespace svea::specfn {
namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << what << ": non-finite argument " << v;
    throw DomainError(os.str());
  }
}

// Descending Landen / AGM scheme for 0 < m < 1 (Abramowitz & Stegun 16.4).
EllipticTriple sncndn_agm(double u, double m) {
  constexpr int kMaxLevels = 40;
  std::array<double, kMaxLevels + 1> a{};
  std::array<double, kMaxLevels + 1> c{};
  const double mc = 1.0 - m;
  a[0] = 1.0;
  c[0] = std::sqrt(m);
  double b = std::sqrt(mc);
  int n = 0;
  while (std::abs(c[n]) > DBL_EPSILON * a[n] && n < kMaxLevels) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int k = n; k > 0; --k) {
    phi = 0.5 * (phi + std::asin(c[k] / a[k] * std::sin(phi)));
  }
  EllipticTriple r;
  r.sn = std::sin(phi);
  r.cn = std::cos(phi);
  // 1 - m sn^2 written as mc + m cn^2 keeps dn accurate near m -> 1, sn -> 1.
  r.dn = std::sqrt(mc + m * r.cn * r.cn);
  return r;
}

EllipticTriple sncndn_unit_range(double u, double m) {
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  return sncndn_agm(u, m);
}

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > DBL_EPSILON * a; ++i) {
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return 0.5 * (a + b);
}

// Power series of J1 for moderate |z|; terms stay below ~1e2 for |z| <= 8.
double j1_series(double z) {
  const double half = 0.5 * z;
  const double q = -half * half;
  double term = half;
  double sum = term;
  for (int k = 0; k < 200; ++k) {
    term *= q / ((k + 1.0) * (k + 2.0));
    sum += term;
    if (std::abs(term) < 1e-18 && (k + 1.0) > std::abs(half)) break;
  }
  return sum;
}

// Miller backward recurrence normalised by J0 + 2 sum_k J_2k = 1.
double j1_miller(double z) {
  const double az = std::abs(z);
  int start = static_cast<int>(az + 10.0 * std::cbrt(az) + 30.0);
  start += start % 2;
  const double two_over_z = 2.0 / az;
  double j_next = 0.0;  // J_{k+1}
  double j_curr = 1e-30;  // J_k
  double norm = 0.0;
  double j1 = 0.0;
  for (int k = start; k >= 1; --k) {
    const double j_prev = k * two_over_z * j_curr - j_next;  // J_{k-1}
    j_next = j_curr;
    j_curr = j_prev;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j_curr;
    if (k - 1 == 1) j1 = j_curr;
    if (std::abs(j_curr) > 1e250) {
      j_curr *= 1e-250;
      j_next *= 1e-250;
      norm *= 1e-250;
      j1 *= 1e-250;
    }
  }
  norm += j_curr;  // J0
  return j1 / norm;
}

// Hankel asymptotic expansion; only used far beyond the Miller range.
double j1_asymptotic(double z) {
  const double az = std::abs(z);
  constexpr double mu = 4.0;
  const double eight_z = 8.0 * az;
  double p = 1.0;
  double q = (mu - 1.0) / eight_z;
  double term = q;
  double last = std::abs(term);
  // term_k = term_{k-1} * (mu - (2k-1)^2) / (k * 8z), alternating into P and Q.
  for (int k = 2; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * eight_z);
    if (std::abs(term) > last) break;
    last = std::abs(term);
    const bool to_p = (k % 2 == 0);
    const double sign = ((k / 2) % 2 == 1) ? -1.0 : 1.0;
    (to_p ? p : q) += sign * term;
  }
  const double chi = az - 0.75 * std::numbers::pi;
  const double v =
      std::sqrt(2.0 / (std::numbers::pi * az)) * (p * std::cos(chi) - q * std::sin(chi));
  return z < 0.0 ? -v : v;
}

}  // namespace

EllipticTriple jacobi_elliptic(double u, double m) {
  require_finite(u, "jacobi_elliptic");
  require_finite(m, "jacobi_elliptic");
  if (m < 0.0) {
    // sn(u|m) = sd(v|mu)/sqrt(1-m), cn = cd(v|mu), dn = nd(v|mu)
    const double scale = std::sqrt(1.0 - m);
    const double mu = -m / (1.0 - m);
    const EllipticTriple t = sncndn_unit_range(u * scale, mu);
    return {t.sn / (t.dn * scale), t.cn / t.dn, 1.0 / t.dn};
  }
  if (m > 1.0) {
    // sn(u|m) = sn(u sqrt(m)|1/m)/sqrt(m), cn = dn(..), dn = cn(..)
    const double root = std::sqrt(m);
    const EllipticTriple t = sncndn_unit_range(u * root, 1.0 / m);
    return {t.sn / root, t.dn, t.cn};
  }
  return sncndn_unit_range(u, m);
}

double jacobi_dc(double u, double m, double pole_threshold) {
  const EllipticTriple t = jacobi_elliptic(u, m);
  if (std::abs(t.cn) < pole_threshold) {
    // cn' = -sn dn; one Newton step gives the distance to the zero of cn.
    const double slope = std::abs(t.sn * t.dn);
    const double distance = slope > 0.0 ? std::abs(t.cn) / slope : 0.0;
    std::ostringstream os;
    os << "dc(" << u << "|" << m << "): |cn| = " << std::abs(t.cn)
       << " below pole threshold " << pole_threshold << ", pole at distance "
       << distance;
    throw PoleError(os.str(), u, distance);
  }
  return t.dn / t.cn;
}

double elliptic_k(double m) {
  require_finite(m, "elliptic_k");
  if (m >= 1.0) throw DomainError("elliptic_k: requires m < 1");
  return 0.5 * std::numbers::pi / agm(1.0, std::sqrt(1.0 - m));
}

double bessel_j1(double z) {
  require_finite(z, "bessel_j1");
  const double az = std::abs(z);
  if (az <= 8.0) return j1_series(z);
  if (az <= 1000.0) {
    const double v = j1_miller(z);
    return z < 0.0 ? -v : v;
  }
  return j1_asymptotic(z);
}

double bessel_j1_over_x(double z) {
  require_finite(z, "bessel_j1_over_x");
  if (std::abs(z) < kBesselJ1OverXCutover) {
    const double z2 = z * z;
    return 0.5 - z2 / 16.0 + z2 * z2 / 384.0;
  }
  return bessel_j1(z) / z;
}

double hyp0f1_two(double z) {
  require_finite(z, "hyp0f1_two");
  long double term = 1.0L;
  long double sum = 1.0L;
  const long double lz = z;
  const long double root = std::sqrt(std::abs(lz));
  for (int k = 0; k < 100000; ++k) {
    term *= lz / ((k + 1.0L) * (k + 2.0L));
    sum += term;
    if (term == 0.0L) break;
    if (k + 1.0L > root && std::abs(term) <= LDBL_EPSILON * std::abs(sum)) break;
  }
  return static_cast<double>(sum);
}

double bessel_j1_first_zero() {
  // J1 changes sign exactly once on [3.5, 4.2].
  double lo = 3.5;
  double hi = 4.2;
  for (int i = 0; i < 200 && hi - lo > 4.0 * DBL_EPSILON; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (bessel_j1(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace svea::specfn
