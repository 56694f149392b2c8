#pragma once

// Special functions used by the closed-form solutions and the Bessel
// nonlinearity.
//
// Jacobi elliptic functions take the PARAMETER m = k^2 in the second slot,
// i.e. sn(u | m). Some libraries (Boost, std::comp_ellint_1) take the modulus
// k instead; nothing here does.

namespace svea::specfn {

struct EllipticTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

/// sn(u|m), cn(u|m), dn(u|m) for any finite real u and m.
///
/// 0 <= m <= 1 is evaluated by the arithmetic-geometric mean; m < 0 and m > 1
/// are mapped onto that range with the negative-parameter and
/// reciprocal-parameter transformations. Throws DomainError on non-finite
/// input.
EllipticTriple jacobi_elliptic(double u, double m);

inline constexpr double kDefaultPoleThreshold = 1e-10;

/// dc(u|m) = dn/cn. Throws PoleError (with the distance to the nearest pole)
/// when |cn| < pole_threshold.
double jacobi_dc(double u, double m,
                 double pole_threshold = kDefaultPoleThreshold);

/// Complete elliptic integral of the first kind K(m), 0 <= m < 1 via AGM,
/// m < 0 via K(m) = K(-m/(1-m)) / sqrt(1-m).
double elliptic_k(double m);

/// Bessel function of the first kind, order one. Absolute error below 1e-13
/// for |z| <= 50.
double bessel_j1(double z);

/// J1(z)/z with the removable singularity at 0 filled in (limit 1/2).
/// Below |z| = 1e-4 the even series 1/2 - z^2/16 + z^4/384 is used.
double bessel_j1_over_x(double z);

inline constexpr double kBesselJ1OverXCutover = 1e-4;

/// 0F1(;2;z) by direct power series with adaptive truncation.
/// J1(x) = (x/2) 0F1(;2;-x^2/4).
double hyp0f1_two(double z);

/// First positive zero of J1, refined by Newton iteration on bessel_j1.
double bessel_j1_first_zero();

}  // namespace svea::specfn
