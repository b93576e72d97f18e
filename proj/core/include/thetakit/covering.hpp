#pragma once

#include <cstdint>
#include <vector>

#include "thetakit/identities.hpp"

namespace thetakit {

/// Unramified double cover of y^2 = f1(x) f2(x) given by z^2 = f1, w^2 = f2,
/// with f1 quadratic (roots a, b) and f2 of odd degree 2g - 1.
///
/// The conic z^2 = f1(x) is parametrized rationally, which turns the cover
/// into the odd hyperelliptic curve
///   V^2 = lc(f2) (2u + 1) prod_j ((a - b) u^2 + 2 (a - c_j) u + (a - c_j))
/// of genus 2g - 1, with
///   x = a + (a - b) u^2 / (2u + 1),  y = sqrt(lc f1) (a - b) u (u + 1) V / (2u + 1)^(g+1),
///   sigma(u, V) = (-u / (2u + 1), -V / (2u + 1)^(2g)).
class DoubleCover {
 public:
  DoubleCover(std::vector<cplx> f1, std::vector<cplx> f2, double quad_tol = 1e-12, double theta_tol = 1e-13);

  const Jacobian& base() const { return base_; }
  const Jacobian& cover() const { return cover_; }
  const PrimeForm& base_prime_form() const { return base_E_; }
  const PrimeForm& cover_prime_form() const { return cover_E_; }
  int base_genus() const { return base_.genus(); }
  int cover_genus() const { return cover_.genus(); }

  /// sigma^* on normalized cover differentials: sigma^* w~_k = sum_l S_kl w~_l.
  const CMatrix& deck_matrix() const { return S_; }
  /// gamma^* w_j = sum_l T_jl w~_l.
  const CMatrix& pullback_differentials() const { return T_; }
  /// A~(gamma^* D) = M A(D) for degree-0 D on the base.
  const CMatrix& pullback_matrix() const { return M_; }
  /// Abel image of the 2-torsion bundle O(a + b - 2 inf) defining the cover.
  const CVector& torsion() const { return v_L_; }
  /// A~(gamma^* b1) on consistent lifts, b1 the base point of the base curve.
  const CVector& pulled_base_point() const { return pulled_b1_; }
  /// Theta argument on the cover of gamma^*(D) for a degree g - 1 class D
  /// with base theta argument e.
  CVector cover_theta_argument(const CVector& e) const;

  CurvePoint project(const CurvePoint& p) const;
  CurvePoint deck(const CurvePoint& p) const;

  /// Cover Abel map (path from the cover's b1).
  CVector abel(const CurvePoint& p) const { return cover_.abel_map(p); }
  /// A~(sigma p) = S A~(p) + A~(sigma b1): the lift of sigma applied to the
  /// lift of p, so both stay on one sheet of the universal cover.
  CVector abel_deck(const CurvePoint& p) const;
  /// A(gamma p) obtained by pushing the cover path down: T A~(p) + A(gamma b1~).
  CVector abel_base(const CurvePoint& p) const;

  /// Base prime form and cover prime form on the consistent lifts.
  ScaledComplex base_E(const CurvePoint& p, const CurvePoint& q) const;
  ScaledComplex cover_E(const CurvePoint& p, const CurvePoint& q) const;
  ScaledComplex cover_E_deck(const CurvePoint& p, const CurvePoint& q) const;  // E~(p, sigma q)

  /// Largest eigenvalue error of S against {+1 (x g), -1 (x g~ - g)}.
  double deck_eigen_error() const;
  /// Distance of M (base lattice generators) to the cover lattice.
  double pullback_lattice_error() const;

 private:
  std::vector<cplx> f1_, f2_;
  cplx a_, b_, s_;
  Jacobian base_, cover_;
  PrimeForm base_E_, cover_E_;
  CMatrix S_, T_, M_;
  CVector c_sigma_, base_offset_, v_L_, pulled_b1_;
};

/// gamma_* of a rank r~, degree d~ bundle: d~ - r~ (g~ - 1 - n (g - 1)) for n = 2.
/// Returns false unless g~ = 2(g - 1) + 1 and the formula agrees with the
/// split computation deg N + deg(N (x) L) for the pullback of a degree d~/2
/// line bundle (when r~ = 1 and d~ is even).
bool check_pushforward_degree(int g, int g_cover, int d_cover, int r_cover, int* degree_out = nullptr);

/// Samples for the covering checks: `count` configurations of 2m cover
/// points (x~_1, y~_1, ...), regular for both the base and the cover.
std::vector<std::vector<CurvePoint>> draw_cover_samples(const DoubleCover& c, int m, int count, std::uint64_t seed);

/// rho(P, Q) = E(gamma P, gamma Q) / (E~(P, Q) E~(P, sigma Q)).  In a common
/// trivialization rho carries weight +1/2 at each point, so it is compared
/// through the cross ratio against the first sample (the reference pair):
///   kappa_s = rho(P_s, Q_s) rho(P_0, Q_0) / (rho(P_s, Q_0) rho(P_0, Q_s)),
/// after removing the automorphy factor exp(2 pi i A~(P)^T B A~(Q)) that comes
/// from the cover period basis not being adapted to gamma.  B is fixed by the
/// lattice coordinates of T and S on the cover lattice generators.
/// Residual |kappa_s - 1| over s >= 1; samples are (P, Q) pairs.
IdentityReport check_prime_form_pullback(const DoubleCover& c, const std::vector<std::vector<CurvePoint>>& samples,
                                         double tolerance);

/// theta(N (x) O(Z)) theta(N L (x) O(Z)) / (theta(N) theta(N L)) against
/// theta~(gamma^* N (x) gamma^* O(Z)) / theta~(gamma^* N), Z = sum gamma x~_i - gamma y~_i,
/// with theta characteristic eta (the base prime form's) and gamma^* eta on the cover.
/// The base side is multiplied by exp(i pi w^T Q w + 2 pi i l^T w), w = A(Z),
/// the exact ratio of the automorphy factors of both sides (Q, l from the
/// lattice coordinates of M); N must have degree 0.
IdentityReport check_direct_image(const DoubleCover& c, const JacobianPoint& N,
                                  const std::vector<std::vector<CurvePoint>>& samples, double tolerance);

/// theta~(gamma^* M (sum x~_i - y~_i)) / theta~(gamma^* M) prod_{i<j} E~(x_i, s x_j) E~(y_i, s y_j)
/// against theta(M(sum gamma x~_i - gamma y~_i)) / theta(M) prod_{i,j} E~(x_i, s y_j)  (r = 1, n = 2).
/// The right side carries an extra weight -1/2 at every point, so both sides
/// are compared through the cross ratio in the y-configurations against the
/// first sample, after removing the bilinear automorphy factor.
IdentityReport check_inverse_image(const DoubleCover& c, const JacobianPoint& M,
                                   const std::vector<std::vector<CurvePoint>>& samples, double tolerance);

}  // namespace thetakit
