#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lhsnul/lattice.hpp"
#include "lhsnul/lattice_series.hpp"
#include "lhsnul/orthopoly.hpp"

namespace lhsnul {

/// A D S = B E_1 S E_2 S + C M S + D with A != 0. B = 0 is the semi-classical case.
struct RiccatiData {
  Poly A;
  Poly B;
  Poly C;
  Poly D;

  bool semi_classical() const { return B.is_zero(); }
  /// max{deg A - 2, deg B - 2, deg C - 1}; also the highest power carried by
  /// the residual once D is consistent.
  int theta_degree_bound() const;
  bool is_rational() const;

  friend bool operator==(const RiccatiData&, const RiccatiData&) = default;
};

/// Equal up to a common nonzero factor.
bool projectively_equal(const RiccatiData& a, const RiccatiData& b);

/// A D S - B E_1 S E_2 S - C M S - D with its valid window. An exact S needs N.
/// Throws InsufficientTruncation when the window does not reach the top
/// power of the equation.
LaurentSeries riccati_residual(const Lattice& L, const RiccatiData& R, const LaurentSeries& S,
                               std::optional<int> N = {}, Exec exec = Exec::parallel);

/// u_0 .. u_{count-1} with u_0 = 1, matching coefficients of x^(e - m) for
/// m = 0, 1, ... where e = theta_degree_bound(). That equation is affine in
/// u_m. Powers above e and the power e itself are constraints on the data.
///
/// Throws Inconsistent(power) on a violated constraint and FreeParameter(m)
/// when u_m drops out and no value is supplied in `free_values`.
std::vector<Rational> solve_moments_from_riccati(const Lattice& L, const RiccatiData& R, int count,
                                                 const std::map<int, Rational>& free_values = {},
                                                 Exec exec = Exec::parallel);

struct DegreeBounds {
  int a = 4;
  int b = 4;
  int c = 4;
  int d = 4;

  int unknowns() const { return a + b + c + d + 4; }
  static DegreeBounds covering(const RiccatiData& R, DegreeBounds floor);
};

/// Basis of all (A, B, C, D) within the bounds whose residual vanishes on the
/// window of S. Every returned vector has A != 0; empty when no such vector
/// exists. The basis may have several elements: x (A, B, C, D) solves too
/// when the bounds allow it.
std::vector<RiccatiData> fit_riccati(const Lattice& L, const LaurentSeries& S, DegreeBounds bounds,
                                     std::optional<int> N = {}, Exec exec = Exec::parallel);

/// Whether R lies in the span of `basis` (all within `bounds`).
bool in_span(const std::vector<RiccatiData>& basis, const RiccatiData& R, DegreeBounds bounds);

/// l_n, pi_n, Theta_n, hat Theta_n for n = -1 .. max_level.
struct StructureCoeffs {
  std::vector<Poly> l;
  std::vector<Poly> pi;
  std::vector<Poly> theta;
  std::vector<Poly> theta_hat;

  int max_level() const { return static_cast<int>(l.size()) - 2; }
  const Poly& l_at(int n) const { return l.at(static_cast<std::size_t>(n + 1)); }
  const Poly& pi_at(int n) const { return pi.at(static_cast<std::size_t>(n + 1)); }
  const Poly& theta_at(int n) const { return theta.at(static_cast<std::size_t>(n + 1)); }
  const Poly& theta_hat_at(int n) const { return theta_hat.at(static_cast<std::size_t>(n + 1)); }
  void push(Poly l_n, Poly pi_n, Poly theta_n, Poly theta_hat_n);
};

/// l_{-1} = C/2, pi_{-1} = 0, Theta_{-1} = hat Theta_{-1} = D.
StructureCoeffs initial_structure_coeffs(const RiccatiData& R);

/// A_n = A + 2 r pi_{n-1}, n >= 0.
Poly gathered_A(const Lattice& L, const RiccatiData& R, const StructureCoeffs& c, int n);

/// Levels -1 .. max_level from the polynomials alone: for n >= 1
///   hat Theta_{n-1} = -A D P1_{n-1} E_1 P_n + A D P_n E_1 P1_{n-1} + B E_1 P1_{n-1} E_2 P1_{n-1}
///                     + C/2 (E_1 P1_{n-1} E_2 P_n + E_1 P_n E_2 P1_{n-1}) + D E_1 P_n E_2 P_n
/// must be free of sqrt(r) and of degree <= theta_degree_bound(); then
///   Theta_{n-1} = hat Theta_{n-1} / (gamma_0 ... gamma_{n-1}),
///   l_{n-1} + 2 sqrt(r) pi_{n-1}
///     = (A D P_n + C/2 E_2 P_n + B E_2 P1_{n-1} - Theta_{n-1} E_1 P_{n-1}) / E_1 P_n.
/// Needs data.n_max >= max_level + 1. Throws NotLaguerreHahn, DegreeBoundExceeded
/// or DivisionNotExact with the failing level.
StructureCoeffs structure_coeffs_direct(const Lattice& L, const RiccatiData& R, const SMOPData& data,
                                        int max_level, Exec exec = Exec::parallel);

/// Residuals of the two structure relations at n >= 1 (level n - 1):
///   A D P_n      - [(l +- 2 sqrt(r) pi) E_i P_n - C/2 E_k P_n - B E_k P1_{n-1} + Theta E_i P_{n-1}]
///   A D P1_{n-1} - [(l +- 2 sqrt(r) pi) E_i P1_{n-1} + C/2 E_k P1_{n-1} + D E_k P_n + Theta E_i P1_{n-2}]
/// with (i, k, +) = (1, 2, +) for variant 1 and (2, 1, -) for variant 2.
std::pair<SurdPoly, SurdPoly> verify_structure_relations(const Lattice& L, const RiccatiData& R, const SMOPData& data,
                                                         const StructureCoeffs& c, int n, int variant);

/// Shared series of S used by the series checks.
class SeriesContext {
 public:
  SeriesContext(const Lattice& L, const LaurentSeries& S, Exec exec = Exec::parallel);

  const Lattice& lattice() const { return *L_; }
  const LaurentSeries& S() const { return S_; }
  const ShiftedSeries& shifted() const { return sh_; }
  const LaurentSeries& sqrt_r() const { return sqrt_r_; }
  Exec exec() const { return exec_; }

  /// q_n = P_n S - P1_{n-1}, q_{-1} = 1.
  LaurentSeries q(const SMOPData& data, int n) const;
  /// D q_n and M q_n through the product rules with D S and M S.
  LaurentSeries Dq(const SMOPData& data, int n) const;
  LaurentSeries Mq(const SMOPData& data, int n) const;
  /// E_j q_n = M q_n -+ sqrt(r) D q_n.
  LaurentSeries Eq(const SMOPData& data, int n, int j) const;

 private:
  const Lattice* L_;
  LaurentSeries S_;
  ShiftedSeries sh_;
  LaurentSeries sqrt_r_;
  Exec exec_;
};

/// Residuals of the second-kind relations at n >= 0:
///   A D q_n - (l_{n-1} +- 2 sqrt(r) pi_{n-1}) E_i q_n - (B E_i S + C/2) E_k q_n - Theta_{n-1} E_i q_{n-1}
/// (i, k, +) = (1, 2, +) for variant 1, (2, 1, -) for variant 2. Throws
/// InsufficientTruncation when S is known through fewer than 2n + 1 moments.
std::pair<LaurentSeries, LaurentSeries> verify_second_kind_relations(const SeriesContext& ctx, const RiccatiData& R,
                                                                     const SMOPData& data, const StructureCoeffs& c,
                                                                     int n);

/// Residuals of
///   A_{n+1} D P_{n+1}  = (l_n - C/2) M P_{n+1} - B M P1_n + Theta_n M P_n,
///   A_{n+1} D P1_n     = (l_n + C/2) M P1_n + D M P_{n+1} + Theta_n M P1_{n-1},
///   A_n D q_n = (l_{n-1} + C/2) M q_n + B (2 M S M q_n - M(S q_n)) + Theta_{n-1} M q_{n-1}.
struct GatheredResiduals {
  Poly p;
  Poly p1;
  LaurentSeries q;
};
GatheredResiduals gathered_relations(const SeriesContext& ctx, const RiccatiData& R, const SMOPData& data,
                                     const StructureCoeffs& c, int n);

struct StructureLevel {
  Poly l;
  Poly pi;
  Poly theta;
};

/// Level 0 from the closed forms: pi_0 = -D/2, l_0 = -M(x - beta_0) D - C/2,
/// Theta_0 = A - r D - (l_0 - C/2) M(x - beta_0) + B.
StructureLevel recursion_level_zero(const Lattice& L, const RiccatiData& R, const SMOPData& data);

/// Level n + 1 from levels <= n (n >= 0):
///   pi_{n+1}    = -pi_n - Theta_n/(2 gamma_{n+1}) - sum_{k=0}^{n} Theta_{k-1}/gamma_k
///   l_{n+1}     = -l_n - M(x - beta_{n+1}) Theta_n / gamma_{n+1}
///   Theta_{n+1} = A + 2r (pi_n + pi_{n-1})
///                 + Theta_{n-1}/gamma_n (gamma_{n+1} - r - M(x - beta_n) M(x - beta_{n+1}))
///                 + Theta_n/gamma_{n+1} ((p - beta_{n+1})^2 - r) + M(x - beta_{n+1}) (l_n - l_{n-1}).
StructureLevel recursion_step(const Lattice& L, const RiccatiData& R, const SMOPData& data, const StructureCoeffs& c,
                              int n);

/// Levels -1 .. max_level by the recursion alone.
StructureCoeffs recursion_coeffs(const Lattice& L, const RiccatiData& R, const SMOPData& data, int max_level);

/// T_n = pi_n + pi_{n-1} + Theta_{n-1}/(2 gamma_n) must equal
/// -sum_{k=0}^{n-1} Theta_{k-1}/gamma_k; returns the difference (n >= 0).
Poly telescope_T_defect(const StructureCoeffs& c, const SMOPData& data, int n);
/// L_n = l_n + l_{n-1} + M(x - beta_n) Theta_{n-1}/gamma_n, which must vanish (n >= 0).
Poly telescope_L(const Lattice& L, const StructureCoeffs& c, const SMOPData& data, int n);

/// Riccati data of g_n = q_{n+1}/q_n:
///   A_n = A + 2r (pi_n + pi_{n-1} - Theta_{n-1}/(2 gamma_n)),  B_n = Theta_{n-1}/gamma_n,
///   C_n = l_n - l_{n-1} - M(x - beta_n) Theta_{n-1}/gamma_n,   D_n = Theta_n.
struct MagnusRiccatiData {
  int level = 0;
  Poly A;
  Poly B;
  Poly C;
  Poly D;
  Poly rho = Poly::constant(1);

  friend bool operator==(const MagnusRiccatiData& a, const MagnusRiccatiData& b) {
    return a.level == b.level && a.A == b.A && a.B == b.B && a.C == b.C && a.D == b.D;
  }
};

MagnusRiccatiData magnus_data(const Lattice& L, const RiccatiData& R, const SMOPData& data, const StructureCoeffs& c,
                              int n);

/// A' = rho (A_n - 2r D_n/gamma),  B' = rho D_n/gamma,
/// C' = rho (-C_n - 2 M(x - beta) D_n/gamma),
/// D' = rho (A_n + gamma B_n + M(x - beta) C_n + ((p - beta)^2 - r) D_n/gamma)
/// with beta = beta_{n+1}, gamma = gamma_{n+1}.
MagnusRiccatiData magnus_step(const Lattice& L, const MagnusRiccatiData& M, const Rational& beta, const Rational& gamma,
                              const Poly& rho = Poly::constant(1));

/// Residual of A_n D g - B_n E_1 g E_2 g - C_n M g - D_n for g = q_{n+1}/q_n.
LaurentSeries magnus_riccati_residual(const SeriesContext& ctx, const SMOPData& data, const MagnusRiccatiData& M);

/// Differences between the computed levels -1, 0 and their closed forms,
/// by name ("l_-1", "pi_-1", "Theta_-1", "pi_0", "l_0", "Theta_0").
std::vector<std::pair<std::string, Poly>> initial_condition_defects(const Lattice& L, const RiccatiData& R,
                                                                    const SMOPData& data, const StructureCoeffs& c);

/// Reads C = 2 l_{-1}, D = Theta_{-1}, A + B from level 0 and separates A from
/// B with the gathered P relation at n = 1:
///   A M(x - beta_0) = K_1 - K_0 M P1_1,
///   K_0 = Theta_0 + r D + (l_0 - C/2) M(x - beta_0),
///   K_1 = (l_1 - C/2) M P_2 + Theta_1 M P_1 - 2 r pi_1 D P_2.
/// Throws InputError when pi_{-1} != 0 or levels are missing, Underdetermined
/// when M(x - beta_0) vanishes.
RiccatiData reconstruct_riccati(const Lattice& L, const StructureCoeffs& c, const SMOPData& data);

}  // namespace lhsnul
