#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gkv/multipoly.hpp"
#include "gkv/vkdual.hpp"

namespace gkv {

// Complex conjugation on the coefficient field: fixes the rationals, negates
// the generator of Q(i), inverts the generator of Q(z8).
NFElem conj_c(const NFElem& x);
// Entrywise conjugation.
Mat2 conj_mat(const Mat2& g);

// The unit quaternion (a, b; -conj(b), conj(a)) as a matrix.  BadInput unless
// |a|^2 + |b|^2 = 1.
Mat2 su2_point(const NFElem& a, const NFElem& b);

// Unitary character of the diagonal torus at the complex place, written
// chi(r e^(i t)) = r^N e^(i lambda t).  The pair of even weights (k_id, k_c)
// attaches the character with N = (k_id + k_c)/2 and lambda = (k_id - k_c)/2;
// its model vectors carry the radial factor r^(2N).
struct CharC {
  int N = 0;
  int lambda = 0;

  static CharC for_weights(int k_id, int k_c);  // BadWeight unless both even >= 2
  // The companion character whose induced model maps onto this one through
  // the level-wise binomial intertwiner of psi_intertwine_check.
  CharC hat() const { return {lambda + 1, N - 1}; }

  friend bool operator==(CharC x, CharC y) {
    return x.N == y.N && x.lambda == y.lambda;
  }
  friend bool operator!=(CharC x, CharC y) { return !(x == y); }
};

// Function on the unit sphere |alpha|^2 + |beta|^2 = 1 scaled by a formal
// power of the radial coordinate: r^r_exp p(alpha, beta, conj alpha,
// conj beta) with p in the sphere ring, kept in normal form.  A zero p
// matches any r_exp.
struct SpherePoly {
  int r_exp = 0;
  MultiPoly p;

  bool is_zero() const { return p.is_zero(); }

  SpherePoly operator-() const;
  SpherePoly& operator+=(const SpherePoly& o);  // BadInput on r_exp mismatch
  SpherePoly& operator-=(const SpherePoly& o);
  SpherePoly& operator*=(const NFElem& s);
  friend SpherePoly operator+(SpherePoly a, const SpherePoly& b) { return a += b; }
  friend SpherePoly operator-(SpherePoly a, const SpherePoly& b) { return a -= b; }
  friend SpherePoly operator*(SpherePoly a, const NFElem& s) { return a *= s; }
  friend SpherePoly operator*(const NFElem& s, SpherePoly a) { return a *= s; }
  friend bool operator==(const SpherePoly& a, const SpherePoly& b);
  friend bool operator!=(const SpherePoly& a, const SpherePoly& b) { return !(a == b); }
};

// Finitely supported sum over levels n >= |lambda| of phi_n(mu_n), stored by
// the weight-2n functionals mu_n.  Zero functionals are dropped, so map
// equality is equality in the induced model.
struct PhiVec {
  FieldPtr F;
  CharC chi;
  std::map<int, VkDual> c;

  PhiVec() = default;
  PhiVec(FieldPtr F_, CharC chi_) : F(std::move(F_)), chi(chi_) {}

  // Adds phi_n(mu) to the sum.  BadLevel for n < |lambda|, WeightMismatch
  // unless mu has weight 2n.
  void add(int n, const VkDual& mu);
  // Stored functional at level n, zero functional when absent.
  VkDual coeff(int n) const;
  bool is_zero() const { return c.empty(); }

  PhiVec operator-() const;
  PhiVec& operator+=(const PhiVec& o);  // BadInput on character mismatch
  PhiVec& operator-=(const PhiVec& o);
  PhiVec& operator*=(const NFElem& s);
  friend PhiVec operator+(PhiVec a, const PhiVec& b) { return a += b; }
  friend PhiVec operator-(PhiVec a, const PhiVec& b) { return a -= b; }
  friend PhiVec operator*(PhiVec a, const NFElem& s) { return a *= s; }
  friend PhiVec operator*(const NFElem& s, PhiVec a) { return a *= s; }
  friend bool operator==(const PhiVec& a, const PhiVec& b);
  friend bool operator!=(const PhiVec& a, const PhiVec& b) { return !(a == b); }
};

// The level-n vector of the model of chi attached to a weight-2n functional:
//   phi_n(mu) = r^(2N) mu((alpha y - beta x)^(n+lambda)
//                         (-conj(beta) y - conj(alpha) x)^(n-lambda)),
// the functional applied to the coefficients of the (x, y)-expansion.
// BadLevel for n < |lambda|, WeightMismatch on a wrong-weight functional.
SpherePoly phi_expand(int n, const VkDual& mu, CharC chi);
SpherePoly phi_expand(const PhiVec& v);

// Right translation by the unit quaternion (a, b): substitutes
// alpha -> a alpha - conj(b) beta, beta -> b alpha + conj(a) beta and the
// conjugate pair accordingly.  BadInput unless |a|^2 + |b|^2 = 1.
SpherePoly sphere_translate(const SpherePoly& f, const NFElem& a, const NFElem& b);

// The diagonal generator (1,0;0,-1) as a first-order operator on vectors of
// the model with radial exponent 2N: the radial part contributes
// 2N(|alpha|^2 - |beta|^2) f, the sphere part
//   -2 alpha |beta|^2 d/dalpha - 2 conj(alpha) |beta|^2 d/dconj(alpha)
//   + 2 beta |alpha|^2 d/dbeta + 2 conj(beta) |alpha|^2 d/dconj(beta).
// The derivation annihilates the sphere relation, so the value does not
// depend on the representative.
SpherePoly hatH_oracle(const SpherePoly& f, int N);

// The same operator level by level:
//   Hhat phi_n(mu) = lambda(N-1) phi_n(mu_0) - (N+n) phi_(n+1)(mu_1)
//                    + (n+lambda)(n-lambda)(n-N+1) phi_(n-1)(mu_-1)
// with mu_0(P) = mu(y dP/dy - x dP/dx) / (n(n+1)),
//      mu_1(P) = 2 mu(d^2P/dxdy) / ((n+1)(2n+1)),
//      mu_-1(P) = 2 mu(x y P) / (n(2n+1)).
// Integer prefactors are evaluated first and a vanishing one short-circuits
// the 1/n factors at n = 0.  Every call checks its output against
// hatH_oracle on the sphere expansions; FormulaMismatch on disagreement.
PhiVec hatH_recurrence(const PhiVec& v);

// Exact average over the unit sphere of the monomial
// alpha^n1 beta^m1 conj(alpha)^n2 conj(beta)^m2: zero unless n1 = n2 and
// m1 = m2, else 1 / ((n1+m1+1) binom(n1+m1, n1)).
Rational moment_su2(int n1, int m1, int n2, int m2);

// Linear extension of moment_su2 to a polynomial in four variables read in
// the order alpha, beta, conj(alpha), conj(beta).  The value is constant on
// classes modulo the sphere relation, so normal forms and raw representatives
// average alike.  BadInput unless the ring has exactly four variables.
NFElem moment_average(const MultiPoly& p);
NFElem moment_average(const SpherePoly& f);  // radial factor read at r = 1

// Functional on the tensor of two polynomial spaces of weights w1 and w2,
// stored by its values on monomial pairs: at(i, j) is the value on
// X^i Y^(w1-i) tensor X^j Y^(w2-j).  The container itself is symmetric in
// the two slots; kappa_act_pair and lie_act_pair below act on the first slot
// directly and on the second through the conjugated matrix, which is how the
// (k_id, k_c) pair spaces transform.
struct PairDual {
  FieldPtr F;
  int w1 = -1, w2 = -1;
  MatrixNF m;

  PairDual() = default;
  PairDual(FieldPtr F_, int w1_, int w2_);
  static PairDual pure(const VkDual& a, const VkDual& b);

  NFElem& at(int i, int j) { return m.at(i, j); }
  const NFElem& at(int i, int j) const { return m.at(i, j); }
  bool is_zero() const;

  PairDual operator-() const;
  PairDual& operator+=(const PairDual& o);
  PairDual& operator-=(const PairDual& o);
  PairDual& operator*=(const NFElem& s);
  friend PairDual operator+(PairDual a, const PairDual& b) { return a += b; }
  friend PairDual operator-(PairDual a, const PairDual& b) { return a -= b; }
  friend PairDual operator*(PairDual a, const NFElem& s) { return a *= s; }
  friend PairDual operator*(const NFElem& s, PairDual a) { return a *= s; }
  friend bool operator==(const PairDual& a, const PairDual& b);
  friend bool operator!=(const PairDual& a, const PairDual& b) { return !(a == b); }
};

// Group and Lie actions on pair functionals: g on the first slot, conj(g) on
// the second; X as a derivation, X on the first slot plus conj(X) on the
// second.
PairDual kappa_act_pair(const Mat2& g, const PairDual& mu);
PairDual lie_act_pair(const Mat2& X, const PairDual& mu);

// The equivariant contraction of a pair functional onto a single weight-2n
// functional: mu applied to the pair coefficients of
//   (X1 y - Y1 x)^(n+lambda) (-Y2 y - X2 x)^(n-lambda) (X1 X2 + Y1 Y2)^(N-2-n),
// read back through the identification of dual_iso_inv.  Needs
// |lambda| <= n <= N-2 (BadLevel otherwise); the slot weights must be
// k_id - 2 and k_c - 2 for the weights behind chi (WeightMismatch).
VkDual pair_to_level(int n, const PairDual& mu, CharC chi);

// t -> t(d^2P/dxdy), raising the weight by two.
VkDual pullback_dxdy(const VkDual& t);

// Restriction to the sphere and its equivariant section.  rho averages the
// expansion against the slot monomials evaluated at (-conj(beta), conj(alpha))
// for the first slot and the conjugate point for the second; s embeds each
// isotypic level through pair_to_level and divides by the scalar with which
// rho comes back on that level.  rho_section_complex computes those scalars
// and verifies rho . s = id on the pair basis; InternalError if a scalar
// vanishes or the composite is not the identity.
struct RhoSection {
  FieldPtr F;
  int k_id = 0, k_c = 0;
  CharC chi;
  std::map<int, NFElem> inv_d;

  PairDual rho(const PhiVec& f) const;
  PhiVec section(const PairDual& mu) const;
};

RhoSection rho_section_complex(const FieldPtr& F, int k_id, int k_c);

// One half of Hhat(s mu) - s(Hhat mu), computed from first principles and
// checked against the closed form
//   -2 binom(2N-4, k_id-2) phi_(N-1)(pullback_dxdy(pair_to_level(N-2, mu)))
// before returning; FormulaMismatch on disagreement.  The second form takes
// a precomputed section.
PhiVec delta_s_complex(const PairDual& mu, int k_id, int k_c);
PhiVec delta_s_complex(const PairDual& mu, const RhoSection& rs);

// The three generators transverse to the maximal compact at the complex
// place: Hhat = (1,0;0,-1), Wtilde = (0,1;1,0), H = (0,-i;i,0).
enum class CGen { Hhat, Wtilde, H };
Mat2 cgen_matrix(CGen X, const FieldPtr& F);

// Right translation of a model vector by a unit quaternion: level-wise
// dual_act of g on the functionals.  BadInput unless g is su2_point-shaped.
PhiVec kappa_act_phi(const Mat2& g, const PhiVec& v);

// Lie action of the three generators on model vectors: Hhat through the
// recurrence, the other two by conjugating Hhat with the quarter rotations
// kappa(1/sqrt2, 1/sqrt2) and kappa(1/sqrt2, -i/sqrt2).  Those rotations need
// the eighth cyclotomic field (MissingRoot otherwise).
PhiVec lie_act_complex(CGen X, const PhiVec& v);

// Values of the two cocycles carried over to the triangular-subalgebra basis
// (Hhat, n1 = upper 1, n2 = upper i).  Each matrix lists, per pair indicator
// of V, the coefficient against the distinguished monomial of the companion
// character model: levels are divided by the binomial intertwiner and read
// off at the identity.  In that basis the contraction dual to Hhat kills n1
// and n2, so the contracted first cocycle has the values (n1, n2) -> 0,
// (n1, Hhat) -> -c1(n1), (n2, Hhat) -> -c1(n2).
struct PVReport {
  int k_id = 0, k_c = 0;
  MatrixNF c1_hath, c1_n1, c1_n2;        // first cocycle, transported
  MatrixNF c2_n1n2, c2_n1hath, c2_n2hath;  // second cocycle, transported
  int psi_unknowns = 0;      // entries of the solved one-cochain
  std::vector<NFElem> psi;   // its values on (Hhat, n1, n2), flattened
};

// Builds the second cocycle from c2(Wtilde, H) = 2 delta_s, extends it to the
// other generator pairs through the quarter-rotation conjugations, and
// verifies the three-term cocycle identity on (Hhat, Wtilde, H) with honest
// bracket terms (their transverse parts vanish).  Then both cocycles are
// transported to the triangular basis, the first is contracted against the
// functional dual to Hhat, and the difference (Hhat* c1) - i c2 is solved as
// d psi with psi a torus-equivariant one-cochain valued in the finite
// companion-character module, a finite linear system.  FormulaMismatch if
// the cocycle identity fails, PVCheckFailed if the system has no solution.
// perturb_c2 doubles c2: the double is still closed but no longer matches
// the contracted first cocycle, and the solve must then fail.
PVReport c2_and_pv_check(int k_id, int k_c, bool perturb_c2 = false);

// Sum of pure tensors of model vectors, stored per level pair: the entry at
// (n1, n2) collects sum mu1 tensor mu2 over the terms
// phi_n1(mu1) tensor phi_n2(mu2).  Both slots are plain weight-2n
// functionals here.
struct PhiTensor {
  FieldPtr F;
  CharC chi;
  std::map<std::pair<int, int>, PairDual> c;

  PhiTensor() = default;
  PhiTensor(FieldPtr F_, CharC chi_) : F(std::move(F_)), chi(chi_) {}

  void add(int n1, int n2, const PairDual& t);
  bool is_zero() const { return c.empty(); }

  friend bool operator==(const PhiTensor& a, const PhiTensor& b);
  friend bool operator!=(const PhiTensor& a, const PhiTensor& b) { return !(a == b); }
};

// The triple cup value at (Hhat, Wtilde, H) paired slot by slot against the
// invariant tensor with one upsilon factor per embedding:
//   c1(Hhat)c2(Wtilde,H) - c1(Wtilde)c2(Hhat,H) + c1(H)c2(Hhat,Wtilde),
// cross-checked against 12 times the exact sphere moment average of the
// translated delta_s tensor square and against the three-point form of that
// average (identity plus the two quarter rotations).  FormulaMismatch on any
// disagreement; the binomial intertwining gate below runs first.
PhiTensor cup3_complex(int k_id = 2, int k_c = 2);

// Checks that scaling level n of the model of hat(chi) by
// binom(n + lambda_hat, N_hat + n - 1) intertwines the two Hhat recurrences,
// for every level up to n_max and every basis functional.  offset_shift
// displaces the lower binomial index; nonzero shifts are negative controls.
bool psi_intertwine_check(int k_id, int k_c, int n_max, int offset_shift = 0);

}  // namespace gkv
