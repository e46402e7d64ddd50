#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "gkv/multipoly.hpp"
#include "gkv/numberfield.hpp"
#include "gkv/periods.hpp"

namespace gkv {

namespace {

using Mat3 = std::array<std::array<ComplexVal, 3>, 3>;

ComplexVal det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Determinant by partial-pivot LU; fine at these sizes.
ComplexVal det_lu(std::vector<std::vector<ComplexVal>> m) {
  size_t n = m.size();
  ComplexVal det = 1.0;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) == 0) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      ComplexVal f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// Matrix of X -> g X g^{-1} on trace-zero 2x2 matrices in the basis
// (diag(1,-1), E12, E21); a trace-zero M has coordinates (M00, M01, M10).
Mat3 conj_block(ComplexVal w1, ComplexVal w2, ComplexVal l1, ComplexVal l2) {
  ComplexVal g[2][2] = {{w1, l1 * w1}, {w2, l2 * w2}};
  ComplexVal det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  ComplexVal gi[2][2] = {{g[1][1] / det, -g[0][1] / det},
                         {-g[1][0] / det, g[0][0] / det}};
  const ComplexVal basis[3][2][2] = {
      {{1, 0}, {0, -1}}, {{0, 1}, {0, 0}}, {{0, 0}, {1, 0}}};
  Mat3 out{};
  for (int j = 0; j < 3; ++j) {
    ComplexVal gb[2][2] = {};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        for (int k = 0; k < 2; ++k) gb[r][c] += g[r][k] * basis[j][k][c];
    ComplexVal im[2][2] = {};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        for (int k = 0; k < 2; ++k) im[r][c] += gb[r][k] * gi[k][c];
    out[0][j] = im[0][0];
    out[1][j] = im[0][1];
    out[2][j] = im[1][0];
  }
  return out;
}

// Rational functions in (t, tau, taub) over Q(i), as reduced-enough pairs of
// polynomials; equality is cross-multiplied, so nothing here needs gcds.
struct RatFunc {
  MultiPoly num, den;
};

RatFunc rf_mul(const RatFunc& a, const RatFunc& b) {
  return {a.num * b.num, a.den * b.den};
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

bool rf_equal(const RatFunc& a, const RatFunc& b) {
  return a.num * b.den == b.num * a.den;
}

using RMat2 = std::array<std::array<RatFunc, 2>, 2>;

RMat2 rmat_mul(const RMat2& a, const RMat2& b) {
  RMat2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out[r][c] = rf_add(rf_mul(a[r][0], b[0][c]), rf_mul(a[r][1], b[1][c]));
  return out;
}

bool rmat_equal(const RMat2& a, const RMat2& b) {
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      if (!rf_equal(a[r][c], b[r][c])) return false;
  return true;
}

// The three conjugation identities for delta = [[t taub, tau], [t, 1]]:
// delta E12 delta^{-1}, delta E21 delta^{-1} and delta diag(1,-1) delta^{-1}
// all have closed forms over Q(i)(t, tau, taub); the last one is -i H with
// H = (1/Im tau) [[-Re tau, tau taub], [-1, Re tau]].
bool conjugation_identities() {
  FieldPtr F = NumberField::gaussian();
  RingPtr R = PolyRing::make(F, {"t", "tau", "taub"});
  auto C = [&](const Rational& r) { return MultiPoly::constant(R, r); };
  MultiPoly t = MultiPoly::var(R, "t");
  MultiPoly tau = MultiPoly::var(R, "tau");
  MultiPoly taub = MultiPoly::var(R, "taub");
  MultiPoly one = C(Rational(1));
  MultiPoly iu = MultiPoly::constant(R, NFElem::gen(F));
  auto P = [&](const MultiPoly& p) { return RatFunc{p, one}; };

  RMat2 delta = {{{P(t * taub), P(tau)}, {P(t), P(one)}}};
  // det delta = t (taub - tau); inverse by the adjugate.
  RatFunc det = P(t * (taub - tau));
  RMat2 delta_inv = {{{RatFunc{one, det.num}, RatFunc{C(Rational(0)) - tau, det.num}},
                      {RatFunc{C(Rational(0)) - t, det.num},
                       RatFunc{t * taub, det.num}}}};

  auto conj = [&](const RMat2& b) { return rmat_mul(rmat_mul(delta, b), delta_inv); };
  auto zero = P(C(Rational(0)));

  RMat2 e12 = {{{zero, P(one)}, {zero, zero}}};
  RMat2 e21 = {{{zero, zero}, {P(one), zero}}};
  RMat2 h = {{{P(one), zero}, {zero, RatFunc{C(Rational(0)) - one, one}}}};

  // delta E12 delta^{-1} = (-t taub / (taub - tau)) [[1, -taub], [1/taub, -1]]
  MultiPoly dtt = taub - tau;
  RMat2 rhs1 = {{{RatFunc{C(Rational(0)) - t * taub, dtt},
                  RatFunc{t * taub * taub, dtt}},
                 {RatFunc{C(Rational(0)) - t, dtt}, RatFunc{t * taub, dtt}}}};
  // delta E21 delta^{-1} = (tau / (t (taub - tau))) [[1, -tau], [1/tau, -1]]
  MultiPoly tdtt = t * dtt;
  RMat2 rhs2 = {{{RatFunc{tau, tdtt}, RatFunc{C(Rational(0)) - tau * tau, tdtt}},
                 {RatFunc{one, tdtt}, RatFunc{C(Rational(0)) - tau, tdtt}}}};
  // delta diag(1,-1) delta^{-1} = -i H: with Im tau = (tau - taub)/(2i) this
  // is (1/(taub - tau)) [[tau + taub, -2 tau taub], [2, -(tau + taub)]].
  RMat2 rhs3 = {{{RatFunc{tau + taub, dtt},
                  RatFunc{C(Rational(0)) - C(Rational(2)) * tau * taub, dtt}},
                 {RatFunc{C(Rational(2)), dtt},
                  RatFunc{C(Rational(0)) - (tau + taub), dtt}}}};
  // and the same thing must literally be -i times the matrix H built from
  // Re tau = (tau + taub)/2 and Im tau = -i (tau - taub)/2.
  MultiPoly imt = (C(Rational(0)) - iu) * (tau - taub) * Rational(1, 2);
  MultiPoly ret = (tau + taub) * Rational(1, 2);
  RMat2 mih = {{{RatFunc{(C(Rational(0)) - iu) * (C(Rational(0)) - ret), imt},
                 RatFunc{(C(Rational(0)) - iu) * tau * taub, imt}},
                {RatFunc{iu, imt},
                 RatFunc{(C(Rational(0)) - iu) * ret, imt}}}};

  return rmat_equal(conj(e12), rhs1) && rmat_equal(conj(e21), rhs2) &&
         rmat_equal(conj(h), rhs3) && rmat_equal(rhs3, mih);
}

}  // namespace

ComplexVal delta2_block_det(ComplexVal w1, ComplexVal w2, ComplexVal l1,
                            ComplexVal l2) {
  return det3(conj_block(w1, w2, l1, l2));
}

ComplexVal gamma2_block_det(ComplexVal tau, ComplexVal l1, ComplexVal l2) {
  ComplexVal dl = l2 - l1;
  ComplexVal dlb = std::conj(l2) - std::conj(l1);
  ComplexVal taub = std::conj(tau);
  double imt = tau.imag();
  double ret = tau.real();
  double at2 = std::norm(tau);
  Mat3 g = {{{-0.5 / dl, -0.5 / dlb, -ret / imt},
             {0.5 * tau / dl, 0.5 * taub / dlb, at2 / imt},
             {-0.5 / (tau * dl), -0.5 / (taub * dlb), -1.0 / imt}}};
  return det3(g);
}

bool appendixA_check(int samples, unsigned seed) {
  if (samples < 1) throw BadInput("sample count must be positive");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2 * 3.141592653589793);
  std::uniform_real_distribution<double> spread(0.3, 1.5);
  auto draw_complex = [&] {
    return std::polar(mag(rng), angle(rng));
  };
  // tau with imaginary part bounded away from zero, lambda pair bounded away
  // from collision; resampling keeps every determinant well-conditioned.
  auto draw_tau = [&] {
    for (;;) {
      ComplexVal tau = draw_complex();
      if (std::abs(tau.imag()) > 0.2) return tau;
    }
  };
  for (int s = 0; s < samples; ++s) {
    // One real-type embedding and a conjugate pair of complex ones.
    double rw1 = mag(rng), rw2 = mag(rng), rl1 = mag(rng);
    double rl2 = rl1 + spread(rng);
    ComplexVal cw1 = draw_complex(), cw2 = draw_complex();
    ComplexVal cl1 = draw_complex();
    ComplexVal cl2 = cl1 + std::polar(spread(rng), angle(rng));
    Mat3 blocks[3] = {
        conj_block(rw1, rw2, rl1, rl2),
        conj_block(cw1, cw2, cl1, cl2),
        conj_block(std::conj(cw1), std::conj(cw2), std::conj(cl1),
                   std::conj(cl2)),
    };
    std::vector<std::vector<ComplexVal>> big(9, std::vector<ComplexVal>(9, 0.0));
    for (int b = 0; b < 3; ++b)
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) big[3 * b + r][3 * b + c] = blocks[b][r][c];
    if (std::abs(det_lu(big) - 1.0) > 1e-10) return false;

    ComplexVal tau = draw_tau();
    ComplexVal l1 = draw_complex();
    ComplexVal l2 = l1 + std::polar(spread(rng), angle(rng));
    ComplexVal lhs = gamma2_block_det(tau, l1, l2);
    ComplexVal dl = l2 - l1;
    ComplexVal rhs = ComplexVal(0, -1) * tau.imag() * tau.imag() /
                     (std::norm(tau) * dl * std::conj(dl));
    if (std::abs(lhs - rhs) > 1e-10) return false;
  }
  return conjugation_identities();
}

bool appendix_conjugation_check() { return conjugation_identities(); }

}  // namespace gkv
