#include "gkv/localarith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gkv {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kUnitTol = 1e-9;

long ipow_long(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

long mulmod(long a, long b, long m) {
  return static_cast<long>(static_cast<__int128>(a) * b % m);
}

long powmod(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
  }
  return r;
}

// Smallest primitive root mod p that stays primitive mod every p^n.
long unit_generator(long p) {
  std::vector<long> ell;
  long t = p - 1;
  for (long d = 2; d * d <= t; ++d)
    if (t % d == 0) {
      ell.push_back(d);
      while (t % d == 0) t /= d;
    }
  if (t > 1) ell.push_back(t);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long d : ell)
      if (powmod(g, (p - 1) / d, p) == 1) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (powmod(g, p - 1, p * p) == 1) return g + p;
    return g;
  }
  throw InternalError("no primitive root mod " + std::to_string(p));
}

bool near_one(ComplexVal z) { return std::abs(z - ComplexVal(1.0, 0.0)) < kUnitTol; }

void require_unit_modulus(ComplexVal z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
      std::abs(std::abs(z) - 1.0) > kUnitTol)
    throw BadInput("generator image is not on the unit circle");
}

ComplexVal cpow_int(ComplexVal z, long e) {
  if (e < 0) return cpow_int(ComplexVal(1.0, 0.0) / z, -e);
  ComplexVal r(1.0, 0.0);
  for (; e > 0; e >>= 1) {
    if (e & 1) r *= z;
    z *= z;
  }
  return r;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void require_prime(long p) {
  if (!is_prime(p)) throw BadInput(std::to_string(p) + " is not prime");
}

}  // namespace

LocalChar::LocalChar(long p, ComplexVal value_on_p) {
  require_prime(p);
  require_unit_modulus(value_on_p);
  p_ = p;
  cond_exp_ = 0;
  modulus_ = p;
  value_on_p_ = value_on_p;
  build_table();
}

LocalChar::LocalChar(long p, int cond_exp, std::vector<ComplexVal> unit_values,
                     ComplexVal value_on_p) {
  require_prime(p);
  require_unit_modulus(value_on_p);
  if (cond_exp < 0) throw BadInput("negative conductor exponent");
  for (ComplexVal z : unit_values) require_unit_modulus(z);
  p_ = p;
  cond_exp_ = cond_exp;
  modulus_ = ipow_long(p, std::max(cond_exp, 1));
  value_on_p_ = value_on_p;
  unit_values_ = std::move(unit_values);

  std::size_t want = 0;
  if (cond_exp_ >= 1) want = (p_ == 2) ? (cond_exp_ >= 3 ? 2 : cond_exp_ - 1) : 1;
  if (unit_values_.size() != want)
    throw BadInput("wrong number of generator images");

  build_table();
  check_primitive();
}

void LocalChar::build_table() {
  table_.assign(modulus_, ComplexVal(0.0, 0.0));
  if (cond_exp_ == 0) {
    for (long u = 1; u < modulus_; ++u)
      if (u % p_ != 0) table_[u] = ComplexVal(1.0, 0.0);
    return;
  }
  if (p_ == 2) {
    if (cond_exp_ == 1)
      throw BadInput("the units mod 2 have no nontrivial character");
    ComplexVal eps = unit_values_[0];
    if (std::abs(eps * eps - ComplexVal(1.0, 0.0)) > kUnitTol)
      throw BadInput("image of -1 must square to 1");
    if (cond_exp_ == 2) {
      table_[1] = ComplexVal(1.0, 0.0);
      table_[3] = eps;
      return;
    }
    long e5 = ipow_long(2, cond_exp_ - 2);
    double theta = std::arg(unit_values_[1]);
    if (!near_one(std::polar(1.0, theta * e5)))
      throw BadInput("image of 5 must be a 2-power root of unity");
    long x = 1;
    for (long j = 0; j < e5; ++j) {
      ComplexVal v = std::polar(1.0, theta * static_cast<double>(j));
      table_[x] = v;
      table_[modulus_ - x] = eps * v;
      x = mulmod(x, 5, modulus_);
    }
    if (x != 1) throw InternalError("unit group enumeration did not close");
    return;
  }
  long e = modulus_ / p_ * (p_ - 1);
  long g = unit_generator(p_);
  double theta = std::arg(unit_values_[0]);
  if (!near_one(std::polar(1.0, theta * e)))
    throw BadInput("generator image has order not dividing the unit group");
  long x = 1;
  for (long j = 0; j < e; ++j) {
    table_[x] = std::polar(1.0, theta * static_cast<double>(j));
    x = mulmod(x, g % modulus_, modulus_);
  }
  if (x != 1) throw InternalError("unit group enumeration did not close");
}

void LocalChar::check_primitive() const {
  if (cond_exp_ == 0) return;
  if (cond_exp_ == 1) {
    bool nontrivial = false;
    for (long u = 1; u < modulus_; ++u)
      if (u % p_ != 0 && !near_one(table_[u])) nontrivial = true;
    if (!nontrivial) throw BadInput("character is trivial on units");
    return;
  }
  long u = 1 + modulus_ / p_;
  if (near_one(table_[u]))
    throw BadInput("character factors through a smaller conductor");
}

LocalChar LocalChar::trivial(long p) { return LocalChar(p, ComplexVal(1.0, 0.0)); }

LocalChar LocalChar::quadratic(long p) {
  if (p == 2) throw BadInput("use the two-generator form for p = 2");
  return LocalChar(p, 1, {ComplexVal(-1.0, 0.0)}, ComplexVal(1.0, 0.0));
}

LocalChar LocalChar::from_index(long p, int n, long a, ComplexVal value_on_p) {
  if (p == 2) throw BadInput("use the two-generator form for p = 2");
  require_prime(p);
  if (n < 1) throw BadInput("from_index needs a positive conductor exponent");
  long e = ipow_long(p, n - 1) * (p - 1);
  long r = a % e;
  if (r < 0) r += e;
  double theta = kTwoPi * static_cast<double>(r) / static_cast<double>(e);
  return LocalChar(p, n, {std::polar(1.0, theta)}, value_on_p);
}

ComplexVal LocalChar::on_unit(long u) const {
  long r = u % modulus_;
  if (r < 0) r += modulus_;
  if (r % p_ == 0)
    throw BadInput("character evaluated off the unit shell");
  return table_[r];
}

LocalChar LocalChar::inverse() const {
  LocalChar inv;
  inv.p_ = p_;
  inv.cond_exp_ = cond_exp_;
  inv.modulus_ = modulus_;
  inv.value_on_p_ = std::conj(value_on_p_);
  inv.unit_values_.reserve(unit_values_.size());
  for (ComplexVal z : unit_values_) inv.unit_values_.push_back(std::conj(z));
  inv.table_.reserve(table_.size());
  for (ComplexVal z : table_) inv.table_.push_back(std::conj(z));
  return inv;
}

LocalChar random_primitive_char(long p, int n, std::mt19937& rng) {
  if (n <= 0) return LocalChar::trivial(p);
  if (p == 2) {
    if (n == 1) throw BadInput("the units mod 2 have no nontrivial character");
    if (n == 2) return LocalChar(2, 2, {ComplexVal(-1.0, 0.0)}, ComplexVal(1.0, 0.0));
    std::uniform_int_distribution<int> coin(0, 1);
    ComplexVal eps(coin(rng) ? 1.0 : -1.0, 0.0);
    long e5 = ipow_long(2, n - 2);
    std::uniform_int_distribution<long> odd(0, e5 / 2 - 1);
    long b = 2 * odd(rng) + 1;
    ComplexVal z5 = std::polar(1.0, kTwoPi * static_cast<double>(b) / static_cast<double>(e5));
    return LocalChar(2, n, {eps, z5}, ComplexVal(1.0, 0.0));
  }
  long e = ipow_long(p, n - 1) * (p - 1);
  std::uniform_int_distribution<long> draw(1, e - 1);
  for (;;) {
    long a = draw(rng);
    if (n >= 2 && a % p == 0) continue;
    return LocalChar::from_index(p, n, a);
  }
}

ComplexVal psi_depth(long p, int v, long u) {
  if (v >= 0) return ComplexVal(1.0, 0.0);
  long m = ipow_long(p, -v);
  long r = u % m;
  if (r < 0) r += m;
  return std::polar(1.0, -kTwoPi * static_cast<double>(r) / static_cast<double>(m));
}

ComplexVal shell_average(const LocalChar& chi, int v) {
  long p = chi.p();
  int depth = std::max({chi.cond_exp(), -v, 1});
  long m = ipow_long(p, depth);
  ComplexVal sum(0.0, 0.0);
  long count = 0;
  for (long u = 1; u < m; ++u) {
    if (u % p == 0) continue;
    sum += chi.on_unit(u) * psi_depth(p, v, u);
    ++count;
  }
  return sum / static_cast<double>(count);
}

ComplexVal gauss_sum(const LocalChar& chi, int y_exp, bool allow_shift) {
  if (y_exp != -chi.cond_exp() && !allow_shift)
    throw BadConductorShift("y has valuation " + std::to_string(y_exp) +
                            " but the conductor pins " +
                            std::to_string(-chi.cond_exp()));
  return shell_average(chi.inverse(), y_exp);
}

namespace {

bool gamma_pole(double x) {
  return x < 0.5 && std::abs(x - std::round(x)) < 1e-9;
}

}  // namespace

ComplexVal zeta_local(ZetaKind kind, double s, long q) {
  switch (kind) {
    case ZetaKind::finite: {
      if (q < 2) throw BadInput("finite zeta factor needs a residue size");
      double t = std::pow(static_cast<double>(q), -s);
      if (std::abs(1.0 - t) < 1e-12)
        throw PoleAtS("finite zeta factor has a pole at s = " + std::to_string(s));
      return ComplexVal(1.0 / (1.0 - t), 0.0);
    }
    case ZetaKind::real_place: {
      if (gamma_pole(s / 2))
        throw PoleAtS("Gamma(s/2) pole at s = " + std::to_string(s));
      return ComplexVal(std::pow(M_PI, -s / 2) * std::tgamma(s / 2), 0.0);
    }
    case ZetaKind::complex_place: {
      if (gamma_pole(s))
        throw PoleAtS("Gamma(s) pole at s = " + std::to_string(s));
      return ComplexVal(2.0 * std::pow(kTwoPi, -s) * std::tgamma(s), 0.0);
    }
  }
  throw InternalError("unreachable zeta kind");
}

ComplexVal kirillov_newvector(const SatakeData& data, int y_valuation) {
  switch (data.kind) {
    case NewvectorKind::spherical: {
      if (y_valuation < 0) return ComplexVal(0.0, 0.0);
      ComplexVal sum(0.0, 0.0);
      for (int k = 0; k <= y_valuation; ++k)
        sum += cpow_int(data.alpha, 2 * k - y_valuation);
      return std::pow(static_cast<double>(data.p), -y_valuation / 2.0) * sum;
    }
    case NewvectorKind::steinberg: {
      if (y_valuation < 0) return ComplexVal(0.0, 0.0);
      return std::pow(static_cast<double>(data.p), -y_valuation / 2.0) *
             cpow_int(data.alpha, y_valuation);
    }
    case NewvectorKind::supercuspidal_like:
      return ComplexVal(y_valuation == 0 ? 1.0 : 0.0, 0.0);
  }
  throw InternalError("unreachable newvector kind");
}

ComplexVal local_L(const SatakeData& data,
                   const std::optional<LocalChar>& twist, double s) {
  if (twist && !twist->unramified()) return ComplexVal(1.0, 0.0);
  if (data.kind == NewvectorKind::supercuspidal_like) return ComplexVal(1.0, 0.0);
  ComplexVal rp = twist ? twist->value_on_p() : ComplexVal(1.0, 0.0);
  double qs = std::pow(static_cast<double>(data.p), -s);
  ComplexVal f1 = ComplexVal(1.0, 0.0) - rp * data.alpha * qs;
  if (data.kind == NewvectorKind::steinberg) {
    if (std::abs(f1) < 1e-12)
      throw PoleAtS("Euler factor vanishes at s = " + std::to_string(s));
    return ComplexVal(1.0, 0.0) / f1;
  }
  ComplexVal f2 = ComplexVal(1.0, 0.0) - rp * (ComplexVal(1.0, 0.0) / data.alpha) * qs;
  if (std::abs(f1) < 1e-12 || std::abs(f2) < 1e-12)
    throw PoleAtS("Euler factor vanishes at s = " + std::to_string(s));
  return ComplexVal(1.0, 0.0) / (f1 * f2);
}

ComplexVal twisted_local_integral(const SatakeData& data, const LocalChar& rho,
                                  int truncation) {
  if (truncation < 1) throw BadInput("at least one valuation shell is needed");
  if (rho.p() != data.p) throw BadInput("twist lives at a different prime");
  int ce = rho.cond_exp();
  ComplexVal lhs(0.0, 0.0);
  ComplexVal rho_pn(1.0, 0.0);
  for (int n = 0; n < truncation; ++n) {
    lhs += rho_pn * kirillov_newvector(data, n) * shell_average(rho, n - ce);
    rho_pn *= rho.value_on_p();
  }
  ComplexVal rhs = gauss_sum(rho.inverse(), -ce) * local_L(data, rho, 0.5);
  double root = std::pow(static_cast<double>(data.p), -0.5);
  double bound = std::pow(root, truncation) / (1.0 - root) +
                 1e-12 * (1.0 + std::abs(rhs));
  if (std::abs(lhs - rhs) > bound)
    throw TruncationTooSmall("truncated integral misses its closed form by " +
                             std::to_string(std::abs(lhs - rhs)));
  return lhs;
}

CKConstants constants_CK(const std::vector<long>& k, const std::vector<long>& m,
                         int r1_in_B, int r2, int r1_outside_B) {
  if (r1_in_B < 0 || r2 < 0 || r1_outside_B < 0)
    throw BadInput("negative place count");
  if (k.size() != m.size())
    throw BadInput("weight and twist vectors differ in length");
  if (k.size() != static_cast<std::size_t>(r1_in_B + r1_outside_B + 2 * r2))
    throw BadInput("weight vector does not match the place counts");

  long sign_exp = 0;
  ComplexVal prod(1.0, 0.0);
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 2 || k[i] % 2 != 0) throw BadInput("weights must be even and >= 2");
    if (std::abs(2 * m[i]) > k[i] - 2)
      throw BadIndex("twist index out of the discrete series range");
    if (i >= static_cast<std::size_t>(r1_in_B)) sign_exp += (k[i] - 2) / 2;
    double num = std::tgamma(k[i] / 2.0 - m[i]) * std::tgamma(k[i] / 2.0 + m[i]);
    double den = std::pow(kTwoPi, static_cast<double>(k[i]));
    double ms = (m[i] % 2 != 0) ? -1.0 : 1.0;
    prod *= ComplexVal(ms * num / den, 0.0);
  }
  double lead = std::pow(4.0, r1_in_B + 2 * r2) * std::pow(M_PI, -r1_outside_B);
  double csign = (sign_exp % 2 != 0) ? -1.0 : 1.0;

  CKConstants out;
  out.C = csign * lead * prod;
  out.K = std::pow(3.0, r2) * cpow_int(ComplexVal(0.0, 2.0), r1_in_B) /
          ComplexVal(std::pow(2.0 * M_PI * M_PI, r1_outside_B + r2) *
                         std::pow(M_PI, r1_in_B),
                     0.0);
  return out;
}

}  // namespace gkv
