#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gkv/periods.hpp"

namespace gkv {

namespace {

// Minimal models whose conductors are standard table knowledge; parse() falls
// back to this when the caller passes N = 0.
struct KnownCurve {
  std::array<long, 5> a;
  long N;
};

constexpr KnownCurve kKnownCurves[] = {
    {{0, -1, 1, -10, -20}, 11},
    {{1, -1, 1, -1, -14}, 17},
    {{0, 1, 1, -9, -15}, 19},
    {{0, 1, 1, -23, -50}, 37},
    {{1, -1, 0, -2, -1}, 49},
    {{0, 1, 1, -12, -21}, 67},
};

bool is_square(long long n) {
  if (n < 0) return false;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  for (long long s = std::max(0LL, r - 2); s <= r + 2; ++s)
    if (s * s == n) return true;
  return false;
}

long mod_reduce(long long v, long p) {
  long r = static_cast<long>(v % p);
  return r < 0 ? r + p : r;
}

long powmod(long b, long e, long m) {
  long long r = 1, x = b % m;
  if (x < 0) x += m;
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<long>(r);
}

// Quadratic residue table of F_p, ones at the nonzero squares.
std::vector<char> square_table(long p) {
  std::vector<char> qr(p, 0);
  for (long x = 1; x <= (p - 1) / 2; ++x) qr[x * x % p] = 1;
  return qr;
}

// chi(g(x)) summed over one x-range, with g evaluated by cubic forward
// differences so the inner loop is three modular additions and a lookup.
long chi_sum_range(const CurveQ& E, long p, const std::vector<char>& qr,
                   long lo, long hi) {
  long b2 = mod_reduce(E.b2, p);
  long b4 = mod_reduce(E.b4, p);
  long b6 = mod_reduce(E.b6, p);
  // g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 at x = lo, then differences
  // d1 = g(x+1)-g(x), d2 = d1(x+1)-d1(x), d3 constant.
  long x = lo % p;
  long g = (4 * powmod(x, 3, p) % p + b2 * (x * x % p) % p +
            2 * b4 % p * x % p + b6) %
           p;
  long d1 = (12 * (x * x % p) % p + (12 * x + 4 + b2 * (2 * x + 1)) % p +
             2 * b4) %
            p;
  long d2 = (24 * x % p + 24 + 2 * b2) % p;
  const long d3 = 24 % p;
  long sum = 0;
  for (long i = lo; i < hi; ++i) {
    if (g != 0) sum += qr[g] ? 1 : -1;
    g = (g + d1) % p;
    d1 = (d1 + d2) % p;
    d2 = (d2 + d3) % p;
  }
  return sum;
}

long count_points_p2(const CurveQ& E) {
  long count = 1;  // point at infinity
  for (long x = 0; x < 2; ++x)
    for (long y = 0; y < 2; ++y) {
      long lhs = (y * y + E.a1 * x * y + E.a3 * y) % 2;
      long rhs = (x * x * x + E.a2 * x * x + E.a4 * x + E.a6) % 2;
      if (((lhs - rhs) % 2 + 2) % 2 == 0) ++count;
    }
  return count;
}

}  // namespace

CurveQ::CurveQ(long a1_, long a2_, long a3_, long a4_, long a6_, long N_)
    : a1(a1_), a2(a2_), a3(a3_), a4(a4_), a6(a6_), N(N_) {
  if (N < 1) throw BadModel("conductor must be a positive integer");
  b2 = static_cast<long long>(a1) * a1 + 4LL * a2;
  b4 = 2LL * a4 + static_cast<long long>(a1) * a3;
  b6 = static_cast<long long>(a3) * a3 + 4LL * a6;
  b8 = static_cast<long long>(a1) * a1 * a6 + 4LL * a2 * a6 -
       static_cast<long long>(a1) * a3 * a4 +
       static_cast<long long>(a2) * a3 * a3 -
       static_cast<long long>(a4) * a4;
  c4 = b2 * b2 - 24 * b4;
  c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  if (disc == 0) throw BadModel("singular model");
  is_square_N = is_square(N);
}

CurveQ CurveQ::parse(const std::string& csv, long N) {
  std::array<long, 5> a{};
  std::stringstream in(csv);
  std::string tok;
  size_t i = 0;
  while (std::getline(in, tok, ',')) {
    if (i >= 5) throw BadInput("curve wants five coefficients a1,a2,a3,a4,a6");
    size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(tok, &pos);
    } catch (const std::exception&) {
      throw BadInput("curve coefficient is not an integer: " + tok);
    }
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos])))
      ++pos;
    if (pos != tok.size())
      throw BadInput("curve coefficient is not an integer: " + tok);
    a[i++] = v;
  }
  if (i != 5) throw BadInput("curve wants five coefficients a1,a2,a3,a4,a6");
  if (N == 0) {
    for (const auto& kc : kKnownCurves)
      if (kc.a == a) {
        N = kc.N;
        break;
      }
    if (N == 0) throw BadModel("unknown curve, pass the conductor explicitly");
  }
  return CurveQ(a[0], a[1], a[2], a[3], a[4], N);
}

long ap_scan_serial(const CurveQ& E, long p) {
  auto qr = square_table(p);
  return -chi_sum_range(E, p, qr, 0, p);
}

long ap_scan_parallel(const CurveQ& E, long p) {
  auto qr = square_table(p);
  constexpr long kChunks = 64;
  std::array<long, kChunks> partial{};
  long width = (p + kChunks - 1) / kChunks;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long c = 0; c < kChunks; ++c) {
    long lo = c * width;
    long hi = std::min(p, lo + width);
    partial[c] = lo < hi ? chi_sum_range(E, p, qr, lo, hi) : 0;
  }
  long sum = 0;
  for (long c = 0; c < kChunks; ++c) sum += partial[c];
  return -sum;
}

long curve_ap(const CurveQ& E, long p) {
  if (p < 2) throw BadInput("a_p wants a prime");
  long ap;
  if (p == 2) {
    ap = 3 - count_points_p2(E);
  } else if (p < 512) {
    ap = ap_scan_serial(E, p);
  } else {
    ap = ap_scan_parallel(E, p);
  }
  if (E.N % p == 0) {
    bool additive = (E.N / p) % p == 0;
    if (additive) {
      if (ap != 0) throw InternalError("additive prime with nonzero a_p");
    } else if (p >= 5) {
      // Multiplicative reduction is split exactly when -c6 is a square.
      long mc6 = mod_reduce(-E.c6, p);
      long predicted = powmod(mc6, (p - 1) / 2, p) == 1 ? 1 : -1;
      if (ap != predicted)
        throw InternalError("split/nonsplit criterion disagrees with count");
    }
  }
  return ap;
}

ApTable ap_table(const CurveQ& E, long bound) {
  if (bound < 1 || bound > 1000000) throw BadInput("a_n bound out of range");
  ApTable t;
  t.an.assign(bound + 1, 0);
  if (bound >= 1) t.an[1] = 1;
  // Smallest prime factor sieve drives the multiplicative fill.
  std::vector<long> spf(bound + 1, 0);
  for (long i = 2; i <= bound; ++i) {
    if (spf[i] == 0)
      for (long j = i; j <= bound; j += i)
        if (spf[j] == 0) spf[j] = i;
  }
  for (long p = 2; p <= bound; ++p) {
    if (spf[p] != p) continue;
    t.ap[p] = curve_ap(E, p);
  }
  for (long n = 2; n <= bound; ++n) {
    long p = spf[n];
    long pr = 1, m = n;
    while (m % p == 0) {
      m /= p;
      pr *= p;
    }
    if (m > 1) {
      t.an[n] = t.an[m] * t.an[pr];
      continue;
    }
    // n = p^r: good primes follow the three-term recursion, bad primes are
    // plain powers of a_p.
    long ap = t.ap[p];
    if (n == p) {
      t.an[n] = ap;
    } else if (E.N % p == 0) {
      t.an[n] = ap * t.an[n / p];
    } else {
      t.an[n] = ap * t.an[n / p] - p * t.an[n / (p * p)];
    }
  }
  return t;
}

int kronecker_symbol(long a, long n) {
  if (n <= 0) throw BadInput("kronecker symbol wants n > 0");
  if (std::gcd(std::abs(a), n) != 1) return 0;
  int result = 1;
  // Factor out 2s from n; (a/2) depends on a mod 8.
  while (n % 2 == 0) {
    n /= 2;
    long r = ((a % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  // Jacobi symbol by quadratic reciprocity.
  long x = ((a % n) + n) % n;
  long y = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      long r = y % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

}  // namespace gkv
