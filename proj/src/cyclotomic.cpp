#include "cyclotomic.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace tvk {

long eulerPhi(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

std::vector<long> primeDivisors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

using Poly = std::vector<Rational>; // dense, low degree first

void polyTrim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a divided exactly by monic b.
Poly polyDivExact(Poly a, const Poly& b) {
    polyTrim(a);
    Poly q;
    if (a.empty()) return q;
    assert(!b.empty() && b.back() == 1);
    long db = (long)b.size() - 1;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    for (long i = (long)a.size() - 1; i >= db; --i) {
        Rational f = a[i];
        if (f == 0) continue;
        q[i - db] = f;
        for (long j = 0; j <= db; ++j) a[i - db + j] -= f * b[j];
    }
    polyTrim(a);
    assert(a.empty());
    return q;
}

// a reduced modulo monic b, in place.
void polyModInPlace(Poly& a, const Poly& b) {
    polyTrim(a);
    long db = (long)b.size() - 1;
    for (long i = (long)a.size() - 1; i >= db; --i) {
        Rational f = a[i];
        if (f == 0) continue;
        for (long j = 0; j <= db; ++j) a[i - db + j] -= f * b[j];
    }
    polyTrim(a);
}

std::mutex g_phiMutex;
std::unordered_map<long, Poly> g_phiCache;

const Poly& phiPoly(long n) {
    std::lock_guard<std::mutex> lock(g_phiMutex);
    auto it = g_phiCache.find(n);
    if (it != g_phiCache.end()) return it->second;

    std::vector<long> todo{n};
    // ensure divisors computed bottom-up
    std::function<const Poly&(long)> compute = [&](long m) -> const Poly& {
        auto found = g_phiCache.find(m);
        if (found != g_phiCache.end()) return found->second;
        Poly xm(m + 1, Rational(0)); // x^m - 1
        xm[0] = -1;
        xm[m] = 1;
        Poly acc{Rational(1)};
        for (long d = 1; d < m; ++d) {
            if (m % d == 0) {
                const Poly& pd = compute(d);
                Poly next(acc.size() + pd.size() - 1, Rational(0));
                for (size_t i = 0; i < acc.size(); ++i)
                    for (size_t j = 0; j < pd.size(); ++j) next[i + j] += acc[i] * pd[j];
                acc = std::move(next);
            }
        }
        Poly phi = polyDivExact(std::move(xm), acc);
        return g_phiCache.emplace(m, std::move(phi)).first->second;
    };
    (void)todo;
    return compute(n);
}

// columns: reduced power-basis expansions of zeta_n^{j*(n/m)}, j < phi(m)
struct DescentKey {
    long n, m;
    bool operator==(const DescentKey& o) const { return n == o.n && m == o.m; }
};
struct DescentKeyHash {
    size_t operator()(const DescentKey& k) const { return std::hash<long>()(k.n * 131 + k.m); }
};

std::mutex g_descentMutex;
std::unordered_map<DescentKey, std::vector<Poly>, DescentKeyHash> g_descentCache;

const std::vector<Poly>& descentColumns(long n, long m) {
    std::lock_guard<std::mutex> lock(g_descentMutex);
    auto it = g_descentCache.find({n, m});
    if (it != g_descentCache.end()) return it->second;
    const Poly& phi = phiPoly(n);
    long pm = eulerPhi(m);
    std::vector<Poly> cols(pm);
    for (long j = 0; j < pm; ++j) {
        Poly col(j * (n / m) + 1, Rational(0));
        col[j * (n / m)] = 1;
        polyModInPlace(col, phi);
        cols[j] = std::move(col);
    }
    return g_descentCache.emplace(DescentKey{n, m}, std::move(cols)).first->second;
}

// Solve for coefficients x with sum_j x_j * cols_j == target (exact, unique if
// solvable). Returns false if inconsistent.
bool solveInColumns(const std::vector<Poly>& cols, const Poly& target, long rows,
                    std::vector<Rational>& out) {
    long nc = (long)cols.size();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(nc + 1, Rational(0)));
    for (long j = 0; j < nc; ++j)
        for (long i = 0; i < (long)cols[j].size(); ++i) a[i][j] = cols[j][i];
    for (long i = 0; i < (long)target.size(); ++i) a[i][nc] = target[i];

    std::vector<long> pivotCol(rows, -1);
    long row = 0;
    for (long col = 0; col < nc && row < rows; ++col) {
        long pr = -1;
        for (long r = row; r < rows; ++r)
            if (a[r][col] != 0) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(a[row], a[pr]);
        Rational inv = 1 / a[row][col];
        for (long j = col; j <= nc; ++j) a[row][j] *= inv;
        for (long r = 0; r < rows; ++r) {
            if (r != row && a[r][col] != 0) {
                Rational f = a[r][col];
                for (long j = col; j <= nc; ++j) a[r][j] -= f * a[row][j];
            }
        }
        pivotCol[row] = col;
        ++row;
    }
    for (long r = row; r < rows; ++r)
        if (a[r][nc] != 0) return false;
    out.assign(nc, Rational(0));
    for (long r = 0; r < row; ++r) out[pivotCol[r]] = a[r][nc];
    return true;
}

} // namespace

const std::vector<Rational>& cyclotomicPolynomial(long n) { return phiPoly(n); }

Cyclotomic Cyclotomic::makeCanonical(long n, Poly c) {
    if (n < 1) fail(ErrorCode::InputError, "conductor must be positive");
    polyModInPlace(c, phiPoly(n));

    // normalize 2 mod 4 conductors: zeta_{2m}^e = (-1)^e zeta_m^{e(m+1)/2 mod m}
    while (n % 4 == 2) {
        long m = n / 2;
        Poly full(m, Rational(0));
        for (long e = 0; e < (long)c.size(); ++e) {
            if (c[e] == 0) continue;
            long em = ((e % m) * ((m + 1) / 2)) % m;
            if (e % 2 == 0)
                full[(e / 2) % m] += c[e];
            else if (e % 2 == 1)
                full[em] -= c[e];
        }
        n = m;
        c = std::move(full);
        polyModInPlace(c, phiPoly(n));
    }

    // fast path: rational value
    bool rationalOnly = true;
    for (size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) { rationalOnly = false; break; }
    if (n > 1 && rationalOnly) {
        Poly r{c.empty() ? Rational(0) : c[0]};
        return Cyclotomic(1, std::move(r));
    }

    // prime descents while the value is Galois-fixed over the subfield
    bool descended = true;
    while (n > 1 && descended) {
        descended = false;
        for (long p : primeDivisors(n)) {
            long m = n / p;
            long phin = eulerPhi(n);
            // check sigma_a(v) == v for all a == 1 mod m, gcd(a,n)=1, a != 1
            bool fixed = true;
            for (long a = 1 + m; a < n && fixed; a += m) {
                if (std::gcd(a, n) != 1) continue;
                Poly img(n, Rational(0));
                for (long e = 0; e < (long)c.size(); ++e) {
                    if (c[e] == 0) continue;
                    img[(e * a) % n] += c[e];
                }
                polyModInPlace(img, phiPoly(n));
                Poly cur = c;
                polyTrim(cur);
                if (img != cur) fixed = false;
            }
            if (!fixed) continue;
            Poly target = c;
            polyTrim(target);
            std::vector<Rational> x;
            if (!solveInColumns(descentColumns(n, m), target, phin, x))
                continue; // fixed field larger than Q(zeta_m); not this subfield
            n = m;
            c.assign(x.begin(), x.end());
            polyModInPlace(c, phiPoly(n));
            descended = true;
            break;
        }
        // re-normalize if the descent produced a 2 mod 4 conductor
        while (n % 4 == 2) {
            long m = n / 2;
            Poly full(m, Rational(0));
            for (long e = 0; e < (long)c.size(); ++e) {
                if (c[e] == 0) continue;
                long em = ((e % m) * ((m + 1) / 2)) % m;
                if (e % 2 == 0)
                    full[(e / 2) % m] += c[e];
                else
                    full[em] -= c[e];
            }
            n = m;
            c = std::move(full);
            polyModInPlace(c, phiPoly(n));
        }
    }

    long phin = eulerPhi(n);
    c.resize(phin, Rational(0));
    return Cyclotomic(n, std::move(c));
}

Cyclotomic Cyclotomic::zeta(long n, long e) {
    if (n < 1) fail(ErrorCode::InputError, "conductor must be positive");
    e %= n;
    if (e < 0) e += n;
    Poly c(e + 1, Rational(0));
    c[e] = 1;
    return makeCanonical(n, std::move(c));
}

bool Cyclotomic::isZero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::isOne() const {
    if (n_ != 1) return false;
    return c_[0] == 1;
}

const Rational& Cyclotomic::asRational() const {
    if (n_ != 1) fail(ErrorCode::MathError, "value is not rational: " + serialize());
    return c_[0];
}

std::vector<Rational> Cyclotomic::liftTo(long m) const {
    assert(m % n_ == 0);
    long k = m / n_;
    Poly full(eulerPhi(n_) * k + 1, Rational(0));
    for (long e = 0; e < (long)c_.size(); ++e) full[e * k] = c_[e];
    polyModInPlace(full, phiPoly(m));
    return full;
}

Cyclotomic Cyclotomic::operator-() const {
    Poly c = c_;
    for (auto& x : c) x = -x;
    return Cyclotomic(n_, std::move(c));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    long m = std::lcm(n_, o.n_);
    Poly a = liftTo(m), b = o.liftTo(m);
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return makeCanonical(m, std::move(a));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    if (isZero() || o.isZero()) return Cyclotomic();
    if (n_ == 1) { // scalar multiple
        Poly c = o.c_;
        for (auto& x : c) x *= c_[0];
        return makeCanonical(o.n_, std::move(c));
    }
    if (o.n_ == 1) return o * *this;
    long m = std::lcm(n_, o.n_);
    Poly a = liftTo(m), b = o.liftTo(m);
    polyTrim(a);
    polyTrim(b);
    if (a.empty() || b.empty()) return Cyclotomic();
    Poly prod(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
    }
    return makeCanonical(m, std::move(prod));
}

Cyclotomic Cyclotomic::inverse() const {
    if (isZero()) fail(ErrorCode::MathError, "division by zero");
    if (n_ == 1) return Cyclotomic(Rational(1 / c_[0]));
    // extended Euclid for u*a + v*Phi_n = 1 in Q[x]
    Poly a = c_;
    polyTrim(a);
    Poly r0 = phiPoly(n_), r1 = a;
    Poly s0{Rational(0)}, s1{Rational(1)}; // coefficients of `a`
    while (true) {
        polyTrim(r1);
        if (r1.empty()) fail(ErrorCode::MathError, "non-invertible element");
        if (r1.size() == 1) {
            Rational inv = 1 / r1[0];
            Poly res = s1;
            for (auto& x : res) x *= inv;
            return makeCanonical(n_, std::move(res));
        }
        // r0 = q*r1 + r2
        Poly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, Rational(0));
        Poly r2 = r0;
        for (long i = (long)r2.size() - 1; i >= (long)r1.size() - 1; --i) {
            if (r2[i] == 0) continue;
            Rational f = r2[i] / r1.back();
            q[i - (r1.size() - 1)] = f;
            for (size_t j = 0; j < r1.size(); ++j) r2[i - (r1.size() - 1) + j] -= f * r1[j];
        }
        polyTrim(r2);
        // s2 = s0 - q*s1
        Poly s2 = s0;
        if (!q.empty() && !s1.empty()) {
            s2.resize(std::max(s2.size(), q.size() + s1.size() - 1), Rational(0));
            for (size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
            }
        }
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
}

Cyclotomic Cyclotomic::conj() const {
    if (n_ == 1) return *this;
    Poly full(n_, Rational(0));
    for (long e = 0; e < (long)c_.size(); ++e) {
        if (c_[e] == 0) continue;
        full[(n_ - e) % n_] += c_[e];
    }
    return makeCanonical(n_, std::move(full));
}

bool Cyclotomic::operator<(const Cyclotomic& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (size_t i = 0; i < c_.size() && i < o.c_.size(); ++i) {
        int c = cmp(c_[i], o.c_[i]);
        if (c != 0) return c < 0;
    }
    return c_.size() < o.c_.size();
}

std::string Cyclotomic::serialize() const {
    std::ostringstream os;
    if (n_ == 1) {
        os << "rat[" << c_[0].get_num().get_str() << "/" << c_[0].get_den().get_str() << "]";
        return os.str();
    }
    os << "cyc(" << n_ << ")[";
    bool first = true;
    for (long e = 0; e < (long)c_.size(); ++e) {
        if (c_[e] == 0) continue;
        if (!first) os << ", ";
        first = false;
        os << e << ":" << c_[e].get_num().get_str() << "/" << c_[e].get_den().get_str();
    }
    os << "]";
    return os.str();
}

namespace {

void skipSpace(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
}

long parseLong(const std::string& s, size_t& i) {
    skipSpace(s, i);
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (i == start) fail(ErrorCode::InputError, "bad integer in scalar: " + s);
    return std::stol(s.substr(start, i - start));
}

Rational parseRational(const std::string& s, size_t& i) {
    skipSpace(s, i);
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    std::string num = s.substr(start, i - start);
    if (num.empty() || num == "-" || num == "+")
        fail(ErrorCode::InputError, "bad rational in scalar: " + s);
    std::string den = "1";
    skipSpace(s, i);
    if (i < s.size() && s[i] == '/') {
        ++i;
        skipSpace(s, i);
        size_t ds = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        den = s.substr(ds, i - ds);
        if (den.empty()) fail(ErrorCode::InputError, "bad rational in scalar: " + s);
    }
    Rational r{Integer(num), Integer(den)};
    r.canonicalize();
    return r;
}

void expect(const std::string& s, size_t& i, char c) {
    skipSpace(s, i);
    if (i >= s.size() || s[i] != c)
        fail(ErrorCode::InputError, std::string("expected '") + c + "' in scalar: " + s);
    ++i;
}

} // namespace

Cyclotomic Cyclotomic::parse(const std::string& text) {
    size_t i = 0;
    skipSpace(text, i);
    if (text.compare(i, 4, "rat[") == 0) {
        i += 4;
        Rational r = parseRational(text, i);
        expect(text, i, ']');
        return Cyclotomic(r);
    }
    if (text.compare(i, 4, "cyc(") == 0) {
        i += 4;
        long n = parseLong(text, i);
        expect(text, i, ')');
        expect(text, i, '[');
        Poly c;
        skipSpace(text, i);
        if (i < text.size() && text[i] == ']') {
            ++i;
            return Cyclotomic();
        }
        while (true) {
            long e = parseLong(text, i);
            expect(text, i, ':');
            Rational r = parseRational(text, i);
            long em = ((e % n) + n) % n;
            if ((long)c.size() <= em) c.resize(em + 1, Rational(0));
            c[em] += r;
            skipSpace(text, i);
            if (i < text.size() && text[i] == ',') { ++i; continue; }
            break;
        }
        expect(text, i, ']');
        return makeCanonical(n, std::move(c));
    }
    fail(ErrorCode::InputError, "unrecognized scalar syntax: " + text);
}

namespace {

// pi to 100 decimal digits
const char* kPiDigits =
    "3."
    "1415926535897932384626433832795028841971693993751"
    "058209749445923078164062862089986280348253421170679";

Integer fixedPi(long prec) {
    std::string s(kPiDigits);
    s.erase(1, 1); // drop the dot
    if ((long)s.size() - 1 < prec) fail(ErrorCode::InputError, "approx precision too high");
    return Integer(s.substr(0, 1 + prec));
}

Integer fixedFromRational(const Rational& r, long prec) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, prec);
    Integer num = r.get_num() * scale;
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Integer fixedMul(const Integer& a, const Integer& b, const Integer& scale) {
    Integer p = a * b;
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), p.get_mpz_t(), scale.get_mpz_t());
    return q;
}

// cos and sin of 2*pi*frac, frac in [0,1), fixed point with given scale
void fixedCosSin(const Rational& frac, long prec, Integer& c, Integer& s) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, prec);
    Integer pi = fixedPi(prec);
    // x = 2*pi*frac shifted into [-pi, pi]
    Rational f = frac;
    if (f > Rational(1, 2)) f -= 1;
    Integer x = fixedMul(2 * pi, fixedFromRational(f, prec), scale);
    Integer x2 = fixedMul(x, x, scale);
    // cos
    c = scale;
    Integer term = scale;
    for (long k = 1; ; ++k) {
        term = -fixedMul(term, x2, scale) / ((2 * k - 1) * (2 * k));
        if (term == 0) break;
        c += term;
    }
    // sin
    s = x;
    term = x;
    for (long k = 1; ; ++k) {
        term = -fixedMul(term, x2, scale) / ((2 * k) * (2 * k + 1));
        if (term == 0) break;
        s += term;
    }
}

std::string fixedToDecimal(Integer v, long prec, long digits) {
    // round to `digits` places
    Integer pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 10, prec - digits);
    Integer half = pow / 2;
    if (v >= 0)
        v = (v + half) / pow;
    else
        v = -((-v + half) / pow);
    bool neg = v < 0;
    if (neg) v = -v;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Integer ip = v / scale, fp = v % scale;
    std::string frac = fp.get_str();
    frac.insert(0, digits - frac.size(), '0');
    std::string out = (neg ? "-" : "") + ip.get_str();
    if (digits > 0) out += "." + frac;
    return out;
}

} // namespace

void Cyclotomic::approx(int digits, std::string& re, std::string& im) const {
    if (digits < 1 || digits > 50) fail(ErrorCode::InputError, "digits must be in [1,50]");
    long prec = digits + 12;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, prec);
    Integer accRe(0), accIm(0);
    for (long e = 0; e < (long)c_.size(); ++e) {
        if (c_[e] == 0) continue;
        Integer coeff = fixedFromRational(c_[e], prec);
        if (e == 0) {
            accRe += coeff;
            continue;
        }
        Integer c, s;
        fixedCosSin(Rational(e, n_), prec, c, s);
        accRe += fixedMul(coeff, c, scale);
        accIm += fixedMul(coeff, s, scale);
    }
    re = fixedToDecimal(accRe, prec, digits);
    im = fixedToDecimal(accIm, prec, digits);
}

std::complex<double> Cyclotomic::approxDouble() const {
    std::string re, im;
    approx(17, re, im);
    return {std::stod(re), std::stod(im)};
}

size_t Cyclotomic::hash() const {
    size_t h = 1469598103934665603ull;
    auto mix = [&h](size_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix((size_t)n_);
    for (const auto& x : c_) {
        mix(mpz_get_ui(x.get_num().get_mpz_t()) ^ ((size_t)mpz_sgn(x.get_num().get_mpz_t()) << 60));
        mix(mpz_get_ui(x.get_den().get_mpz_t()));
    }
    return h;
}

} // namespace tvk
