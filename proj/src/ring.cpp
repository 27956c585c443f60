#include "cartan/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cartan {

namespace {

constexpr std::uint64_t kMaxRingSize = (std::uint64_t{1} << 32);

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  // n < 2^32, so products fit in 64 bits.
  std::uint64_t r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = (r * a) % n;
    a = (a * a) % n;
    e >>= 1;
  }
  return r;
}

// Returns gcd(a, b) and writes x with a*x = gcd (mod b); classic iterative xgcd.
std::uint64_t invmod_helper(std::uint64_t a, std::uint64_t n, std::uint64_t& inv_out) {
  std::int64_t old_r = static_cast<std::int64_t>(a), r = static_cast<std::int64_t>(n);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r; old_r = r; r = t;
    t = old_s - q * s; old_s = s; s = t;
  }
  std::int64_t x = old_s % static_cast<std::int64_t>(n);
  if (x < 0) x += static_cast<std::int64_t>(n);
  inv_out = static_cast<std::uint64_t>(x);
  return static_cast<std::uint64_t>(old_r);
}

// --- dense polynomials over GF(p), coefficients low-to-high ---

using Poly = std::vector<std::uint64_t>;

int poly_deg(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[static_cast<std::size_t>(i)] != 0) return i;
  return -1;
}

// Remainder of f by monic g, in place.
void poly_rem(Poly& f, const Poly& g, std::uint64_t p) {
  int dg = poly_deg(g);
  for (int df = poly_deg(f); df >= dg && dg >= 0; df = poly_deg(f)) {
    std::uint64_t lead = f[static_cast<std::size_t>(df)];
    int shift = df - dg;
    for (int j = 0; j <= dg; ++j) {
      std::size_t idx = static_cast<std::size_t>(j + shift);
      f[idx] = (f[idx] + (p - g[static_cast<std::size_t>(j)] % p) * lead) % p;
    }
  }
}

bool poly_is_irreducible(const Poly& f, std::uint64_t p) {
  int m = poly_deg(f);
  if (m <= 0) return false;
  if (m == 1) return true;
  // Trial division by every monic polynomial of degree 1..m/2.
  for (int d = 1; d <= m / 2; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(static_cast<std::size_t>(d) + 1, 0);
      std::uint64_t t = idx;
      for (int i = 0; i < d; ++i) { g[static_cast<std::size_t>(i)] = t % p; t /= p; }
      g[static_cast<std::size_t>(d)] = 1;
      Poly r = f;
      poly_rem(r, g, p);
      if (poly_deg(r) < 0) return false;
    }
  }
  return true;
}

// Smallest monic irreducible of degree m over GF(p), ordered lexicographically
// on the coefficient list (c0, c1, ..., c_{m-1}).
Poly default_modulus(std::uint64_t p, unsigned m) {
  Poly f(m + 1, 0);
  f[m] = 1;
  std::vector<std::uint64_t> c(m, 0);
  while (true) {
    for (unsigned i = 0; i < m; ++i) f[i] = c[i];
    if (poly_is_irreducible(f, p)) return f;
    // Odometer with c0 as the most significant digit.
    int pos = static_cast<int>(m) - 1;
    while (pos >= 0) {
      if (++c[static_cast<std::size_t>(pos)] < p) break;
      c[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0)
      throw std::runtime_error("no irreducible modulus found");
  }
}

std::uint64_t checked_pow_size(std::uint64_t p, unsigned m) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (q > kMaxRingSize / p) throw std::invalid_argument("ring size too large");
    q *= p;
  }
  return q;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::runtime_error("expected an unsigned integer, got '" + s + "'");
  return std::stoull(s);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("factorize requires n >= 1");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      unsigned e = 0;
      while (n % d == 0) { n /= d; ++e; }
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

RingPtr Ring::residues(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("Z/n requires n >= 2");
  if (n >= kMaxRingSize) throw std::invalid_argument("ring size too large");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::residue;
  r->n_ = n;
  r->n_prime_ = is_prime(n);
  r->size_ = n;
  r->char_ = n;
  r->one_ = RElem{1 % n};
  return r;
}

RingPtr Ring::field(std::uint64_t p, unsigned degree) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (degree < 1) throw std::invalid_argument("field degree must be >= 1");
  checked_pow_size(p, degree);
  Poly f = default_modulus(p, degree);
  std::vector<std::uint64_t> full(f.begin(), f.end());
  return field(p, degree, full);
}

RingPtr Ring::field(std::uint64_t p, unsigned degree,
                    const std::vector<std::uint64_t>& modulus_poly) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (degree < 1) throw std::invalid_argument("field degree must be >= 1");
  if (modulus_poly.size() != degree + 1)
    throw std::invalid_argument("modulus polynomial must have degree+1 coefficients");
  if (modulus_poly.back() != 1)
    throw std::invalid_argument("modulus polynomial must be monic");
  for (std::uint64_t c : modulus_poly)
    if (c >= p) throw std::invalid_argument("modulus coefficients must lie in [0, p)");
  if (!poly_is_irreducible(modulus_poly, p))
    throw std::invalid_argument("modulus polynomial is reducible");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::field;
  r->p_ = p;
  r->m_ = degree;
  r->poly_.assign(modulus_poly.begin(), modulus_poly.end() - 1);
  r->size_ = checked_pow_size(p, degree);
  r->char_ = p;
  r->one_ = RElem{1};
  return r;
}

RingPtr Ring::product(std::vector<RingPtr> factors) {
  if (factors.empty()) throw std::invalid_argument("product requires at least one factor");
  for (const auto& f : factors)
    if (!f) throw std::invalid_argument("null factor in product");
  if (factors.size() == 1) return factors[0];
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::product;
  r->factors_ = std::move(factors);
  std::size_t k = r->factors_.size();
  r->strides_.assign(k, 1);
  std::uint64_t sz = 1;
  for (std::size_t i = k; i-- > 0;) {
    r->strides_[i] = sz;
    std::uint64_t fs = r->factors_[i]->size();
    if (sz > kMaxRingSize / fs) throw std::invalid_argument("ring size too large");
    sz *= fs;
  }
  r->size_ = sz;
  std::uint64_t c = 1;
  std::uint64_t one_code = 0;
  for (std::size_t i = 0; i < k; ++i) {
    c = std::lcm(c, r->factors_[i]->characteristic());
    one_code += r->factors_[i]->one().code * r->strides_[i];
  }
  r->char_ = c;
  r->one_ = RElem{one_code};
  return r;
}

RingPtr Ring::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw std::runtime_error("empty ring description");
  std::vector<RingPtr> factors;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t sep = s.find(" x ", pos);
    std::string tok = trim(sep == std::string::npos ? s.substr(pos)
                                                    : s.substr(pos, sep - pos));
    if (tok.empty()) throw std::runtime_error("empty factor in ring description");
    if (tok.rfind("Z/", 0) == 0) {
      factors.push_back(residues(parse_u64(tok.substr(2))));
    } else if (tok.rfind("F_", 0) == 0) {
      std::string body = tok.substr(2);
      std::size_t caret = body.find('^');
      if (caret == std::string::npos) {
        if (body.find('[') != std::string::npos)
          throw std::runtime_error("poly option requires the F_p^m form: '" + tok + "'");
        std::uint64_t q = parse_u64(body);
        auto fac = factorize(q);
        if (fac.size() != 1)
          throw std::runtime_error("field size must be a prime power: '" + tok + "'");
        factors.push_back(field(fac[0].first, fac[0].second));
      } else {
        std::uint64_t p = parse_u64(body.substr(0, caret));
        std::string rest = body.substr(caret + 1);
        std::size_t br = rest.find('[');
        std::uint64_t m;
        if (br == std::string::npos) {
          m = parse_u64(rest);
          factors.push_back(field(p, static_cast<unsigned>(m)));
        } else {
          m = parse_u64(trim(rest.substr(0, br)));
          std::string opt = rest.substr(br);
          if (opt.size() < 2 || opt.back() != ']')
            throw std::runtime_error("unterminated option block in '" + tok + "'");
          opt = opt.substr(1, opt.size() - 2);
          if (opt.rfind("poly=", 0) != 0)
            throw std::runtime_error("unknown field option '" + opt + "'");
          std::string list = opt.substr(5);
          std::vector<std::uint64_t> coeffs;
          std::size_t cpos = 0;
          while (cpos <= list.size()) {
            std::size_t comma = list.find(',', cpos);
            std::string num = trim(comma == std::string::npos
                                       ? list.substr(cpos)
                                       : list.substr(cpos, comma - cpos));
            coeffs.push_back(parse_u64(num));
            if (comma == std::string::npos) break;
            cpos = comma + 1;
          }
          factors.push_back(field(p, static_cast<unsigned>(m), coeffs));
        }
      }
    } else {
      throw std::runtime_error("unrecognized ring factor '" + tok + "'");
    }
    if (sep == std::string::npos) break;
    pos = sep + 3;
  }
  return product(std::move(factors));
}

std::string Ring::dsl() const {
  switch (kind_) {
    case RingKind::residue:
      return "Z/" + std::to_string(n_);
    case RingKind::field: {
      Poly def = default_modulus(p_, m_);
      def.pop_back();
      if (def == poly_) return "F_" + std::to_string(size_);
      std::ostringstream os;
      os << "F_" << p_ << "^" << m_ << "[poly=";
      for (std::uint64_t c : poly_) os << c << ",";
      os << "1]";
      return os.str();
    }
    case RingKind::product: {
      std::string out;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += " x ";
        out += factors_[i]->dsl();
      }
      return out;
    }
  }
  return {};
}

bool Ring::is_field() const {
  return kind_ == RingKind::field || (kind_ == RingKind::residue && n_prime_);
}

bool Ring::is_local() const {
  if (kind_ == RingKind::field) return true;
  if (kind_ == RingKind::residue) return factorize(n_).size() == 1;
  return false;
}

bool Ring::same_as(const Ring& other) const { return dsl() == other.dsl(); }

RElem Ring::from_int(std::int64_t k) const {
  switch (kind_) {
    case RingKind::residue: {
      std::int64_t n = static_cast<std::int64_t>(n_);
      std::int64_t v = k % n;
      if (v < 0) v += n;
      return RElem{static_cast<std::uint64_t>(v)};
    }
    case RingKind::field: {
      std::int64_t p = static_cast<std::int64_t>(p_);
      std::int64_t v = k % p;
      if (v < 0) v += p;
      return RElem{static_cast<std::uint64_t>(v)};
    }
    case RingKind::product: {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i)
        code += factors_[i]->from_int(k).code * strides_[i];
      return RElem{code};
    }
  }
  return {};
}

RElem Ring::add(RElem a, RElem b) const {
  switch (kind_) {
    case RingKind::residue:
      return RElem{(a.code + b.code) % n_};
    case RingKind::field: {
      std::uint64_t out = 0, mult = 1;
      std::uint64_t x = a.code, y = b.code;
      for (unsigned i = 0; i < m_; ++i) {
        out += ((x % p_ + y % p_) % p_) * mult;
        x /= p_; y /= p_; mult *= p_;
      }
      return RElem{out};
    }
    case RingKind::product: {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i)
        code += factors_[i]->add(component(a, i), component(b, i)).code * strides_[i];
      return RElem{code};
    }
  }
  return {};
}

RElem Ring::neg(RElem a) const {
  switch (kind_) {
    case RingKind::residue:
      return RElem{a.code == 0 ? 0 : n_ - a.code};
    case RingKind::field: {
      std::uint64_t out = 0, mult = 1, x = a.code;
      for (unsigned i = 0; i < m_; ++i) {
        std::uint64_t c = x % p_;
        out += (c == 0 ? 0 : p_ - c) * mult;
        x /= p_; mult *= p_;
      }
      return RElem{out};
    }
    case RingKind::product: {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i)
        code += factors_[i]->neg(component(a, i)).code * strides_[i];
      return RElem{code};
    }
  }
  return {};
}

RElem Ring::sub(RElem a, RElem b) const { return add(a, neg(b)); }

RElem Ring::mul(RElem a, RElem b) const {
  switch (kind_) {
    case RingKind::residue:
      return RElem{(a.code * b.code) % n_};
    case RingKind::field: {
      if (m_ == 1) return RElem{(a.code * b.code) % p_};
      std::vector<std::uint64_t> x = field_coeffs(a), y = field_coeffs(b);
      std::vector<std::uint64_t> prod(2 * m_ - 1, 0);
      for (unsigned i = 0; i < m_; ++i) {
        if (x[i] == 0) continue;
        for (unsigned j = 0; j < m_; ++j)
          prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
      }
      // Reduce by x^m = -(c0 + c1 x + ... + c_{m-1} x^{m-1}).
      for (unsigned i = 2 * m_ - 2; i >= m_; --i) {
        std::uint64_t lead = prod[i];
        if (lead) {
          for (unsigned j = 0; j < m_; ++j)
            prod[i - m_ + j] = (prod[i - m_ + j] + (p_ - poly_[j]) * lead) % p_;
        }
        if (i == m_) break;
      }
      prod.resize(m_);
      return field_from_coeffs(prod);
    }
    case RingKind::product: {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i)
        code += factors_[i]->mul(component(a, i), component(b, i)).code * strides_[i];
      return RElem{code};
    }
  }
  return {};
}

RElem Ring::pow(RElem a, std::uint64_t e) const {
  RElem acc = one_;
  RElem base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

bool Ring::is_unit(RElem a) const {
  switch (kind_) {
    case RingKind::residue:
      return std::gcd(a.code, n_) == 1;
    case RingKind::field:
      return a.code != 0;
    case RingKind::product:
      for (std::size_t i = 0; i < factors_.size(); ++i)
        if (!factors_[i]->is_unit(component(a, i))) return false;
      return true;
  }
  return false;
}

std::optional<RElem> Ring::inverse(RElem a) const {
  switch (kind_) {
    case RingKind::residue: {
      std::uint64_t inv = 0;
      if (invmod_helper(a.code % n_, n_, inv) != 1) return std::nullopt;
      return RElem{inv};
    }
    case RingKind::field: {
      if (a.code == 0) return std::nullopt;
      return pow(a, size_ - 2);
    }
    case RingKind::product: {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        auto inv = factors_[i]->inverse(component(a, i));
        if (!inv) return std::nullopt;
        code += inv->code * strides_[i];
      }
      return RElem{code};
    }
  }
  return std::nullopt;
}

std::string Ring::elem_str(RElem a) const {
  switch (kind_) {
    case RingKind::residue:
      return std::to_string(a.code);
    case RingKind::field: {
      std::string out = "[";
      auto cs = field_coeffs(a);
      for (unsigned i = 0; i < m_; ++i) {
        if (i) out += ",";
        out += std::to_string(cs[i]);
      }
      return out + "]";
    }
    case RingKind::product: {
      std::string out = "(";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += ", ";
        out += factors_[i]->elem_str(component(a, i));
      }
      return out + ")";
    }
  }
  return {};
}

std::uint64_t Ring::modulus() const {
  if (kind_ != RingKind::residue)
    throw std::invalid_argument("modulus() requires a residue ring");
  return n_;
}

std::uint64_t Ring::field_char() const {
  if (kind_ != RingKind::field)
    throw std::invalid_argument("field_char() requires a field");
  return p_;
}

unsigned Ring::field_degree() const {
  if (kind_ != RingKind::field)
    throw std::invalid_argument("field_degree() requires a field");
  return m_;
}

const std::vector<std::uint64_t>& Ring::field_modulus() const {
  if (kind_ != RingKind::field)
    throw std::invalid_argument("field_modulus() requires a field");
  return poly_;
}

std::vector<std::uint64_t> Ring::field_coeffs(RElem a) const {
  if (kind_ != RingKind::field)
    throw std::invalid_argument("field_coeffs() requires a field");
  std::vector<std::uint64_t> out(m_);
  std::uint64_t x = a.code;
  for (unsigned i = 0; i < m_; ++i) { out[i] = x % p_; x /= p_; }
  return out;
}

RElem Ring::field_from_coeffs(std::span<const std::uint64_t> coeffs) const {
  if (kind_ != RingKind::field)
    throw std::invalid_argument("field_from_coeffs() requires a field");
  if (coeffs.size() != m_)
    throw std::invalid_argument("coefficient list has wrong length");
  std::uint64_t code = 0, mult = 1;
  for (unsigned i = 0; i < m_; ++i) {
    if (coeffs[i] >= p_) throw std::invalid_argument("coefficient out of range");
    code += coeffs[i] * mult;
    mult *= p_;
  }
  return RElem{code};
}

RElem Ring::field_generator() const {
  if (kind_ != RingKind::field)
    throw std::invalid_argument("field_generator() requires a field");
  if (m_ < 2)
    throw std::invalid_argument("prime fields have no extension generator");
  return RElem{p_};
}

const std::vector<RingPtr>& Ring::factors() const {
  if (kind_ != RingKind::product)
    throw std::invalid_argument("factors() requires a product ring");
  return factors_;
}

RElem Ring::component(RElem a, std::size_t i) const {
  if (kind_ != RingKind::product)
    throw std::invalid_argument("component() requires a product ring");
  if (i >= factors_.size()) throw std::invalid_argument("factor index out of range");
  return RElem{(a.code / strides_[i]) % factors_[i]->size()};
}

RElem Ring::from_components(std::span<const RElem> parts) const {
  if (kind_ != RingKind::product)
    throw std::invalid_argument("from_components() requires a product ring");
  if (parts.size() != factors_.size())
    throw std::invalid_argument("component count mismatch");
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (parts[i].code >= factors_[i]->size())
      throw std::invalid_argument("component code out of range");
    code += parts[i].code * strides_[i];
  }
  return RElem{code};
}

RElem Ring::embed_component(std::size_t i, RElem v) const {
  if (kind_ != RingKind::product)
    throw std::invalid_argument("embed_component() requires a product ring");
  if (i >= factors_.size()) throw std::invalid_argument("factor index out of range");
  if (v.code >= factors_[i]->size())
    throw std::invalid_argument("component code out of range");
  return RElem{v.code * strides_[i]};
}

std::vector<LocalFactor> crt_decompose(const RingPtr& ring) {
  std::vector<LocalFactor> out;
  switch (ring->kind()) {
    case RingKind::residue: {
      auto fac = factorize(ring->modulus());
      for (auto [p, e] : fac) {
        std::uint64_t q = 1;
        for (unsigned i = 0; i < e; ++i) q *= p;
        out.push_back(LocalFactor{Ring::residues(q), p, p - 1});
      }
      break;
    }
    case RingKind::field:
      out.push_back(LocalFactor{ring, ring->field_char(), ring->size() - 1});
      break;
    case RingKind::product:
      for (const auto& f : ring->factors()) {
        auto sub = crt_decompose(f);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      break;
  }
  return out;
}

namespace {

// Smallest element of a local ring with u^p = 1, u != 1, u - 1 a unit.
std::optional<RElem> local_primitive_root(const RingPtr& local, std::uint64_t p) {
  auto decomp = crt_decompose(local);
  if (decomp.size() != 1) throw std::invalid_argument("expected a local ring");
  if (decomp[0].residue_unit_order % p != 0) return std::nullopt;
  for (std::uint64_t code = 2; code < local->size(); ++code) {
    RElem u{code};
    if (local->pow(u, p) == local->one() &&
        local->is_unit(local->sub(u, local->one())))
      return u;
  }
  return std::nullopt;
}

}  // namespace

std::optional<RElem> find_primitive_root(const RingPtr& ring, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("root order must be prime");
  switch (ring->kind()) {
    case RingKind::field:
      return local_primitive_root(ring, p);
    case RingKind::residue: {
      auto locals = crt_decompose(ring);
      // Solve per prime-power factor, then recombine the residues.
      unsigned __int128 x = 0, mod = 1;
      for (const auto& lf : locals) {
        auto u = local_primitive_root(lf.ring, p);
        if (!u) return std::nullopt;
        std::uint64_t q = lf.ring->modulus();
        // x' = x (mod mod), x' = u (mod q); mod and q are coprime.
        std::uint64_t mod_small = static_cast<std::uint64_t>(mod % q);
        std::uint64_t inv = 0;
        invmod_helper(mod_small % q, q, inv);
        std::uint64_t diff = (u->code + q - static_cast<std::uint64_t>(x % q)) % q;
        unsigned __int128 t = (unsigned __int128)diff * inv % q;
        x = x + mod * t;
        mod *= q;
      }
      return RElem{static_cast<std::uint64_t>(x)};
    }
    case RingKind::product: {
      std::vector<RElem> parts;
      for (const auto& f : ring->factors()) {
        auto u = find_primitive_root(f, p);
        if (!u) return std::nullopt;
        parts.push_back(*u);
      }
      return ring->from_components(parts);
    }
  }
  return std::nullopt;
}

RElem field_trace(const Ring& fld, RElem x) {
  std::uint64_t p = fld.field_char();
  unsigned m = fld.field_degree();
  RElem tr = x;
  RElem acc = x;
  for (unsigned i = 1; i < m; ++i) {
    acc = fld.pow(acc, p);
    tr = fld.add(tr, acc);
  }
  if (tr.code >= p)
    throw std::runtime_error("trace escaped the prime subfield");
  return tr;
}

std::vector<RElem> trace_dual_basis(const Ring& fld, std::span<const RElem> basis) {
  unsigned m = fld.field_degree();
  std::uint64_t p = fld.field_char();
  if (basis.size() != m)
    throw std::invalid_argument("basis size must equal the field degree");
  // Gram matrix of the trace pairing, entries in GF(p).
  std::vector<std::vector<std::uint64_t>> g(m, std::vector<std::uint64_t>(2 * m, 0));
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = 0; j < m; ++j)
      g[i][j] = field_trace(fld, fld.mul(basis[i], basis[j])).code;
    g[i][m + i] = 1;
  }
  // Gauss-Jordan inversion mod p.
  for (unsigned col = 0; col < m; ++col) {
    unsigned piv = col;
    while (piv < m && g[piv][col] == 0) ++piv;
    if (piv == m)
      throw std::invalid_argument("trace Gram matrix is singular");
    std::swap(g[col], g[piv]);
    std::uint64_t inv = powmod(g[col][col], p - 2, p);
    for (unsigned j = 0; j < 2 * m; ++j) g[col][j] = g[col][j] * inv % p;
    for (unsigned r = 0; r < m; ++r) {
      if (r == col || g[r][col] == 0) continue;
      std::uint64_t f = g[r][col];
      for (unsigned j = 0; j < 2 * m; ++j)
        g[r][j] = (g[r][j] + (p - f) * g[col][j]) % p;
    }
  }
  std::vector<RElem> dual(m);
  for (unsigned j = 0; j < m; ++j) {
    RElem acc = fld.zero();
    for (unsigned i = 0; i < m; ++i) {
      RElem scal = fld.from_int(static_cast<std::int64_t>(g[i][m + j]));
      acc = fld.add(acc, fld.mul(scal, basis[i]));
    }
    dual[j] = acc;
  }
  return dual;
}

}  // namespace cartan
