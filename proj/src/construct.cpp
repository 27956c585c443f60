#include "cartan/construct.hpp"

#include <stdexcept>

namespace cartan {

CyclicGenerators build_generators(const RingPtr& ring, std::uint64_t p, RElem u) {
  if (!is_prime(p)) throw std::invalid_argument("generator order must be prime");
  if (ring->pow(u, p) != ring->one())
    throw std::invalid_argument("root does not have order dividing p");
  if (u == ring->one())
    throw std::invalid_argument("root must differ from 1");
  if (!ring->is_unit(ring->sub(u, ring->one())))
    throw std::invalid_argument("root minus one must be a unit");
  CyclicGenerators g{Matrix(ring, p, p), Matrix(ring, p, p), p, u};
  for (std::uint64_t i = 0; i < p; ++i) g.clock.at(i, i) = ring->pow(u, i);
  for (std::uint64_t j = 0; j < p; ++j) g.shift.at((j + 1) % p, j) = ring->one();
  return g;
}

Matrix weyl_monomial(const CyclicGenerators& gens, std::uint64_t a, std::uint64_t b) {
  return mul(mat_pow(gens.clock, a % gens.p), mat_pow(gens.shift, b % gens.p));
}

Decomposition construct_prime(const RingPtr& ring, std::uint64_t p, RElem u) {
  CyclicGenerators gens = build_generators(ring, p, u);
  auto alg = std::make_shared<const SlnAlgebra>(ring, p);
  Decomposition dec;
  dec.algebra = alg;
  dec.provenance.p = p;
  dec.provenance.m = 1;
  dec.provenance.root = u;
  dec.provenance.note = "monomial family from clock and shift generators";

  std::vector<Matrix> inf;
  for (std::uint64_t a = 1; a < p; ++a) inf.push_back(weyl_monomial(gens, 0, a));
  dec.names.push_back("H_inf");
  dec.components.push_back(Subalgebra::make(alg, std::move(inf)));

  for (std::uint64_t k = 0; k < p; ++k) {
    std::vector<Matrix> basis;
    for (std::uint64_t a = 1; a < p; ++a)
      basis.push_back(weyl_monomial(gens, a, (k * a) % p));
    dec.names.push_back("H_" + std::to_string(k));
    dec.components.push_back(Subalgebra::make(alg, std::move(basis)));
  }
  return dec;
}

SymplecticSpace symplectic_basis(std::uint64_t p, unsigned m) {
  SymplecticSpace s;
  s.field = Ring::field(p, m);
  s.p = p;
  s.m = m;
  // Power basis 1, t, ..., t^{m-1}; for m = 1 this is just {1}.
  RElem t = m >= 2 ? s.field->field_generator() : s.field->one();
  RElem acc = s.field->one();
  for (unsigned i = 0; i < m; ++i) {
    s.alpha.push_back(acc);
    acc = s.field->mul(acc, t);
  }
  s.beta = trace_dual_basis(*s.field, s.alpha);
  return s;
}

ExponentCoords exponent_coords(const SymplecticSpace& s, const SymplecticVector& w) {
  ExponentCoords c;
  c.a = s.field->field_coeffs(w.first);
  c.b.resize(s.m);
  for (unsigned i = 0; i < s.m; ++i)
    c.b[i] = field_trace(*s.field, s.field->mul(s.alpha[i], w.second)).code;
  return c;
}

std::uint64_t commutation_exponent(const SymplecticSpace& s,
                                   const SymplecticVector& w,
                                   const SymplecticVector& w_prime) {
  ExponentCoords cw = exponent_coords(s, w);
  ExponentCoords cwp = exponent_coords(s, w_prime);
  std::uint64_t e = 0;
  for (unsigned i = 0; i < s.m; ++i) e = (e + cwp.a[i] * cw.b[i]) % s.p;
  return e;
}

std::uint64_t symplectic_pairing(const SymplecticSpace& s,
                                 const SymplecticVector& w,
                                 const SymplecticVector& w_prime) {
  const Ring& F = *s.field;
  RElem xy = field_trace(F, F.mul(w.first, w_prime.second));
  RElem yx = field_trace(F, F.mul(w_prime.first, w.second));
  return F.sub(xy, yx).code;
}

Matrix monomial(const CyclicGenerators& gens, const SymplecticSpace& s,
                const SymplecticVector& w) {
  ExponentCoords c = exponent_coords(s, w);
  Matrix out = weyl_monomial(gens, c.a[0], c.b[0]);
  for (unsigned i = 1; i < s.m; ++i)
    out = kronecker(out, weyl_monomial(gens, c.a[i], c.b[i]));
  return out;
}

Decomposition construct_prime_power(const RingPtr& ring, std::uint64_t p,
                                    unsigned m, RElem u) {
  if (m == 1) return construct_prime(ring, p, u);
  CyclicGenerators gens = build_generators(ring, p, u);
  SymplecticSpace space = symplectic_basis(p, m);
  const Ring& F = *space.field;
  const std::uint64_t q = F.size();

  auto alg = std::make_shared<const SlnAlgebra>(ring, static_cast<std::size_t>(q));
  Decomposition dec;
  dec.algebra = alg;
  dec.provenance.p = p;
  dec.provenance.m = m;
  dec.provenance.root = u;
  dec.provenance.symplectic_alpha = space.alpha;
  dec.provenance.symplectic_beta = space.beta;
  dec.provenance.coeff_field = space.field;
  dec.provenance.note = "monomial family indexed by lines of the exponent plane";

  std::vector<Matrix> inf;
  for (std::uint64_t lam = 1; lam < q; ++lam)
    inf.push_back(monomial(gens, space, SymplecticVector{F.zero(), RElem{lam}}));
  dec.names.push_back("H_inf");
  dec.components.push_back(Subalgebra::make(alg, std::move(inf)));

  for (std::uint64_t a = 0; a < q; ++a) {
    RElem slope{a};
    std::vector<Matrix> basis;
    for (std::uint64_t lam = 1; lam < q; ++lam)
      basis.push_back(monomial(
          gens, space, SymplecticVector{RElem{lam}, F.mul(slope, RElem{lam})}));
    dec.names.push_back("H_" + std::to_string(a));
    dec.components.push_back(Subalgebra::make(alg, std::move(basis)));
  }
  return dec;
}

std::variant<Decomposition, Obstruction> construct_odac(const RingPtr& ring,
                                                        std::size_t n) {
  if (n < 2) throw std::invalid_argument("construction needs n >= 2");
  SlnAlgebra alg(ring, n);
  Submodule z = center(alg);
  if (!z.is_zero()) {
    Obstruction ob;
    ob.kind = Obstruction::Kind::no_odac;
    Matrix w = alg.matrix_of(z.canonical().front());
    ob.central_witness = w;
    RElem c = w.at(0, 0);
    bool scalar = true;
    for (std::size_t i = 0; i < n && scalar; ++i)
      for (std::size_t j = 0; j < n && scalar; ++j)
        scalar = (i == j) ? w.at(i, j) == c : w.at(i, j).code == 0;
    ob.reason = "sl_" + std::to_string(n) + " over " + ring->dsl() +
                " has a nonzero center";
    if (scalar)
      ob.reason += "; central element " + ring->elem_str(c) + " * identity";
    return ob;
  }

  auto fac = factorize(n);
  if (fac.size() != 1) {
    Obstruction ob;
    ob.kind = Obstruction::Kind::no_construction;
    ob.reason = "n = " + std::to_string(n) +
                " is not a prime power; no construction is available";
    return ob;
  }
  std::uint64_t p = fac[0].first;
  unsigned m = fac[0].second;

  for (const LocalFactor& lf : crt_decompose(ring)) {
    if (lf.residue_unit_order % p != 0) {
      Obstruction ob;
      ob.kind = Obstruction::Kind::no_construction;
      ob.reason = "factor " + lf.ring->dsl() + " admits no scalar of order " +
                  std::to_string(p) + " with an invertible u - 1";
      return ob;
    }
  }

  auto u = find_primitive_root(ring, p);
  if (!u) throw std::logic_error("root search failed after the local criterion passed");
  return construct_prime_power(ring, p, m, *u);
}

Matrix shift_conjugator(const CyclicGenerators& gens) {
  if (gens.p == 2)
    throw std::invalid_argument("slope rotation is defined for odd p only");
  const RingPtr& R = gens.clock.ring();
  const std::uint64_t p = gens.p;
  Matrix x(R, p, p);
  for (std::uint64_t i = 0; i < p; ++i)
    for (std::uint64_t j = 0; j < p; ++j) {
      std::uint64_t k = (i + p - j % p) % p;
      x.at(i, j) = R->pow(gens.root, k * (k + 1) / 2);
    }
  if (!R->is_unit(determinant(x)))
    throw std::logic_error("slope conjugator is unexpectedly singular");
  return x;
}

}  // namespace cartan
