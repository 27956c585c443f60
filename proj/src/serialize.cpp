#include "cartan/serialize.hpp"

#include <sstream>

namespace cartan::serialize {

namespace {

// Accepts both unsigned storage (file input) and non-negative signed storage
// (jsons assembled in code from int literals).
bool is_uint(const json& v) {
  return v.is_number_unsigned() ||
         (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

const json& field_at(const json& j, const char* key) {
  if (!j.is_object())
    throw std::runtime_error(std::string("expected an object carrying \"") + key +
                             "\"");
  auto it = j.find(key);
  if (it == j.end())
    throw std::runtime_error(std::string("missing field \"") + key + "\"");
  return *it;
}

std::uint64_t uint_at(const json& j, const char* key) {
  const json& v = field_at(j, key);
  if (!is_uint(v))
    throw std::runtime_error(std::string("field \"") + key +
                             "\" must be an unsigned integer");
  return v.get<std::uint64_t>();
}

std::string string_at(const json& j, const char* key) {
  const json& v = field_at(j, key);
  if (!v.is_string())
    throw std::runtime_error(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

const json& array_at(const json& j, const char* key) {
  const json& v = field_at(j, key);
  if (!v.is_array())
    throw std::runtime_error(std::string("field \"") + key + "\" must be an array");
  return v;
}

}  // namespace

json element_to_json(const RingPtr& ring, RElem x) {
  switch (ring->kind()) {
    case RingKind::residue:
      return json(x.code);
    case RingKind::field: {
      json arr = json::array();
      for (std::uint64_t c : ring->field_coeffs(x)) arr.push_back(c);
      return arr;
    }
    case RingKind::product: {
      json arr = json::array();
      const auto& fs = ring->factors();
      for (std::size_t i = 0; i < fs.size(); ++i)
        arr.push_back(element_to_json(fs[i], ring->component(x, i)));
      return arr;
    }
  }
  throw std::logic_error("unhandled ring kind");
}

RElem element_from_json(const RingPtr& ring, const json& j) {
  switch (ring->kind()) {
    case RingKind::residue: {
      if (!is_uint(j))
        throw std::runtime_error("element of " + ring->dsl() +
                                 " must be an unsigned integer");
      std::uint64_t v = j.get<std::uint64_t>();
      if (v >= ring->size())
        throw std::runtime_error("element " + std::to_string(v) +
                                 " out of range for " + ring->dsl());
      return RElem{v};
    }
    case RingKind::field: {
      if (!j.is_array() || j.size() != ring->field_degree())
        throw std::runtime_error("element of " + ring->dsl() +
                                 " must be a coefficient array of length " +
                                 std::to_string(ring->field_degree()));
      std::vector<std::uint64_t> coeffs;
      for (const json& c : j) {
        if (!is_uint(c) || c.get<std::uint64_t>() >= ring->field_char())
          throw std::runtime_error("coefficient out of range for " + ring->dsl());
        coeffs.push_back(c.get<std::uint64_t>());
      }
      return ring->field_from_coeffs(coeffs);
    }
    case RingKind::product: {
      const auto& fs = ring->factors();
      if (!j.is_array() || j.size() != fs.size())
        throw std::runtime_error("element of " + ring->dsl() + " must be an array of " +
                                 std::to_string(fs.size()) + " components");
      std::vector<RElem> parts;
      for (std::size_t i = 0; i < fs.size(); ++i)
        parts.push_back(element_from_json(fs[i], j[i]));
      return ring->from_components(parts);
    }
  }
  throw std::logic_error("unhandled ring kind");
}

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(element_to_json(m.ring(), m.at(i, j)));
    entries.push_back(std::move(row));
  }
  return json{{"ring", m.ring()->dsl()},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j) {
  RingPtr ring = Ring::parse(string_at(j, "ring"));
  std::uint64_t rows = uint_at(j, "rows");
  std::uint64_t cols = uint_at(j, "cols");
  if (rows == 0 || cols == 0) throw std::runtime_error("matrix dimensions must be positive");
  const json& entries = array_at(j, "entries");
  if (entries.size() != rows)
    throw std::runtime_error("entry rows do not match the declared row count");
  Matrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = entries[i];
    if (!row.is_array() || row.size() != cols)
      throw std::runtime_error("entry row " + std::to_string(i) +
                               " does not match the declared column count");
    for (std::size_t k = 0; k < cols; ++k)
      m.at(i, k) = element_from_json(ring, row[k]);
  }
  return m;
}

json decomposition_to_json(const Decomposition& d) {
  const RingPtr& ring = d.algebra->ring();
  json comps = json::array();
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    json basis = json::array();
    for (const Matrix& b : d.components[i].basis()) basis.push_back(matrix_to_json(b));
    std::string name =
        i < d.names.size() ? d.names[i] : "component_" + std::to_string(i);
    comps.push_back(json{{"name", name}, {"basis", std::move(basis)}});
  }
  json out{{"ring", ring->dsl()}, {"n", d.algebra->n()}, {"components", std::move(comps)}};
  const Provenance& pv = d.provenance;
  if (pv.p != 0) {
    json prov{{"p", pv.p}, {"m", pv.m}, {"note", pv.note}};
    if (pv.root) prov["u"] = element_to_json(ring, *pv.root);
    if (pv.coeff_field) {
      prov["coeff_field"] = pv.coeff_field->dsl();
      json alpha = json::array(), beta = json::array();
      for (RElem a : pv.symplectic_alpha)
        alpha.push_back(element_to_json(pv.coeff_field, a));
      for (RElem b : pv.symplectic_beta)
        beta.push_back(element_to_json(pv.coeff_field, b));
      prov["alpha"] = std::move(alpha);
      prov["beta"] = std::move(beta);
    }
    out["provenance"] = std::move(prov);
  }
  return out;
}

Decomposition decomposition_from_json(const json& j) {
  RingPtr ring = Ring::parse(string_at(j, "ring"));
  std::uint64_t n = uint_at(j, "n");
  if (n < 2) throw std::runtime_error("n must be at least 2");
  auto alg = std::make_shared<const SlnAlgebra>(ring, static_cast<std::size_t>(n));

  Decomposition d;
  d.algebra = alg;
  for (const json& cj : array_at(j, "components")) {
    std::string name = string_at(cj, "name");
    std::vector<Matrix> basis;
    for (const json& mj : array_at(cj, "basis")) {
      Matrix m = matrix_from_json(mj);
      if (!m.ring()->same_as(*ring))
        throw std::runtime_error("component " + name +
                                 " uses a different ring than the decomposition");
      if (m.rows() != n || m.cols() != n)
        throw std::runtime_error("component " + name + " has a basis matrix that is not " +
                                 std::to_string(n) + "x" + std::to_string(n));
      if (trace(m).code != 0)
        throw std::runtime_error("component " + name + " has a basis matrix with nonzero trace");
      basis.push_back(std::move(m));
    }
    d.names.push_back(std::move(name));
    d.components.push_back(Subalgebra::make_unchecked(alg, std::move(basis)));
  }
  if (d.components.empty()) throw std::runtime_error("decomposition has no components");

  if (j.contains("provenance")) {
    const json& pj = j["provenance"];
    if (!pj.is_object()) throw std::runtime_error("provenance must be an object");
    Provenance pv;
    pv.p = uint_at(pj, "p");
    pv.m = static_cast<unsigned>(uint_at(pj, "m"));
    if (pj.contains("note")) pv.note = string_at(pj, "note");
    if (pj.contains("u")) pv.root = element_from_json(ring, pj["u"]);
    if (pj.contains("coeff_field")) {
      pv.coeff_field = Ring::parse(string_at(pj, "coeff_field"));
      for (const json& a : array_at(pj, "alpha"))
        pv.symplectic_alpha.push_back(element_from_json(pv.coeff_field, a));
      for (const json& b : array_at(pj, "beta"))
        pv.symplectic_beta.push_back(element_from_json(pv.coeff_field, b));
    }
    d.provenance = std::move(pv);
  }
  return d;
}

json report_to_json(const VerificationReport& r) {
  json out{{"components_free", r.components_free},
           {"direct_sum_spans", r.direct_sum_spans},
           {"pairwise_orthogonal", r.pairwise_orthogonal},
           {"each_abelian", r.each_abelian},
           {"each_self_normalizing", r.each_self_normalizing},
           {"pass", r.pass()}};
  out["all_classical"] = r.all_classical ? json(*r.all_classical) : json(nullptr);
  out["witnesses"] = r.witnesses;
  return out;
}

json sl3_result_to_json(const search::Sl3SearchResult& r) {
  json wits = json::array();
  for (const auto& t : r.witnesses) {
    json tri = json::array();
    for (const auto& pc : t.members) tri.push_back(json::array({pc.a, pc.b}));
    wits.push_back(std::move(tri));
  }
  return json{{"q", r.q},
              {"exists", r.exists},
              {"cliques_found", r.cliques_found},
              {"all_certified", r.all_certified},
              {"witnesses", std::move(wits)},
              {"elapsed_ms", r.elapsed_ms}};
}

json remark_result_to_json(const search::RemarkResult& r) {
  return json{{"q", r.q},
              {"no_orthogonal_pair", r.no_orthogonal_pair},
              {"pairs_checked", r.pairs_checked},
              {"elapsed_ms", r.elapsed_ms}};
}

json oracle_result_to_json(const search::OracleResult& r) {
  return json{{"q", r.q},
              {"instances_checked", r.instances_checked},
              {"counterexamples", r.counterexamples},
              {"elapsed_ms", r.elapsed_ms}};
}

json census_result_to_json(const search::CensusResult& r) {
  return json{{"q", r.q},
              {"ok", r.ok},
              {"subspaces", r.subspaces},
              {"survivors", r.survivors},
              {"lemma_span_count", r.lemma_span_count},
              {"mismatches", r.mismatches},
              {"elapsed_ms", r.elapsed_ms}};
}

json sl2_analysis_to_json(const search::Sl2Analysis& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json rj{{"a", row.a}, {"partner", row.partner}, {"is_square", row.is_square}};
    rj["sqrt"] = row.sqrt ? json(*row.sqrt) : json(nullptr);
    rows.push_back(std::move(rj));
  }
  return json{{"q", r.q}, {"rows", std::move(rows)}, {"elapsed_ms", r.elapsed_ms}};
}

std::string matrix_to_text(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      os << m.ring()->elem_str(m.at(i, j));
    }
    os << "]\n";
  }
  return os.str();
}

std::string decomposition_to_text(const Decomposition& d) {
  std::ostringstream os;
  os << "sl_" << d.algebra->n() << " over " << d.algebra->ring()->dsl() << ": "
     << d.components.size() << " components\n";
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    std::string name =
        i < d.names.size() ? d.names[i] : "component_" + std::to_string(i);
    os << name << " (rank " << d.components[i].rank() << ")\n";
    for (const Matrix& b : d.components[i].basis()) os << matrix_to_text(b);
  }
  const Provenance& pv = d.provenance;
  if (pv.p != 0) {
    os << "built from p = " << pv.p << ", m = " << pv.m;
    if (pv.root)
      os << ", u = " << d.algebra->ring()->elem_str(*pv.root);
    os << "\n";
    if (!pv.note.empty()) os << pv.note << "\n";
  }
  return os.str();
}

std::string report_to_text(const VerificationReport& r) {
  std::ostringstream os;
  auto line = [&](const char* name, bool ok) {
    os << name << ": " << (ok ? "ok" : "FAIL") << "\n";
  };
  line("components_free", r.components_free);
  line("direct_sum_spans", r.direct_sum_spans);
  line("pairwise_orthogonal", r.pairwise_orthogonal);
  line("each_abelian", r.each_abelian);
  line("each_self_normalizing", r.each_self_normalizing);
  if (r.all_classical)
    line("all_classical", *r.all_classical);
  else
    os << "all_classical: not checked\n";
  for (const std::string& w : r.witnesses) os << "  witness: " << w << "\n";
  os << (r.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string sl3_result_to_text(const search::Sl3SearchResult& r) {
  std::ostringstream os;
  os << "q = " << r.q << ": "
     << (r.exists ? "classical decomposition found" : "no classical decomposition")
     << ", " << r.cliques_found << " cliques, " << r.witnesses.size()
     << " certified (" << r.elapsed_ms << " ms)\n";
  for (const auto& t : r.witnesses) {
    os << " ";
    for (const auto& pc : t.members) os << " (" << pc.a << "," << pc.b << ")";
    os << "\n";
  }
  return os.str();
}

std::string remark_result_to_text(const search::RemarkResult& r) {
  std::ostringstream os;
  os << "q = " << r.q << ": "
     << (r.no_orthogonal_pair ? "no orthogonal pair" : "orthogonal pairs exist")
     << " among " << r.pairs_checked << " pairs (" << r.elapsed_ms << " ms)\n";
  return os.str();
}

std::string oracle_result_to_text(const search::OracleResult& r) {
  std::ostringstream os;
  os << "q = " << r.q << ": " << r.instances_checked
     << " commuting non-proportional pairs, " << r.counterexamples
     << " with invertible Gram matrix (" << r.elapsed_ms << " ms)\n";
  return os.str();
}

std::string census_result_to_text(const search::CensusResult& r) {
  std::ostringstream os;
  os << "q = " << r.q << ": " << r.subspaces << " planes scanned, " << r.survivors
     << " survivors, " << r.lemma_span_count << " reference spans, " << r.mismatches
     << " mismatches: " << (r.ok ? "ok" : "FAIL") << " (" << r.elapsed_ms << " ms)\n";
  return os.str();
}

std::string sl2_analysis_to_text(const search::Sl2Analysis& r) {
  std::ostringstream os;
  os << "q = " << r.q << " (" << r.elapsed_ms << " ms)\n";
  for (const auto& row : r.rows) {
    os << "a = " << row.a << ": orthogonal partner " << row.partner << ", "
       << (row.is_square ? "square" : "nonsquare");
    if (row.sqrt) os << ", sqrt " << *row.sqrt;
    os << "\n";
  }
  return os.str();
}

}  // namespace cartan::serialize
