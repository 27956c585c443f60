#include "cartan/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <variant>

#include "CLI11.hpp"

#include "cartan/construct.hpp"
#include "cartan/ring.hpp"
#include "cartan/search.hpp"
#include "cartan/serialize.hpp"
#include "cartan/sln.hpp"

namespace cartan::cli {

namespace {

namespace ser = cartan::serialize;
using search::ExecMode;
using search::SearchOptions;
using ser::json;

std::uint64_t parse_u64_strict(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument(std::string(what) + " \"" + s +
                                "\" is not an unsigned integer");
  return v;
}

std::optional<std::uint64_t> env_budget_ms() {
  const char* v = std::getenv("CARTAN_FORGE_BUDGET_MS");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return parse_u64_strict(v, "CARTAN_FORGE_BUDGET_MS");
}

enum class Family { sl3, sl2 };

bool family_valid(std::uint64_t q, Family fam) {
  if (q < 2) return false;
  if (factorize(q).size() != 1) return false;
  if (fam == Family::sl3) return q % 2 != 0 && q % 3 != 0;
  return q % 2 != 0;
}

const char* family_requirement(Family fam) {
  return fam == Family::sl3 ? "a prime power coprime to 6" : "an odd prime power";
}

// Comma-separated values and lo..hi ranges. Ranges silently skip invalid
// characteristics; explicitly listed values must be valid.
std::vector<std::uint64_t> parse_q_list(const std::string& spec, Family fam) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string tok = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
    pos = comma == std::string::npos ? spec.size() + 1 : comma + 1;
    if (tok.empty()) throw std::invalid_argument("empty entry in --q list");
    std::size_t dots = tok.find("..");
    if (dots == std::string::npos) {
      std::uint64_t q = parse_u64_strict(tok, "q value");
      if (!family_valid(q, fam))
        throw std::invalid_argument("q = " + tok + " is not " + family_requirement(fam));
      out.push_back(q);
    } else {
      std::uint64_t lo = parse_u64_strict(tok.substr(0, dots), "range start");
      std::uint64_t hi = parse_u64_strict(tok.substr(dots + 2), "range end");
      if (lo > hi) throw std::invalid_argument("range " + tok + " is reversed");
      for (std::uint64_t q = lo; q <= hi; ++q)
        if (family_valid(q, fam)) out.push_back(q);
    }
  }
  if (out.empty())
    throw std::invalid_argument("--q \"" + spec + "\" selects no valid value");
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << content;
  if (!f.good()) throw std::runtime_error("failed while writing " + path);
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
  }
}

struct CommonArgs {
  bool serial = false;
  std::string format = "text";
  std::string out_path;
  std::uint64_t budget_flag = 0;
  bool budget_set = false;

  SearchOptions search_options() const {
    SearchOptions o;
    o.mode = serial ? ExecMode::serial : ExecMode::parallel;
    o.budget_ms = budget_set ? std::optional<std::uint64_t>(budget_flag)
                             : env_budget_ms();
    return o;
  }
};

void add_common(CLI::App* sc, CommonArgs& c, bool with_budget = true) {
  sc->add_flag("--serial", c.serial, "run sweeps single-threaded");
  sc->add_option("--format", c.format, "output rendering")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  sc->add_option("--out", c.out_path, "write the JSON result to this file");
  if (with_budget) {
    auto* b = sc->add_option("--budget-ms", c.budget_flag,
                             "refuse sweeps estimated to exceed this budget "
                             "(overrides CARTAN_FORGE_BUDGET_MS)");
    sc->callback([&c, b] { c.budget_set = b->count() > 0; });
  }
}

void emit(const json& j, const std::string& text, const CommonArgs& c,
          std::ostream& out) {
  if (!c.out_path.empty()) write_file(c.out_path, j.dump(2) + "\n");
  if (c.format == "json")
    out << j.dump(2) << "\n";
  else
    out << text;
}

int cmd_construct(const std::string& ring_dsl, std::uint64_t n, bool classical,
                  const CommonArgs& c, std::ostream& out) {
  RingPtr ring = Ring::parse(ring_dsl);
  if (n < 2) throw std::invalid_argument("--n must be at least 2");
  auto res = construct_odac(ring, static_cast<std::size_t>(n));

  if (const auto* ob = std::get_if<Obstruction>(&res)) {
    bool no_odac = ob->kind == Obstruction::Kind::no_odac;
    json j{{"kind", no_odac ? "no_odac" : "no_construction"}, {"reason", ob->reason}};
    std::string text = "no decomposition: " + ob->reason + "\n";
    if (ob->central_witness) {
      j["central_witness"] = ser::matrix_to_json(*ob->central_witness);
      text += "central element:\n" + ser::matrix_to_text(*ob->central_witness);
    }
    emit(j, text, c, out);
    return no_odac ? kNoOdac : kNoConstruction;
  }

  const auto& dec = std::get<Decomposition>(res);
  VerifyOptions vo;
  vo.check_classical = classical;
  vo.parallel = !c.serial;
  VerificationReport rep = verify_odac(dec, vo);
  json dj = ser::decomposition_to_json(dec);
  // The output file holds the plain decomposition so it can be fed back into
  // `verify --in`; the combined object only goes to stdout.
  if (!c.out_path.empty()) write_file(c.out_path, dj.dump(2) + "\n");
  if (c.format == "json") {
    out << json{{"decomposition", std::move(dj)}, {"report", ser::report_to_json(rep)}}
               .dump(2)
        << "\n";
  } else {
    out << ser::decomposition_to_text(dec) << ser::report_to_text(rep);
  }
  return rep.pass() ? kOk : kVerificationFailed;
}

int cmd_verify(const std::string& in_path, bool classical, const CommonArgs& c,
               std::ostream& out) {
  if (in_path.empty()) throw std::invalid_argument("--in is required");
  Decomposition dec = ser::decomposition_from_json(read_json_file(in_path));
  VerifyOptions vo;
  vo.check_classical = classical;
  vo.parallel = !c.serial;
  VerificationReport rep = verify_odac(dec, vo);
  emit(ser::report_to_json(rep), ser::report_to_text(rep), c, out);
  return rep.pass() ? kOk : kVerificationFailed;
}

int cmd_search_sl3(const std::string& q_spec, const CommonArgs& c, std::ostream& out) {
  SearchOptions opts = c.search_options();
  json table = json::array();
  std::string text;
  for (std::uint64_t q : parse_q_list(q_spec, Family::sl3)) {
    auto r = search::classical_odac_search_sl3(q, opts);
    table.push_back(ser::sl3_result_to_json(r));
    text += ser::sl3_result_to_text(r);
  }
  emit(table, text, c, out);
  return kOk;
}

int cmd_oracle(const std::string& q_spec, bool shape_census, const CommonArgs& c,
               std::ostream& out) {
  SearchOptions opts = c.search_options();
  std::string spec = q_spec.empty() && shape_census ? "5" : q_spec;
  if (spec.empty()) throw std::invalid_argument("--q is required");
  json table = json::array();
  std::string text;
  bool ok = true;
  for (std::uint64_t q : parse_q_list(spec, Family::sl3)) {
    if (shape_census) {
      auto r = search::pair_shape_census(q, opts);
      table.push_back(ser::census_result_to_json(r));
      text += ser::census_result_to_text(r);
      ok = ok && r.ok;
    } else {
      auto r = search::killing_degeneracy_oracle(q, opts);
      table.push_back(ser::oracle_result_to_json(r));
      text += ser::oracle_result_to_text(r);
      ok = ok && r.counterexamples == 0;
    }
  }
  emit(table, text, c, out);
  return ok ? kOk : kVerificationFailed;
}

int cmd_remark(const std::string& q_spec, const CommonArgs& c, std::ostream& out) {
  SearchOptions opts = c.search_options();
  json table = json::array();
  std::string text;
  bool ok = true;
  for (std::uint64_t q : parse_q_list(q_spec, Family::sl3)) {
    auto r = search::verify_remark_no_pair(q, opts);
    table.push_back(ser::remark_result_to_json(r));
    text += ser::remark_result_to_text(r);
    ok = ok && r.no_orthogonal_pair;
  }
  emit(table, text, c, out);
  return ok ? kOk : kVerificationFailed;
}

int cmd_sl2(const std::string& q_spec, const CommonArgs& c, std::ostream& out) {
  SearchOptions opts = c.search_options();
  json table = json::array();
  std::string text;
  for (std::uint64_t q : parse_q_list(q_spec, Family::sl2)) {
    auto r = search::sl2_orthogonality_analysis(q, opts);
    table.push_back(ser::sl2_analysis_to_json(r));
    text += ser::sl2_analysis_to_text(r);
  }
  emit(table, text, c, out);
  return kOk;
}

int cmd_ring_info(const std::string& ring_dsl, const CommonArgs& c, std::ostream& out) {
  RingPtr ring = Ring::parse(ring_dsl);
  json j{{"ring", ring->dsl()},
         {"size", ring->size()},
         {"characteristic", ring->characteristic()},
         {"is_field", ring->is_field()},
         {"is_local", ring->is_local()}};
  std::string text = ring->dsl() + ": size " + std::to_string(ring->size()) +
                     ", characteristic " + std::to_string(ring->characteristic()) +
                     (ring->is_field() ? ", field" : "") +
                     (ring->is_local() ? ", local" : "") + "\n";
  json locals = json::array();
  for (const LocalFactor& lf : crt_decompose(ring)) {
    locals.push_back(json{{"ring", lf.ring->dsl()},
                          {"prime", lf.prime},
                          {"residue_unit_order", lf.residue_unit_order}});
    text += "  local factor " + lf.ring->dsl() + ": residue characteristic " +
            std::to_string(lf.prime) + ", residue unit group order " +
            std::to_string(lf.residue_unit_order) + "\n";
  }
  j["local_factors"] = std::move(locals);
  emit(j, text, c, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact constructions and certificates for orthogonal abelian "
               "Cartan decompositions of sl_n over finite commutative rings"};
  app.name("cartan-forge");
  app.require_subcommand(1);

  std::string ring_dsl, q_spec, in_path;
  std::uint64_t n = 0;
  bool classical = false, shape_census = false;
  CommonArgs c_construct, c_verify, c_sl3, c_oracle, c_remark, c_sl2, c_info;

  auto* sc_construct =
      app.add_subcommand("construct", "build a decomposition and certify it");
  sc_construct->add_option("--ring", ring_dsl, "ring DSL, e.g. Z/9 or F_7 or Z/4 x F_25")
      ->required();
  sc_construct->add_option("--n", n, "matrix size")->required();
  sc_construct->add_flag("--classical", classical,
                         "also run the classical Cartan test (fields only)");
  add_common(sc_construct, c_construct, false);

  auto* sc_verify = app.add_subcommand("verify", "re-certify a decomposition file");
  sc_verify->add_option("--in", in_path, "decomposition JSON file")->required();
  sc_verify->add_flag("--classical", classical,
                      "also run the classical Cartan test (fields only)");
  add_common(sc_verify, c_verify, false);

  auto* sc_sl3 = app.add_subcommand(
      "search-sl3", "sweep the two-parameter family for certified decompositions");
  sc_sl3->add_option("--q", q_spec, "field sizes: comma list and lo..hi ranges")
      ->required();
  add_common(sc_sl3, c_sl3);

  auto* sc_oracle = app.add_subcommand(
      "oracle-lemma", "exhaustive degeneracy check for commuting orthogonal pairs");
  sc_oracle->add_option("--q", q_spec, "field sizes: comma list and lo..hi ranges");
  sc_oracle->add_flag("--shape-census", shape_census,
                      "instead scan every plane of zero-diagonal matrices");
  add_common(sc_oracle, c_oracle);

  auto* sc_remark = app.add_subcommand(
      "remark-check", "confirm the family admits no orthogonal pair at this q");
  sc_remark->add_option("--q", q_spec, "field sizes: comma list and lo..hi ranges")
      ->required();
  add_common(sc_remark, c_remark);

  auto* sc_sl2 = app.add_subcommand(
      "sl2-analysis", "orthogonality partners and square classes in the sl_2 family");
  sc_sl2->add_option("--q", q_spec, "field sizes: comma list and lo..hi ranges")
      ->required();
  add_common(sc_sl2, c_sl2);

  auto* sc_info = app.add_subcommand("ring-info", "describe a ring DSL");
  sc_info->add_option("--ring", ring_dsl, "ring DSL")->required();
  add_common(sc_info, c_info, false);

  std::vector<const char*> argv;
  argv.push_back("cartan-forge");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageOrIo;
  }

  try {
    if (sc_construct->parsed())
      return cmd_construct(ring_dsl, n, classical, c_construct, out);
    if (sc_verify->parsed()) return cmd_verify(in_path, classical, c_verify, out);
    if (sc_sl3->parsed()) return cmd_search_sl3(q_spec, c_sl3, out);
    if (sc_oracle->parsed()) return cmd_oracle(q_spec, shape_census, c_oracle, out);
    if (sc_remark->parsed()) return cmd_remark(q_spec, c_remark, out);
    if (sc_sl2->parsed()) return cmd_sl2(q_spec, c_sl2, out);
    if (sc_info->parsed()) return cmd_ring_info(ring_dsl, c_info, out);
    err << "error: no subcommand selected\n";
    return kUsageOrIo;
  } catch (const search::BudgetExceeded& e) {
    err << "budget: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageOrIo;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageOrIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kUsageOrIo;
  }
}

}  // namespace cartan::cli
