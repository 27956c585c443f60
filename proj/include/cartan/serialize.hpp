#pragma once

#include <string>

#include "json.hpp"

#include "cartan/matrix.hpp"
#include "cartan/ring.hpp"
#include "cartan/search.hpp"
#include "cartan/sln.hpp"

namespace cartan::serialize {

using nlohmann::json;

// Ring elements. Residue rings encode as a plain number, field elements as
// the coefficient list of the representative polynomial (low degree first,
// length = extension degree, also for degree 1), products as one entry per
// factor. Malformed or out-of-range data raises std::runtime_error.
json element_to_json(const RingPtr& ring, RElem x);
RElem element_from_json(const RingPtr& ring, const json& j);

// Matrices carry their own ring: {"ring", "rows", "cols", "entries"} with
// entries as a rows x cols nested array.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

// Decompositions: {"ring", "n", "components": [{"name", "basis": [...]}, ...],
// "provenance": {...}}. Loading rebuilds the subalgebras without any closure
// or orthogonality checks, so a tampered file loads fine and then fails
// verification instead of failing the parse.
json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const json& j);

json report_to_json(const VerificationReport& r);

json sl3_result_to_json(const search::Sl3SearchResult& r);
json remark_result_to_json(const search::RemarkResult& r);
json oracle_result_to_json(const search::OracleResult& r);
json census_result_to_json(const search::CensusResult& r);
json sl2_analysis_to_json(const search::Sl2Analysis& r);

// Plain-text renderings for terminal output.
std::string matrix_to_text(const Matrix& m);
std::string decomposition_to_text(const Decomposition& d);
std::string report_to_text(const VerificationReport& r);
std::string sl3_result_to_text(const search::Sl3SearchResult& r);
std::string remark_result_to_text(const search::RemarkResult& r);
std::string oracle_result_to_text(const search::OracleResult& r);
std::string census_result_to_text(const search::CensusResult& r);
std::string sl2_analysis_to_text(const search::Sl2Analysis& r);

}  // namespace cartan::serialize
