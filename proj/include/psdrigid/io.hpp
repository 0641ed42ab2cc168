#pragma once

#include "psdrigid/classify.hpp"
#include "psdrigid/factorization.hpp"
#include "psdrigid/motions.hpp"

#include <json.hpp>

#include <string>

namespace psdrigid {

// {"k":2, "A":[[a11,a12,a22],...], "B":[...], "M":[[...]]}; M optional.
// Entries are JSON numbers or "num/den" strings. When any factor entry is a
// string the factorization carries exact data. Throws SchemaError naming the
// offending JSON path.
PsdFactorization factorization_from_json(const nlohmann::json& doc);
PsdFactorization parse_factorization(const std::string& text);

// Factor entries as rational strings when exact data is present, otherwise
// as shortest round-trip decimals.
nlohmann::json factorization_to_json(const PsdFactorization& F);
std::string serialize_factorization(const PsdFactorization& F);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& X);
// Witness triple as 1-based factor numbers.
nlohmann::json report_to_json(const RigidityReport& report);
nlohmann::json verdicts_to_json(const RigidityReport& report);

// key: value lines for the top-level entries of a report object.
std::string render_text(const nlohmann::json& report);

}  // namespace psdrigid
