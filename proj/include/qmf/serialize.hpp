#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qmf/donaldson.hpp"
#include "qmf/multipoly.hpp"
#include "qmf/qseries.hpp"

namespace qmf {

/// Canonical text form: a grading header followed by one line
/// "j/24 <tab> re <tab> im" per stored term, exponents ascending.
std::string qseries_text(const QSeries& s);

/// {"grading":24,"terms":[[j,"re","im"],...],"trunc":j_max}
nlohmann::json qseries_json(const QSeries& s);
QSeries qseries_from_json(const nlohmann::json& j);

nlohmann::json manifold_json(const ManifoldData& data);
ManifoldData manifold_from_json(const nlohmann::json& j);

/// Same header fields as a manifold file, classes carrying "P" instead of "f".
nlohmann::json pk_manifold_json(const ManifoldData& base, const std::vector<PKRecord>& pks);
std::pair<ManifoldData, std::vector<PKRecord>> pk_manifold_from_json(const nlohmann::json& j);

nlohmann::json closed_form_json(const ClosedFormInvariant& cf);
ClosedFormInvariant closed_form_from_json(const nlohmann::json& j);

nlohmann::json multipoly_json(const MultiPoly& p, const std::vector<std::string>& names);

/// Parse a JSON document, converting parser failures to io_error.
nlohmann::json parse_json(const std::string& text);

} // namespace qmf
