#ifndef CTLAB_SERIALIZE_HPP
#define CTLAB_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "ctlab/audit.hpp"
#include "ctlab/blowup.hpp"
#include "ctlab/certificate.hpp"
#include "ctlab/classify.hpp"
#include "ctlab/threshold.hpp"

namespace ctlab {

using Json = nlohmann::json;

/// Rationals are always strings "p/q" (or "p").
Json rational_json(const Rational& q);
/// Numerators only; the index goes in a sibling "index" field.
Json weight_json(const Weight& w);
Json action_json(const QuotientAction& action, const std::vector<std::int64_t>& labels);
Json trace_json(const NormalFormTrace& trace);

/// {weight, index, chart, action:{order,residues,labels}, map, strict, exceptional, multiplicity}
Json chart_json(const StrictTransformResult& st, const Polynomial& exceptional);
/// {verdict, type?, family?, n?, case_tag?, reason?, jet_cap, trace?}
Json germ_json(const GermClass& g, const NormalFormTrace* trace = nullptr);
Json admissibility_json(const AdmissibilityVerdict& v, const std::string& chart_name);
Json bound_json(const BoundReport& r);
Json decomposition_json(const CaseDecomposition& d);
Json quotient_json(const QuotientCaseResult& q);
Json residue_json(const ResidueAudit& a, const IndexData& data);
/// {type, d, constant, steps:[{weight, charts, pair_discrepancy, ...}], leaves, oracle_facts}
Json certificate_json(const CrepantCertificate& cert);
/// {entries, gap_violations, gorenstein_violations, undetermined, extremal,
///  epsilon_estimate, seed, cap, jet_cap}
Json audit_json(const GapAuditReport& report);

/// Pretty JSON with sorted keys and a trailing newline.
std::string dump(const Json& j);

/// Step blocks with one block per chart.
std::string certificate_text(const CrepantCertificate& cert);
std::string audit_text(const GapAuditReport& report);
std::string bound_text(const BoundReport& r);

}  // namespace ctlab

#endif
