#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "spinchain/chain_model.hpp"
#include "spinchain/criteria.hpp"
#include "spinchain/exact.hpp"
#include "spinchain/pgt_route.hpp"
#include "spinchain/spectral.hpp"

namespace spinchain::io {

using nlohmann::json;

/// {"model": "heisenberg"|"exchange", "couplings": [...], "fields": [...]}.
/// Missing fields default to zeros. Throws ValidationError naming the field.
ChainSpec chain_spec_from_json(const json& j);
json to_json(const ChainSpec& spec);

/// Parses text; syntax errors are reported as ValidationError with line and
/// column.
json parse_json_text(std::string_view text, std::string_view source = "<input>");
ChainSpec read_chain_spec(const std::string& path);
void write_json_file(const std::string& path, const json& j);

json to_json(const SingleExcitationOperator& op);
json to_json(const Verdict& verdict);
json to_json(const PgstCertificate& cert);
json to_json(const PgtPlan& plan);
json to_json(const PlanEvaluation& evaluation);

/// Full round-trip precision.
std::string format_double(double x);

/// CSV with header "t,fidelity".
void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);
/// CSV with header "N,M,L,x,y"; L as a decimal string.
void write_fig1_csv(std::ostream& out, const Fig1Data& data);
/// CSV with header "a,max_fidelity,argmax_t".
void write_fig2_csv(std::ostream& out, std::span<const Fig2Row> rows);

}  // namespace spinchain::io
