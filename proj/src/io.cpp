#include "spinchain/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "spinchain/error.hpp"

namespace spinchain::io {

namespace {

std::vector<double> number_array(const json& j, const char* field) {
  if (!j.is_array()) throw ValidationError(std::string(field) + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw ValidationError(std::string(field) + "[" + std::to_string(i) + "]: expected a number");
    }
    out.push_back(j[i].get<double>());
  }
  return out;
}

json big_array(std::span<const BigInt> values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(to_string(v));
  return arr;
}

}  // namespace

ChainSpec chain_spec_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("chain spec: expected a JSON object");
  if (!j.contains("model")) throw ValidationError("model: missing");
  if (!j["model"].is_string()) throw ValidationError("model: expected a string");
  const auto name = j["model"].get<std::string>();
  Model model;
  if (name == "heisenberg") {
    model = Model::Heisenberg;
  } else if (name == "exchange") {
    model = Model::Exchange;
  } else {
    throw ValidationError("model: expected \"heisenberg\" or \"exchange\", got \"" + name + "\"");
  }
  if (!j.contains("couplings")) throw ValidationError("couplings: missing");
  auto couplings = number_array(j["couplings"], "couplings");
  if (!j.contains("fields") || j["fields"].is_null()) {
    return ChainSpec::field_free(model, std::move(couplings));
  }
  return ChainSpec(model, std::move(couplings), number_array(j["fields"], "fields"));
}

json to_json(const ChainSpec& spec) {
  return json{{"model", std::string(model_name(spec.model()))},
              {"couplings", std::vector<double>(spec.couplings().begin(), spec.couplings().end())},
              {"fields", std::vector<double>(spec.fields().begin(), spec.fields().end())}};
}

json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ValidationError(std::string(source) + ":" + std::to_string(line) + ":" +
                          std::to_string(column) + ": JSON syntax error: " + e.what());
  }
}

ChainSpec read_chain_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return chain_spec_from_json(parse_json_text(buffer.str(), path));
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

json to_json(const SingleExcitationOperator& op) {
  return json{{"dimension", op.size()},
              {"diagonal", std::vector<double>(op.diagonal().begin(), op.diagonal().end())},
              {"off_diagonal",
               std::vector<double>(op.off_diagonal().begin(), op.off_diagonal().end())}};
}

json to_json(const Verdict& verdict) {
  json witness = json::object();
  for (const auto& [key, value] : verdict.witness) witness[key] = value;
  return json{{"verdict", verdict.impossible() ? "impossible" : "not_excluded"},
              {"reason", verdict.reason},
              {"witness", witness}};
}

json to_json(const PgstCertificate& cert) {
  json j{{"holds", cert.holds}, {"spectrum", big_array(cert.spectrum)},
         {"sign_pattern", cert.sign_pattern}};
  j["witness"] = cert.witness ? big_array(*cert.witness) : json(nullptr);
  return j;
}

json to_json(const PgtPlan& plan) {
  return json{{"N", plan.N},
              {"epsilon", plan.epsilon},
              {"a", to_string(plan.a)},
              {"k", to_string(plan.k)},
              {"M", plan.M},
              {"L", to_string(plan.phase_multiplier)},
              {"t_over_pi", to_string(plan.k)},
              {"truncated", plan.truncated},
              {"fallback_to_full", plan.fallback_to_full},
              {"predicted_fidelity", plan.predicted_fidelity}};
}

json to_json(const PlanEvaluation& evaluation) {
  return json{{"achieved_fidelity", evaluation.achieved_fidelity},
              {"first_order_check",
               {{"residuals", evaluation.first_order.residuals},
                {"max_residual", evaluation.first_order.max_residual},
                {"max_residual_over_a2", evaluation.first_order.max_residual_over_a2}}}};
}

std::string format_double(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, result.ptr);
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
  out << "t,fidelity\n";
  for (const auto& p : points) out << format_double(p.t) << ',' << format_double(p.fidelity) << '\n';
}

void write_fig1_csv(std::ostream& out, const Fig1Data& data) {
  out << "N,M,L,x,y\n";
  for (const auto& row : data.rows) {
    out << row.N << ',' << row.M << ',' << to_string(row.L) << ',' << format_double(row.x) << ','
        << format_double(row.y) << '\n';
  }
}

void write_fig2_csv(std::ostream& out, std::span<const Fig2Row> rows) {
  out << "a,max_fidelity,argmax_t\n";
  for (const auto& row : rows) {
    out << format_double(row.a) << ',' << format_double(row.max_fidelity) << ','
        << format_double(row.argmax_t) << '\n';
  }
}

}  // namespace spinchain::io
