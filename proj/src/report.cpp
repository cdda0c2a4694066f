#include "ptrs/report.hpp"

#include "ptrs/certificate_io.hpp"

namespace ptrs {

nlohmann::json interpretation_json(const Interpretation& interp) {
  nlohmann::json j;
  j["kind"] = shape_name(interp);
  j["symbols"] = nlohmann::json::array();
  if (const auto* poly = std::get_if<PolyInterpretation<Rational>>(&interp)) {
    j["dimension"] = nullptr;
    for (const auto& [name, f] : poly->symbols) {
      nlohmann::json coefficients = nlohmann::json::array();
      for (const auto& [subset, c] : f.coefficients) {
        if (c == 0) continue;
        coefficients.push_back({{"arguments", subset}, {"value", to_string(c)}});
      }
      j["symbols"].push_back({{"symbol", name}, {"arity", f.arity}, {"coefficients", coefficients}});
    }
  } else {
    const auto& mat = std::get<MatrixInterpretation<Rational>>(interp);
    j["dimension"] = mat.dimension;
    for (const auto& [name, f] : mat.symbols) {
      nlohmann::json matrices = nlohmann::json::array();
      for (const auto& m : f.arguments) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : m) {
          nlohmann::json r = nlohmann::json::array();
          for (const auto& v : row) r.push_back(to_string(v));
          rows.push_back(r);
        }
        matrices.push_back(rows);
      }
      nlohmann::json constant = nlohmann::json::array();
      for (const auto& v : f.constant) constant.push_back(to_string(v));
      j["symbols"].push_back(
          {{"symbol", name}, {"arity", f.arguments.size()}, {"matrices", matrices}, {"constant", constant}});
    }
  }
  j["text"] = render_interpretation(interp);
  return j;
}

nlohmann::json verdict_json(const Verdict& v, const std::string& command) {
  nlohmann::json j;
  j["command"] = command;
  j["verdict"] = to_string(v.answer);
  j["shape"] = v.shape ? nlohmann::json(v.shape->name()) : nlohmann::json(nullptr);
  if (v.certificate) {
    nlohmann::json cert;
    cert["interpretation"] = interpretation_json(v.certificate->interpretation);
    cert["rules"] = nlohmann::json::array();
    for (const auto& m : v.certificate->margins) cert["rules"].push_back({{"rule", m.rule}, {"margin", to_string(m.margin)}});
    cert["epsilon"] = to_string(v.certificate->epsilon);
    j["certificate"] = cert;
  } else {
    j["certificate"] = nullptr;
  }
  j["shapes"] = nlohmann::json::array();
  for (const auto& o : v.outcomes) j["shapes"].push_back({{"shape", o.shape.name()}, {"status", o.status}, {"detail", o.detail}});
  j["problems"] = v.problems;
  j["error"] = v.answer == Verdict::Answer::Error ? nlohmann::json(v.diagnostic) : nlohmann::json(nullptr);
  return j;
}

}  // namespace ptrs
