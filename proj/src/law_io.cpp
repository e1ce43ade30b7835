#include "aniso/law_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace aniso {

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::runtime_error("matrix: expected array of rows");
  size_t rows = j.size(), cols = j[0].size();
  Mat m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw std::runtime_error("matrix: ragged rows");
    for (size_t k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

ConstitutiveLaw law_from_json(const json& j) {
  ConstitutiveLaw law;
  if (!j.contains("dim")) throw std::runtime_error("law: missing \"dim\"");
  law.dim = j.at("dim").get<int>();
  for (const json& tj : j.value("terms", json::array())) {
    PowerTerm t;
    std::string kind = tj.value("kind", "plain");
    if (kind == "plain")
      t.kind = WeightKind::Plain;
    else if (kind == "weighted")
      t.kind = WeightKind::Weighted;
    else if (kind == "sqrt_weighted")
      t.kind = WeightKind::SqrtWeighted;
    else
      throw std::runtime_error("law: unknown term kind \"" + kind + "\"");
    t.alpha = tj.value("alpha", 0.0);
    t.A = mat_from_json(tj.at("A"));
    if (t.kind == WeightKind::Weighted) {
      if (!tj.contains("K")) throw std::runtime_error("law: weighted term needs \"K\"");
      t.K_explicit = mat_from_json(tj.at("K"));
    }
    law.terms.push_back(std::move(t));
  }
  if (j.contains("trilinear")) {
    TrilinearForm B;
    for (const json& mj : j.at("trilinear")) B.A.push_back(mat_from_json(mj));
    law.trilinear = std::move(B);
  }
  if (j.contains("metadata")) {
    const json& mj = j.at("metadata");
    LawMetadata m;
    m.s = mj.at("s").get<double>();
    if (mj.contains("order")) m.mono_order = mj.at("order").get<double>();
    if (mj.contains("c2")) m.mono_constant = mj.at("c2").get<double>();
    law.metadata = m;
  }
  law.validate();
  return law;
}

json law_to_json(const ConstitutiveLaw& law) {
  json j;
  j["dim"] = law.dim;
  json terms = json::array();
  for (const PowerTerm& t : law.terms) {
    json tj;
    tj["kind"] = t.kind == WeightKind::Plain      ? "plain"
                 : t.kind == WeightKind::Weighted ? "weighted"
                                                  : "sqrt_weighted";
    tj["alpha"] = t.alpha;
    tj["A"] = mat_to_json(t.A);
    if (t.kind == WeightKind::Weighted) tj["K"] = mat_to_json(t.K_explicit);
    terms.push_back(tj);
  }
  j["terms"] = terms;
  if (law.trilinear) {
    json tl = json::array();
    for (const Mat& Ai : law.trilinear->A) tl.push_back(mat_to_json(Ai));
    j["trilinear"] = tl;
  }
  if (law.metadata) {
    json mj;
    mj["s"] = law.metadata->s;
    if (law.metadata->mono_order) mj["order"] = *law.metadata->mono_order;
    if (law.metadata->mono_constant) mj["c2"] = *law.metadata->mono_constant;
    j["metadata"] = mj;
  }
  return j;
}

json certificate_to_json(const Certificate& c) {
  json j;
  j["theorem_id"] = c.theorem_id;
  j["verdict"] = to_string(c.verdict);
  if (c.order) j["order"] = *c.order;
  if (c.constant) j["constant"] = *c.constant;
  if (!c.witness.empty()) j["witness"] = c.witness;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json violation_to_json(const Violation& v) {
  json j;
  j["u"] = std::vector<double>(v.u.data(), v.u.data() + v.u.size());
  j["v"] = std::vector<double>(v.v.data(), v.v.data() + v.v.size());
  j["value"] = v.value;
  j["seed"] = v.seed;
  return j;
}

std::string canonical_digest(const json& j) {
  std::string canon = j.dump();  // object keys are sorted; no whitespace
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace aniso
