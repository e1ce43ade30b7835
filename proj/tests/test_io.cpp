#include "aniso/law_io.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

using namespace aniso;

TEST_CASE("law JSON round trip preserves the digest") {
  json j = json::parse(R"({
    "dim": 2,
    "terms": [
      {"kind": "plain", "alpha": 0.0, "A": [[1.0, 0.0], [0.0, 1.0]]},
      {"kind": "plain", "alpha": 1.0, "A": [[2.0, 0.5], [0.5, 1.0]]}
    ],
    "trilinear": [[[1.0, 0.0], [0.0, 5.0]], [[5.0, 0.0], [0.0, 1.0]]],
    "metadata": {"s": 3.0}
  })");
  ConstitutiveLaw law = law_from_json(j);
  CHECK(law.dim == 2);
  CHECK(law.terms.size() == 2);
  CHECK(law.trilinear.has_value());
  REQUIRE(law.metadata.has_value());
  CHECK(law.metadata->s == 3.0);

  json back = law_to_json(law);
  ConstitutiveLaw again = law_from_json(back);
  CHECK(canonical_digest(back) == canonical_digest(law_to_json(again)));
}

TEST_CASE("digest ignores formatting but not content") {
  json a = json::parse(R"({"dim": 2, "terms": []})");
  json b = json::parse("{ \"terms\" : [ ] , \"dim\" : 2 }");
  CHECK(canonical_digest(a) == canonical_digest(b));
  json c = a;
  c["dim"] = 3;
  CHECK(canonical_digest(a) != canonical_digest(c));
}

TEST_CASE("weighted and sqrt-weighted kinds survive the round trip") {
  json j = json::parse(R"({
    "dim": 2,
    "terms": [
      {"kind": "weighted", "alpha": 0.5, "A": [[1.0, 0.0], [0.0, 2.0]],
       "K": [[3.0, 0.0], [0.0, 3.0]]},
      {"kind": "sqrt_weighted", "alpha": 2.0, "A": [[2.0, 0.0], [0.0, 2.0]]}
    ]
  })");
  ConstitutiveLaw law = law_from_json(j);
  CHECK(law.terms[0].kind == WeightKind::Weighted);
  CHECK(law.terms[1].kind == WeightKind::SqrtWeighted);
  ConstitutiveLaw again = law_from_json(law_to_json(law));
  Vec u(2);
  u << 1.0, -2.0;
  CHECK((law.eval(u) - again.eval(u)).norm() == 0.0);
}

TEST_CASE("malformed documents throw with a diagnostic") {
  CHECK_THROWS(law_from_json(json::parse(R"({"terms": []})")));  // missing dim
  CHECK_THROWS(law_from_json(json::parse(R"({"dim": 2, "terms": [{"kind": "nope",
    "alpha": 1.0, "A": [[1,0],[0,1]]}]})")));
}

TEST_CASE("certificate and violation serialization") {
  Certificate c;
  c.theorem_id = "crossed-closed-form";
  c.verdict = Verdict::PowerMonotone;
  c.order = 3.0;
  c.witness["margin"] = 0.1;
  json j = certificate_to_json(c);
  CHECK(j["theorem_id"] == "crossed-closed-form");
  CHECK(j["verdict"] == "PowerMonotone");
  CHECK(j["order"] == 3.0);

  Violation v;
  v.u = Vec::Ones(2);
  v.v = -Vec::Ones(2);
  v.value = -1.5;
  json jv = violation_to_json(v);
  CHECK(jv["value"] == -1.5);
  CHECK(jv["u"].size() == 2);
}
