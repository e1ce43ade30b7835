#pragma once

#include "aniso/certify.hpp"
#include "aniso/falsify.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace aniso {

using json = nlohmann::json;

// Law schema: {"dim": n, "terms": [{"kind": "plain"|"weighted"|"sqrt_weighted",
// "alpha": a, "A": [[..]], "K": [[..]]?}], "trilinear": [[[..]], ...]?,
// "metadata": {"s": .., "c1": .., "c2": ..}?}
ConstitutiveLaw law_from_json(const json& j);
json law_to_json(const ConstitutiveLaw& law);

Mat mat_from_json(const json& j);
json mat_to_json(const Mat& m);

json certificate_to_json(const Certificate& c);
json violation_to_json(const Violation& v);

// FNV-1a hash of the canonical (sorted-key, whitespace-free) serialization; stable
// under reformatting of the input document.
std::string canonical_digest(const json& j);

}  // namespace aniso
