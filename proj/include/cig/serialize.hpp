#pragma once

#include "json.hpp"

#include "cig/ci.hpp"
#include "cig/digraph.hpp"
#include "cig/finite_group.hpp"
#include "cig/perm_group.hpp"

namespace cig {

using Json = nlohmann::ordered_json;

/// {"order": n, "arcs": [[u, v], ...]}
Json to_json(const Digraph& d);
Digraph digraph_from_json(const Json& j);

Json to_json(const PointPartition& p);
Json to_json(const GroupAutomorphism& a);
Json to_json(const CIPairResult& r);
Json to_json(const CIGroupVerdict& v);
Json to_json(const LiftResult& l);
Json to_json(const NamedCheck& c);
Json to_json(const QuotientCICertificate& c);
Json to_json(const WreathAutReport& r);

}  // namespace cig
