#include "orbitmoment/json_io.hpp"

#include <set>
#include <string>

#include "orbitmoment/errors.hpp"

namespace orbitmoment::io {
namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object(), std::string("expected a JSON object with key '") + key + "'");
  auto it = j.find(key);
  require(it != j.end(), std::string("missing key '") + key + "'");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& what) {
  require(j.is_number_integer(), what + " must be an integer");
  return j.get<std::int64_t>();
}

std::size_t positive_size(const Json& j, const char* key) {
  const auto v = as_int(field(j, key), std::string("'") + key + "'");
  require(v >= 1, std::string("'") + key + "' must be at least 1");
  return static_cast<std::size_t>(v);
}

// 1-based index in [1, n] to 0-based.
std::size_t one_based(const Json& j, std::size_t n, const std::string& what) {
  const auto v = as_int(j, what);
  require(v >= 1 && static_cast<std::uint64_t>(v) <= n,
          what + " out of range 1.." + std::to_string(n));
  return static_cast<std::size_t>(v - 1);
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<std::int64_t>())));
  require(j.is_string(), "rational must be a \"num/den\" string or an integer");
  return parse_rational(j.get<std::string>());
}

Json rational_to_json(const Rational& x) { return to_string(x); }

sphere::SparsePoly poly_from_json(const Json& j) {
  const auto n = positive_size(j, "n");
  const auto d_raw = as_int(field(j, "d"), "'d'");
  require(d_raw >= 0, "'d' must be non-negative");
  const auto& terms = field(j, "terms");
  require(terms.is_array(), "'terms' must be an array");
  std::vector<sphere::RawTerm> raw;
  raw.reserve(terms.size());
  for (const auto& t : terms) {
    const auto& exps = field(t, "exps");
    require(exps.is_array(), "'exps' must be an array");
    sphere::RawTerm r;
    for (const auto& e : exps) r.exps.push_back(as_int(e, "exponent"));
    r.coef = rational_from_json(field(t, "coef"));
    raw.push_back(std::move(r));
  }
  return sphere::validate(n, static_cast<std::uint32_t>(d_raw), raw);
}

Json poly_to_json(const sphere::SparsePoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exps", e}, {"coef", to_string(c)}});
  return {{"n", p.n()}, {"d", p.degree()}, {"terms", std::move(terms)}};
}

std::vector<sphere::SparsePoly> system_from_json(const Json& j) {
  const Json& list = j.is_array() ? j : field(j, "polys");
  require(list.is_array(), "'polys' must be an array");
  std::vector<sphere::SparsePoly> out;
  for (const auto& p : list) out.push_back(poly_from_json(p));
  return out;
}

assign::DenseTensor tensor_from_json(const Json& j) {
  const auto n = positive_size(j, "n");
  const auto d = positive_size(j, "d");
  assign::DenseTensor t(n, d);
  const auto& entries = field(j, "entries");
  require(entries.is_array(), "'entries' must be an array");
  std::set<std::size_t> seen;
  for (const auto& e : entries) {
    const auto& index = field(e, "index");
    require(index.is_array() && index.size() == d,
            "tensor index must be an array of length d=" + std::to_string(d));
    std::vector<std::size_t> idx;
    for (const auto& i : index) idx.push_back(one_based(i, n, "tensor index"));
    const auto linear = t.linear_index(idx);
    require(seen.insert(linear).second, "repeated tensor index");
    t[linear] = rational_from_json(field(e, "value"));
  }
  return t;
}

Json tensor_to_json(const assign::DenseTensor& t) {
  Json entries = Json::array();
  for (std::size_t linear = 0; linear < t.size(); ++linear) {
    if (sgn(t[linear]) == 0) continue;
    auto index = t.multi_index(linear);
    for (auto& i : index) ++i;
    entries.push_back({{"index", index}, {"value", to_string(t[linear])}});
  }
  return {{"n", t.n()}, {"d", t.order()}, {"entries", std::move(entries)}};
}

assign::Permutation permutation_from_json(const Json& j) {
  const auto& images = field(j, "images");
  require(images.is_array() && !images.empty(), "'images' must be a non-empty array");
  std::vector<std::size_t> out;
  for (const auto& v : images) out.push_back(one_based(v, images.size(), "permutation image"));
  return assign::Permutation(std::move(out));
}

Json permutation_to_json(const assign::Permutation& g) {
  std::vector<std::size_t> images = g.images();
  for (auto& v : images) ++v;
  return {{"images", images}};
}

hyper::Hypergraph hypergraph_from_json(const Json& j) {
  const auto n = positive_size(j, "n");
  const auto d = positive_size(j, "d");
  const auto& edges = field(j, "edges");
  require(edges.is_array(), "'edges' must be an array");
  std::vector<std::vector<std::size_t>> out;
  for (const auto& e : edges) {
    require(e.is_array(), "each edge must be an array of vertices");
    std::vector<std::size_t> edge;
    for (const auto& v : e) edge.push_back(one_based(v, n, "vertex"));
    out.push_back(std::move(edge));
  }
  std::vector<Rational> weights;
  if (auto it = j.find("weights"); it != j.end()) {
    require(it->is_array(), "'weights' must be an array");
    for (const auto& w : *it) weights.push_back(rational_from_json(w));
    require(weights.size() == out.size(), "'weights' must have one entry per edge");
  }
  return hyper::Hypergraph(n, d, std::move(out), std::move(weights));
}

Json hypergraph_to_json(const hyper::Hypergraph& h) {
  Json edges = Json::array();
  for (auto e : h.edges()) {
    for (auto& v : e) ++v;
    edges.push_back(e);
  }
  Json weights = Json::array();
  for (const auto& w : h.weights()) weights.push_back(to_string(w));
  return {{"n", h.n()}, {"d", h.d()}, {"edges", std::move(edges)}, {"weights", std::move(weights)}};
}

Json interval_to_json(const Interval& iv) {
  return {{"lower", iv.lower},
          {"upper", iv.upper},
          {"lower_exact", to_string(iv.lower_exact)},
          {"upper_exact", to_string(iv.upper_exact)},
          {"factor", iv.factor.get_str()},
          {"k_used", iv.k_used},
          {"ratio", iv.ratio()},
          {"degenerate", iv.degenerate}};
}

Json checks_to_json(const std::vector<theory::InequalityCheck>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) {
    out.push_back({{"inequality", c.inequality},
                   {"lhs", to_string(c.lhs)},
                   {"rhs", to_string(c.rhs)},
                   {"holds", c.holds},
                   {"tight", c.tight}});
  }
  return out;
}

Json sandwich_report_to_json(const theory::SandwichReport& r) {
  return {{"n", r.n},
          {"k", r.k},
          {"sup_abs", to_string(r.sup_abs)},
          {"moment_2k", to_string(r.moment_2k)},
          {"moment_2", to_string(r.moment_2)},
          {"norm_2k", root_2k(r.moment_2k, r.k)},
          {"d_k", r.d_k},
          {"checks", checks_to_json(r.checks)},
          {"all_hold", r.all_hold()}};
}

Json cor16_report_to_json(const theory::Cor16Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(
        {{"dim", c.dim}, {"factor", c.factor}, {"target", c.target}, {"holds", c.holds}});
  }
  return {{"eps", r.eps}, {"k0", r.k0}, {"checks", std::move(checks)}, {"all_hold", r.all_hold()}};
}

}  // namespace orbitmoment::io
