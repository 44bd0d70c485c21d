#include <gtest/gtest.h>

#include "orbitmoment/errors.hpp"
#include "orbitmoment/json_io.hpp"

using namespace orbitmoment;
using namespace orbitmoment::io;

TEST(JsonIo, MalformedIsValidationError) {
  EXPECT_THROW(parse_json("{\"n\": 3,"), ValidationError);
  EXPECT_THROW(parse_json(""), ValidationError);
}

TEST(JsonIo, Rationals) {
  EXPECT_EQ(rational_from_json(Json(3)), 3);
  EXPECT_EQ(rational_from_json(Json("-6/4")), Rational(-3, 2));
  EXPECT_THROW(rational_from_json(Json(0.5)), ValidationError);
  EXPECT_EQ(rational_to_json(make_rational(2, 4)), Json("1/2"));
}

TEST(JsonIo, PolynomialRoundTrip) {
  const auto j = parse_json(R"({"n": 3, "d": 2,
    "terms": [{"exps": [0, 1, 1], "coef": "2/3"}, {"exps": [2, 0, 0], "coef": -1},
              {"exps": [0, 1, 1], "coef": "1/3"}]})");
  const auto p = poly_from_json(j);
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.coefficient({0, 1, 1}), 1);
  const auto out = poly_to_json(p);
  // Canonical order: exponent vectors ascending.
  EXPECT_EQ(out["terms"][0]["exps"], Json::array({0, 1, 1}));
  EXPECT_EQ(out["terms"][1]["coef"], "-1/1");
  EXPECT_EQ(poly_from_json(out), p);
}

TEST(JsonIo, PolynomialErrors) {
  EXPECT_THROW(poly_from_json(parse_json(R"({"n": 2, "d": 2})")), ValidationError);
  EXPECT_THROW(poly_from_json(parse_json(R"({"n": 0, "d": 1, "terms": []})")), ValidationError);
  EXPECT_THROW(
      poly_from_json(parse_json(R"({"n": 2, "d": 2, "terms": [{"exps": [2, 0], "coef": "1/0"}]})")),
      ValidationError);
  EXPECT_THROW(
      poly_from_json(parse_json(R"({"n": 2, "d": 2, "terms": [{"exps": [2, 1], "coef": 1}]})")),
      ValidationError);
  EXPECT_THROW(poly_from_json(parse_json("[]")), ValidationError);
}

TEST(JsonIo, System) {
  const auto poly = R"({"n": 2, "d": 1, "terms": [{"exps": [1, 0], "coef": 1}]})";
  EXPECT_EQ(system_from_json(parse_json(std::string("{\"polys\": [") + poly + "]}")).size(), 1u);
  EXPECT_EQ(system_from_json(parse_json(std::string("[") + poly + "," + poly + "]")).size(), 2u);
  EXPECT_THROW(system_from_json(parse_json(R"({"polys": 3})")), ValidationError);
}

TEST(JsonIo, TensorOneBased) {
  const auto t = tensor_from_json(parse_json(
      R"({"n": 3, "d": 2, "entries": [{"index": [1, 3], "value": "5/2"}]})"));
  std::vector<std::size_t> idx{0, 2};
  EXPECT_EQ(t.at(idx), Rational(5, 2));
  EXPECT_EQ(tensor_from_json(tensor_to_json(t)), t);
  EXPECT_THROW(tensor_from_json(parse_json(
                   R"({"n": 3, "d": 2, "entries": [{"index": [0, 1], "value": 1}]})")),
               ValidationError);
  EXPECT_THROW(tensor_from_json(parse_json(
                   R"({"n": 3, "d": 2, "entries": [{"index": [1], "value": 1}]})")),
               ValidationError);
  EXPECT_THROW(tensor_from_json(parse_json(R"({"n": 2, "d": 1, "entries": [
                   {"index": [1], "value": 1}, {"index": [1], "value": 2}]})")),
               ValidationError);
}

TEST(JsonIo, Permutation) {
  const auto g = permutation_from_json(parse_json(R"({"images": [2, 3, 1]})"));
  EXPECT_EQ(g(0), 1u);
  EXPECT_EQ(g(2), 0u);
  EXPECT_EQ(permutation_to_json(g), parse_json(R"({"images": [2, 3, 1]})"));
  EXPECT_THROW(permutation_from_json(parse_json(R"({"images": [1, 1]})")), ValidationError);
  EXPECT_THROW(permutation_from_json(parse_json(R"({"images": [0, 1]})")), ValidationError);
}

TEST(JsonIo, Hypergraph) {
  const auto h = hypergraph_from_json(parse_json(
      R"({"n": 3, "d": 2, "edges": [[2, 1], [2, 3]], "weights": ["1/2", 3]})"));
  EXPECT_EQ(h.edge_count(), 2u);
  EXPECT_EQ(h.weights()[0], Rational(1, 2));
  EXPECT_EQ(h.edges()[0], (std::vector<std::size_t>{0, 1}));
  const auto round = hypergraph_from_json(hypergraph_to_json(h));
  EXPECT_EQ(round.edges(), h.edges());
  EXPECT_EQ(round.weights(), h.weights());
  EXPECT_THROW(hypergraph_from_json(parse_json(R"({"n": 3, "d": 2, "edges": [[1, 4]]})")),
               ValidationError);
  EXPECT_THROW(hypergraph_from_json(
                   parse_json(R"({"n": 3, "d": 2, "edges": [[1, 2]], "weights": [1, 2]})")),
               ValidationError);
}

TEST(JsonIo, IntervalCarriesExactValues) {
  const auto j = interval_to_json(make_interval(Rational(1, 2), Integer(2), 1));
  EXPECT_EQ(j["lower_exact"], "1/2");
  EXPECT_EQ(j["upper_exact"], "1/1");
  EXPECT_EQ(j["factor"], "2");
  EXPECT_EQ(j["k_used"], 1);
  EXPECT_EQ(j["degenerate"], false);
  EXPECT_DOUBLE_EQ(j["upper"].get<double>(), 1.0);
}
