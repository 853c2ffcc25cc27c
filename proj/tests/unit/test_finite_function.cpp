#include <algorithm>
#include <numeric>
#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "mclass/errors.hpp"
#include "mclass/finite_function.hpp"
#include "oracles.hpp"

using namespace mclass;
using namespace mclass::testing;

namespace {

Rational q(const char* text) { return parse_rational(text); }

MetricType type(std::initializer_list<const char*> w) {
  std::vector<Rational> v;
  for (const char* t : w) v.push_back(q(t));
  return MetricType(std::move(v));
}

bool witness_carries(const FiniteFunction& f, const FiniteFunction& g, const IsoWitness& w) {
  const auto fp = purify(f).pure;
  const auto gp = purify(g).pure;
  for (std::size_t x = 0; x < fp.rows(); ++x) {
    if (fp.x_space().weight(x) != gp.x_space().weight(w.rows[x])) return false;
    for (std::size_t y = 0; y < fp.cols(); ++y) {
      if (fp.at(x, y) != gp.at(w.rows[x], w.cols[y])) return false;
    }
  }
  for (std::size_t y = 0; y < fp.cols(); ++y) {
    if (fp.y_space().weight(y) != gp.y_space().weight(w.cols[y])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("function shape validation") {
  CHECK_THROWS_AS(FiniteFunction(FiniteMeasureSpace::uniform(2), FiniteMeasureSpace::uniform(2),
                                 std::vector<Label>{"0", "1", "1"}),
                  InvalidFunction);
  CHECK_THROWS_AS(make({"1/2", "1/2"}, {"1"}, {{"0"}, {"1", "2"}}), InvalidFunction);
}

TEST_CASE("is_pure") {
  CHECK(is_pure(xor_uniform()));
  CHECK(is_pure(f_star()));
  CHECK_FALSE(is_pure(constant_uniform()));
  CHECK_FALSE(is_pure(make({"1/2", "1/2"}, {"1/2", "1/2"}, {{"0", "0"}, {"1", "1"}})));
}

TEST_CASE("purify merges columns and sums weights") {
  const auto f = make({"1/2", "1/2"}, {"1/2", "1/2"}, {{"0", "0"}, {"1", "1"}});
  const auto [pure, maps] = purify(f);
  CHECK(pure.rows() == 2);
  CHECK(pure.cols() == 1);
  CHECK(pure.y_space().weights() == std::vector<Rational>{Rational(1)});
  CHECK(pure.values() == std::vector<Label>{"0", "1"});
  CHECK(maps.col_projection == std::vector<std::size_t>{0, 0});
  CHECK(maps.row_projection == std::vector<std::size_t>{0, 1});
}

TEST_CASE("purify on pure and constant inputs") {
  const auto p = purify(f_star());
  CHECK(p.pure == f_star());
  CHECK(p.maps.row_projection == std::vector<std::size_t>{0, 1});
  CHECK(p.maps.col_projection == std::vector<std::size_t>{0, 1});

  const auto c = purify(constant_uniform());
  CHECK(c.pure.rows() == 1);
  CHECK(c.pure.cols() == 1);
  CHECK(c.pure.x_space().weight(0) == 1);
  CHECK(c.pure.y_space().weight(0) == 1);
}

TEST_CASE("purify properties over random non-pure functions") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    std::uint64_t state = rng();
    const std::size_t nx = 1 + rng() % 4;
    const std::size_t ny = 1 + rng() % 4;
    auto x = random_space(state, nx, 12);
    auto y = random_space(state, ny, 12);
    std::vector<Label> values(nx * ny);
    for (auto& v : values) v = std::to_string(rng() % 2);
    const FiniteFunction f(x, y, values);
    const auto [pure, maps] = purify(f);
    CHECK(is_pure(pure));
    CHECK(pure.rows() == distinct_rows(f));
    CHECK(pure.cols() == distinct_cols(f));
    // Pushforward weights and the factor identity.
    std::vector<Rational> xw(pure.rows());
    std::vector<Rational> yw(pure.cols());
    for (std::size_t i = 0; i < nx; ++i) xw[maps.row_projection[i]] += x.weight(i);
    for (std::size_t j = 0; j < ny; ++j) yw[maps.col_projection[j]] += y.weight(j);
    CHECK(xw == pure.x_space().weights());
    CHECK(yw == pure.y_space().weights());
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < ny; ++j) CHECK(f.at(i, j) == pure.at(maps.row_projection[i], maps.col_projection[j]));
    }
    CHECK(purify(pure).pure == pure);
    CHECK(canonical_form(purify(pure).pure) == canonical_form(pure));
    // The extended labels remember the merged fibers.
    CHECK((canonical_form(pure) == canonical_form(f)) == is_pure(f));
    // Base values of the extended factor are pure.
    const auto ext = extended_pure_factor(f);
    std::vector<Label> base;
    for (const auto& v : ext.values) base.push_back(v.base);
    CHECK(is_pure(FiniteFunction(ext.x_space, ext.y_space, base)));
  }
}

TEST_CASE("extended_pure_factor metric types") {
  const auto ext = extended_pure_factor(f_star());
  for (const auto& v : ext.values) {
    CHECK(v.row_type == type({"1"}));
    CHECK(v.col_type == type({"1"}));
  }
  const auto cols = extended_pure_factor(make({"1/2", "1/2"}, {"1/3", "2/3"}, {{"0", "0"}, {"1", "1"}}));
  CHECK(cols.y_space.size() == 1);
  CHECK(cols.at(0, 0).col_type == type({"2/3", "1/3"}));
  CHECK(cols.at(1, 0).row_type == type({"1"}));
  const auto c = extended_pure_factor(constant_uniform());
  REQUIRE(c.values.size() == 1);
  CHECK(c.values[0].row_type == type({"1/2", "1/2"}));
  CHECK(c.values[0].col_type == type({"1/2", "1/2"}));
}

TEST_CASE("canonical_form examples") {
  const auto f = xor_uniform();
  const auto g = make({"1/2", "1/2"}, {"1/2", "1/2"}, {{"1", "0"}, {"0", "1"}});
  CHECK(canonical_form(f) == canonical_form(g));
  const auto a = make({"2/3", "1/3"}, {"1/2", "1/2"}, {{"0", "1"}, {"1", "0"}});
  const auto b = make({"1/3", "2/3"}, {"1/2", "1/2"}, {{"0", "1"}, {"1", "0"}});
  CHECK(canonical_form(a) == canonical_form(b));
  CHECK_FALSE(canonical_form(f_star()) == canonical_form(xor_uniform()));
}

TEST_CASE("canonical_form is invariant under atom reorderings") {
  for (const auto& f : corpus(60)) {
    for (std::uint64_t s = 0; s < 4; ++s) CHECK(canonical_form(shuffled(f, s)) == canonical_form(f));
  }
}

TEST_CASE("canonical_form separates non-isomorphic corpus pairs") {
  const auto fs = corpus(40);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i; j < fs.size(); ++j) {
      const bool brute = brute_isomorphic_pure(fs[i], fs[j]);
      CHECK((canonical_form(fs[i]) == canonical_form(fs[j])) == brute);
      const auto w = isomorphic(fs[i], fs[j]);
      CHECK(w.has_value() == brute);
      if (w) CHECK(witness_carries(fs[i], fs[j], *w));
    }
  }
}

TEST_CASE("isomorphic witness examples") {
  const auto f = identity3();
  const std::vector<std::size_t> rows{2, 0, 1};
  const std::vector<std::size_t> cols{1, 2, 0};
  const auto g = make({"1/3", "1/3", "1/3"}, {"1/2", "1/4", "1/4"}, {{"0", "1", "2"}, {"1", "2", "0"}, {"2", "0", "1"}});
  const auto w = isomorphic(g, g.permuted(rows, cols));
  REQUIRE(w);
  CHECK(witness_carries(g, g.permuted(rows, cols), *w));
  CHECK(isomorphic(f, f));
  CHECK_FALSE(isomorphic(xor_uniform(), constant_uniform()));
  const auto collapsed = make({"1/2", "1/2"}, {"1"}, {{"0"}, {"1"}});
  const auto wide = make({"1/2", "1/2"}, {"1/2", "1/2"}, {{"0", "0"}, {"1", "1"}});
  // Two Y atoms against one: the fiber metric types differ.
  CHECK_FALSE(isomorphic(wide, collapsed));
  CHECK(isomorphic(purify(wide).pure, collapsed));
  const auto wide_copy = make({"1/2", "1/2"}, {"1/2", "1/2"}, {{"1", "1"}, {"0", "0"}});
  CHECK(isomorphic(wide, wide_copy));
  // Same pure factor, different fibers: the extended labels tell them apart.
  const auto skew = make({"1/2", "1/2"}, {"1/4", "3/4"}, {{"0", "0"}, {"1", "1"}});
  CHECK_FALSE(isomorphic(wide, skew));
}

TEST_CASE("canonical labeling handles symmetric functions") {
  // Uniform weights and a highly symmetric pattern force individualization.
  const auto cyc = make({"1/4", "1/4", "1/4", "1/4"}, {"1/4", "1/4", "1/4", "1/4"},
                        {{"1", "1", "0", "0"}, {"0", "1", "1", "0"}, {"0", "0", "1", "1"}, {"1", "0", "0", "1"}});
  const auto cross = make({"1/4", "1/4", "1/4", "1/4"}, {"1/4", "1/4", "1/4", "1/4"},
                          {{"1", "1", "0", "0"}, {"1", "0", "1", "0"}, {"0", "1", "0", "1"}, {"0", "0", "1", "1"}});
  CHECK(brute_isomorphic_pure(cyc, cross) == (canonical_form(cyc) == canonical_form(cross)));
  for (std::uint64_t s = 0; s < 10; ++s) {
    CHECK(canonical_form(shuffled(cyc, s)) == canonical_form(cyc));
    CHECK(canonical_form(shuffled(cross, s)) == canonical_form(cross));
  }
}
