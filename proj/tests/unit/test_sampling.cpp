#include <algorithm>

#include "corpus.hpp"
#include "doctest.h"
#include "mclass/matrix_distribution.hpp"
#include "mclass/sampling.hpp"

using namespace mclass;
using namespace mclass::testing;

TEST_CASE("philox4x32-10 known answers") {
  using W = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == W{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        W{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        W{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("counter draws are pinned") {
  // Layout: key (seed lo, seed hi), counter (index lo, index hi, axis, 0),
  // draw = word1 << 32 | word0.
  const auto w = philox4x32_10({7, 0, 1, 0}, {42, 0});
  CHECK(counter_draw(42, 1, 7) == ((std::uint64_t(w[1]) << 32) | w[0]));
  CHECK(counter_draw(42, 1, 7) != counter_draw(42, 0, 7));
  CHECK(counter_draw(42, 1, 7) != counter_draw(43, 1, 7));
}

TEST_CASE("atom_for_draw thresholds") {
  const auto s = space({"1/4", "1/2", "1/4"});
  CHECK(atom_for_draw(s, 0) == 0);
  CHECK(atom_for_draw(s, (std::uint64_t(1) << 62) - 1) == 0);
  CHECK(atom_for_draw(s, std::uint64_t(1) << 62) == 1);
  CHECK(atom_for_draw(s, (std::uint64_t(3) << 62) - 1) == 1);
  CHECK(atom_for_draw(s, std::uint64_t(3) << 62) == 2);
  CHECK(atom_for_draw(s, ~std::uint64_t(0)) == 2);
  CHECK(atom_for_draw(space({"1"}), 12345) == 0);
}

TEST_CASE("sample_matrix basics") {
  const auto c = sample_matrix(constant_uniform(), 20, 9);
  CHECK(std::all_of(c.values.begin(), c.values.end(), [](const Label& v) { return v == "0"; }));
  const auto one = sample_matrix(make({"1"}, {"1"}, {{"v"}}), 3, 1);
  CHECK(one.values == std::vector<Label>(9, "v"));
  const auto f = f_star();
  const auto r = sample_matrix(f, 40, 5);
  for (std::size_t i = 0; i < 40; ++i) {
    for (std::size_t j = 0; j < 40; ++j) CHECK(r.at(i, j) == f.at(r.row_atoms[i], r.col_atoms[j]));
  }
  CHECK(sample_matrix(f, 40, 5).values == r.values);
  CHECK(sample_matrix(f, 40, 6).values != r.values);
  CHECK(r.row_atoms == sample_atoms(f.x_space(), 40, 5, 0));
  CHECK(r.col_atoms == sample_atoms(f.y_space(), 40, 5, 1));
}

TEST_CASE("xor sample zero fraction") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = sample_matrix(xor_uniform(), 1000, seed);
    const auto zeros = std::count(r.values.begin(), r.values.end(), "0");
    const double frac = double(zeros) / double(r.values.size());
    CHECK(frac >= 0.45);
    CHECK(frac <= 0.55);
  }
}

TEST_CASE("sampling consistency over disjoint diagonal blocks") {
  constexpr std::size_t kBlocks = 10000;
  for (const auto& f : corpus(20)) {
    for (std::size_t k = 1; k <= 2; ++k) {
      const auto xs = sample_atoms(f.x_space(), kBlocks * k, 31 + k, 0);
      const auto ys = sample_atoms(f.y_space(), kBlocks * k, 31 + k, 1);
      std::map<std::vector<Label>, Rational> empirical;
      for (std::size_t b = 0; b < kBlocks; ++b) {
        std::vector<Label> m;
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) m.push_back(f.at(xs[b * k + i], ys[b * k + j]));
        }
        empirical[m] += Rational(1, kBlocks);
      }
      const auto tv = total_variation(empirical, exact_corner_distribution(f, k).entries);
      CHECK(tv <= Rational(1, 20));
    }
  }
}

TEST_CASE("sample_tensor") {
  const auto f = xor_uniform();
  const auto t = sample_tensor(TensorFunction(f), 30, 8);
  const auto m = sample_matrix(f, 30, 8);
  CHECK(t.values == m.values);
  CHECK(t.shape == std::vector<std::size_t>{30, 30});

  std::vector<Label> parity;
  for (int i = 0; i < 8; ++i) parity.push_back(std::to_string(__builtin_popcount(i) % 2));
  const TensorFunction p({FiniteMeasureSpace::uniform(2), FiniteMeasureSpace::uniform(2), FiniteMeasureSpace::uniform(2)},
                         parity);
  const auto s = sample_tensor(p, 100, 3);
  CHECK(s.values.size() == 100u * 100u * 100u);
  const double ones = double(std::count(s.values.begin(), s.values.end(), "1")) / double(s.values.size());
  CHECK(ones >= 0.45);
  CHECK(ones <= 0.55);
  // N = 500 without materializing 500^3 labels: axis a of the tensor draws
  // sample_atoms(space, N, seed, a), and parity is odd on
  // (1 - prod(zeros_a - ones_a) / N^3) / 2 of the cells.
  for (std::uint32_t a = 0; a < 3; ++a) CHECK(sample_atoms(FiniteMeasureSpace::uniform(2), 100, 3, a) == s.atoms[a]);
  const auto odd_share = [](std::size_t n) {
    long long signed_product = 1;
    for (std::uint32_t a = 0; a < 3; ++a) {
      const auto atoms = sample_atoms(FiniteMeasureSpace::uniform(2), n, 3, a);
      const long long n1 = std::count(atoms.begin(), atoms.end(), std::size_t{1});
      signed_product *= (static_cast<long long>(n) - n1) - n1;
    }
    const double cube = double(n) * double(n) * double(n);
    return (1.0 - double(signed_product) / cube) / 2.0;
  };
  CHECK(odd_share(100) == doctest::Approx(ones).epsilon(1e-12));
  const double ones500 = odd_share(500);
  CHECK(ones500 >= 0.45);
  CHECK(ones500 <= 0.55);
  const TensorFunction c({FiniteMeasureSpace::uniform(3), FiniteMeasureSpace::uniform(2), FiniteMeasureSpace::uniform(2)},
                         std::vector<Label>(12, "k"));
  const auto cs = sample_tensor(c, 10, 0);
  CHECK(std::all_of(cs.values.begin(), cs.values.end(), [](const Label& v) { return v == "k"; }));
}
