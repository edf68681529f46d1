#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>
#include <string>

#include "nks6/cayley.hpp"

using namespace nks6;
using Catch::Matchers::WithinAbs;

namespace {

// The multiplication table transcribed row by row as printed; entry (j, k) is e_j x e_k.
const char* const kPrinted[7] = {
    "0 e3 -e2 e5 -e4 e7 -e6",
    "-e3 0 e1 e6 -e7 -e4 e5",
    "e2 -e1 0 -e7 -e6 e5 e4",
    "-e5 -e6 e7 0 e1 e2 -e3",
    "e4 e7 e6 -e1 0 -e3 -e2",
    "-e7 e4 -e5 -e2 e3 0 e1",
    "e6 -e5 -e4 e3 e2 -e1 0",
};

std::pair<int, int> parse_entry(const std::string& s) {
  if (s == "0") return {0, 0};
  const int sign = s[0] == '-' ? -1 : 1;
  const std::size_t at = s.find('e');
  return {std::stoi(s.substr(at + 1)), sign};
}

Vector7 random_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector7 v;
  for (std::size_t i = 0; i < 7; ++i) v[i] = n(rng);
  return v;
}

}  // namespace

TEST_CASE("basis products reproduce the printed table entry by entry") {
  for (int j = 1; j <= 7; ++j) {
    std::istringstream row(kPrinted[j - 1]);
    std::string entry;
    for (int k = 1; k <= 7; ++k) {
      REQUIRE(row >> entry);
      const auto [index, sign] = parse_entry(entry);
      INFO("e" << j << " x e" << k);
      CHECK(basis_cross(j, k) == std::make_pair(index, sign));
      Vector7 expected;
      if (index) expected[static_cast<std::size_t>(index - 1)] = sign;
      CHECK(cross(basis(j), basis(k)) == expected);
    }
  }
}

TEST_CASE("worked products") {
  CHECK(cross(basis(1), basis(2)) == basis(3));
  CHECK(cross(basis(4), basis(5)) == basis(1));
  CHECK(cross(basis(2), basis(1)) == -basis(3));
  CHECK(cross(basis(6), basis(6)) == Vector7{});
}

TEST_CASE("associative triples are closed under cyclic permutation") {
  // If e_i x e_j = e_k then e_j x e_k = e_i and e_k x e_i = e_j; there are exactly 7 such lines.
  int lines = 0;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) {
      const auto [k, s] = basis_cross(i, j);
      REQUIRE(k != 0);
      const auto a = basis_cross(j, k), b = basis_cross(k, i);
      CHECK(a == std::make_pair(i, s));
      CHECK(b == std::make_pair(j, s));
      if (k > j) ++lines;
    }
  CHECK(lines == 7);
}

TEST_CASE("identity check passes exactly on basis pairs") {
  const auto r = verify_algebra(0);
  CHECK(r.passed());
  CHECK(r.basis_pairs_checked == 49);
  CHECK(r.max_residual() == 0.0);
}

TEST_CASE("identity check on random pairs") {
  const auto r = verify_algebra(2000, 7);
  CHECK(r.passed());
  CHECK(r.random_pairs_checked == 2000);
  CHECK(r.max_residual() <= 1e-12);
}

TEST_CASE("double cross product expands as for a two-fold vector cross product") {
  // x x (x x y) = -|x|^2 y + <x, y> x, checked directly rather than through verify_algebra.
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Vector7 x = random_vector(rng), y = random_vector(rng);
    const Vector7 lhs = cross(x, cross(x, y));
    const Vector7 rhs = -dot(x, x) * y + dot(x, y) * x;
    CHECK(max_abs(lhs - rhs) <= 1e-12 * (1 + dot(x, x) * norm(y)));
  }
}

TEST_CASE("the cross product is not associative") {
  const Vector7 l = cross(cross(basis(1), basis(2)), basis(4));
  const Vector7 r = cross(basis(1), cross(basis(2), basis(4)));
  CHECK(l == -basis(7));
  CHECK(r == basis(7));
}

TEST_CASE("Cayley product real part follows the chosen convention") {
  std::mt19937_64 rng(9);
  const Vector7 x = random_vector(rng), y = random_vector(rng);
  const auto pos = cayley_mul(x, y);
  const auto neg = cayley_mul(x, y, RealPartConvention::kNegativeInner);
  CHECK_THAT(pos.real_part, WithinAbs(dot(x, y), 1e-15));
  CHECK_THAT(neg.real_part, WithinAbs(-dot(x, y), 1e-15));
  CHECK(pos.imaginary_part == cross(x, y));
  CHECK(cayley_mul(basis(3), basis(3)).real_part == 1.0);
}
