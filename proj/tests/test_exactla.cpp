#include <random>

#include "doctest.h"
#include "nilbal/exactla.hpp"

using namespace nilbal;

namespace {

IntegerMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int spread) {
  std::uniform_int_distribution<int> d(-spread, spread);
  IntegerMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

std::vector<long> as_longs(const SmithNormalForm& s) {
  std::vector<long> out;
  for (const auto& d : s.divisors) out.push_back(d.get_si());
  return out;
}

}  // namespace

TEST_CASE("smith normal form on small cases") {
  CHECK(as_longs(smith_normal_form(IntegerMatrix{{2, 0}, {0, 3}})) == std::vector<long>{1, 6});
  CHECK(as_longs(smith_normal_form(IntegerMatrix::identity(3))) == std::vector<long>{1, 1, 1});
  CHECK(smith_normal_form(IntegerMatrix(2, 2)).rank() == 0);
  CHECK(as_longs(smith_normal_form(IntegerMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})) ==
        std::vector<long>{2, 6, 12});
  CHECK(smith_normal_form(IntegerMatrix(0, 3)).rank() == 0);
}

TEST_CASE("smith decomposition witnesses") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntegerMatrix m = random_matrix(rng, r, c, 6);
    if (trial % 3 == 0)  // force rank deficiency
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = 2 * m(0, j);
    SmithDecomposition s = smith_decompose(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(s.U * s.U_inv == IntegerMatrix::identity(r));
    CHECK(s.V * s.V_inv == IntegerMatrix::identity(c));
    for (std::size_t i = 0; i < s.form.rank(); ++i) {
      CHECK(s.D(i, i) == s.form.divisors[i]);
      CHECK(s.form.divisors[i] > 0);
      if (i + 1 < s.form.rank()) CHECK(s.form.divisors[i + 1] % s.form.divisors[i] == 0);
    }
    CHECK(s.form.rank() == rank_q(m));
    for (std::uint64_t p : {2u, 3u, 5u}) {
      std::size_t expect = 0;
      for (const auto& d : s.form.divisors)
        if (d % p != 0) ++expect;
      CHECK(rank_p(m, p) == expect);
    }
  }
}

TEST_CASE("ranks over Q and F_p") {
  CHECK(rank_q(IntegerMatrix::identity(4)) == 4);
  CHECK(rank_q(IntegerMatrix(3, 3)) == 0);
  CHECK(rank_q(IntegerMatrix{{2, 4}, {1, 2}}) == 1);
  IntegerMatrix d{{2, 0}, {0, 3}};
  CHECK(rank_p(d, 2) == 1);
  CHECK(rank_p(d, 5) == 2);
  CHECK(rank_p(IntegerMatrix::identity(3), 7) == 3);
  CHECK_THROWS_AS(rank_p(d, 4), InputError);
  CHECK_THROWS_AS(rank_p(d, 1), InputError);
}

TEST_CASE("rational kernels") {
  CHECK(kernel_q(IntegerMatrix::identity(3)).cols() == 0);
  CHECK(kernel_q(IntegerMatrix(2, 2)).cols() == 2);
  RationalMatrix k = kernel_q(IntegerMatrix{{1, 1}});
  REQUIRE(k.cols() == 1);
  CHECK(k(0, 0) == -k(1, 0));
  CHECK(k(0, 0) != 0);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    IntegerMatrix m = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 6, 4);
    RationalMatrix kq = kernel_q(m);
    CHECK(kq.cols() == m.cols() - rank_q(m));
    CHECK((to_rational(m) * kq).is_zero());
    CHECK(rank_q(kq) == kq.cols());
  }
}

TEST_CASE("kernel over F_p") {
  IntegerMatrix m{{1, 2}, {3, 4}};  // det -2
  CHECK(kernel(to_rational(m), Field::prime(2)).cols() == 1);
  CHECK(kernel(to_rational(m), Field::prime(3)).cols() == 0);
}

TEST_CASE("hermite rows and integer kernels") {
  IntegerMatrix m{{2, 4, 6}, {1, 1, 1}};
  HermiteForm h = hermite_rows(m);
  CHECK(h.rows.rows() == 2);
  CHECK(h.pivots == std::vector<std::size_t>{0, 1});
  CHECK(h.rows(0, 0) == 1);
  CHECK(h.rows(1, 1) == 2);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    IntegerMatrix a = random_matrix(rng, 1 + rng() % 3, 2 + rng() % 4, 5);
    IntegerMatrix k = integer_kernel(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() == a.cols() - rank_q(a));
    // saturated: the kernel lattice has trivial elementary divisors
    for (const auto& d : smith_normal_form(k).divisors) CHECK(d == 1);
  }
}

TEST_CASE("unimodular inverse") {
  IntegerMatrix u{{2, 1}, {1, 1}};
  CHECK(unimodular_inverse(u) * u == IntegerMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntegerMatrix{{2, 0}, {0, 1}}), ComputationError);
}

TEST_CASE("reduce modulo a row space") {
  RowEchelon e = row_echelon(RationalMatrix{{1, 1, 0}});
  std::vector<Rational> v{Rational(2), Rational(0), Rational(5)};
  std::vector<Rational> r = reduce_modulo(e, v);
  CHECK(r[0] == 0);
  CHECK(r[1] == -2);
  CHECK(r[2] == 5);
}
