#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "simplex_spectra/binomial.hpp"
#include "simplex_spectra/cell_complex.hpp"
#include "simplex_spectra/dense_eigen.hpp"
#include "simplex_spectra/error.hpp"

using namespace simplex_spectra;

TEST_SUITE("cells") {

TEST_CASE("binomials and factorials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(119, 2) == 7021);
  CHECK(binomial(4, 7) == 0);
  CHECK(binomial(66, 33) == 7219428434016265740ull);
  CHECK_THROWS_AS(binomial(70, 35), CapExceeded);
  CHECK(falling_factorial(8, 3) == 336);
  CHECK(falling_factorial(3, 5) == 0);
  CHECK(factorial(6) == 720);
  CHECK(log_binomial(10, 3) == doctest::Approx(std::log(120.0)));
  CHECK(log_binomial(200, 100) == doctest::Approx(std::lgamma(201.0) - 2 * std::lgamma(101.0)).epsilon(1e-12));
  const BinomialTable t(20, 5);
  for (std::uint32_t v = 0; v <= 20; ++v)
    for (std::uint32_t j = 0; j <= 5; ++j) CHECK(t(v, j) == binomial(v, j));
}

TEST_CASE("cell basics") {
  const Cell c{1, 4, 7};
  CHECK(c.size() == 3);
  CHECK(c.dim() == 2);
  CHECK(c.contains(4));
  CHECK_FALSE(c.contains(5));
  CHECK(c.index_of(7) == 2);
  CHECK(c.without_index(1) == Cell{1, 7});
  CHECK(c.with_vertex(0) == Cell{0, 1, 4, 7});
  CHECK(c.minus(Cell{1, 7}) == std::vector<Vertex>{4});
  CHECK(Cell{1, 2}.unite(Cell{2, 5}) == Cell{1, 2, 5});
  CHECK(c.str() == "[2,5,8]");
  CHECK(c.str(false) == "[1,4,7]");
  CHECK_THROWS_AS((Cell{3, 1}), DomainError);
  const Vertex raw[] = {9, 2, 5};
  CHECK(Cell::from_unsorted(raw) == Cell{2, 5, 9});
}

TEST_CASE("colex rank and unrank are inverse bijections, n <= 12") {
  for (std::uint32_t n = 1; n <= 12; ++n)
    for (std::size_t size = 1; size <= n; ++size) {
      const std::uint64_t total = binomial(n, size);
      std::set<Cell> seen;
      for (std::uint64_t r = 0; r < total; ++r) {
        const Cell c = unrank_cell(r, size, n);
        REQUIRE(c.size() == size);
        REQUIRE(c.back() < n);
        REQUIRE(rank_cell(c, n) == r);
        REQUIRE(colex_rank(c) == r);
        seen.insert(c);
      }
      CHECK(seen.size() == total);
      // colex order: rank increases with the cell compared from the top vertex down
      for (std::uint64_t r = 1; r < total; ++r) {
        const Cell a = unrank_cell(r - 1, size, n), b = unrank_cell(r, size, n);
        std::vector<Vertex> ra(a.begin(), a.end()), rb(b.begin(), b.end());
        std::reverse(ra.begin(), ra.end());
        std::reverse(rb.begin(), rb.end());
        CHECK(ra < rb);
      }
    }
}

TEST_CASE("CellIndexer agrees with the free functions") {
  const CellIndexer ix(3, 9);
  CHECK(ix.num_faces() == binomial(9, 3));
  CHECK(ix.num_cells() == binomial(9, 4));
  for (std::uint64_t r = 0; r < ix.num_faces(); ++r) CHECK(ix.rank(ix.face(r)) == r);
  for (std::uint64_t r = 0; r < ix.num_cells(); ++r) {
    CHECK(ix.cell(r) == unrank_cell(r, 4, 9));
    CHECK(ix.rank(ix.cell(r)) == r);
  }
}

TEST_CASE("boundary faces omit one vertex each") {
  const auto f = boundary_faces(Cell{2, 3, 8});
  REQUIRE(f.size() == 3);
  CHECK(f[0] == Cell{3, 8});
  CHECK(f[1] == Cell{2, 8});
  CHECK(f[2] == Cell{2, 3});
}

TEST_CASE("pair_sign matches brute-force orientation check, d <= 3, n <= 8") {
  for (std::size_t d = 1; d <= 3; ++d)
    for (std::uint32_t n = d + 1; n <= 8; ++n) {
      const std::uint64_t cells = binomial(n, d + 1);
      for (std::uint64_t r = 0; r < cells; ++r) {
        const Cell tau = unrank_cell(r, d + 1, n);
        for (std::size_t i = 0; i <= d; ++i)
          for (std::size_t j = 0; j <= d; ++j)
            if (i != j) REQUIRE(pair_sign(d, i, j) == pair_sign_bruteforce(tau, i, j));
      }
    }
  CHECK(pair_sign(1, 0, 1) == 1);   // d = 1: plain adjacency
  CHECK(pair_sign(2, 0, 1) == 1);  // [2,3] and -[1,3] both lie in the boundary of [1,2,3]
  CHECK(pair_sign(2, 0, 2) == -1);
}

TEST_CASE("sign rule mutation flips exactly one pair") {
  const SignRule flip{true};
  CHECK(flip(2, 0, 1) == -pair_sign(2, 0, 1));
  CHECK(flip(2, 1, 0) == -pair_sign(2, 1, 0));
  CHECK(flip(2, 0, 2) == pair_sign(2, 0, 2));
  CHECK(flip(3, 1, 2) == pair_sign(3, 1, 2));
}

TEST_CASE("each d-cell's sign block has eigenvalues {-d, 1 x d}") {
  // rows/cols = faces of tau, entry pair_sign off the diagonal
  for (std::size_t d = 1; d <= 5; ++d) {
    DenseMatrix m(d + 1, d + 1);
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t j = 0; j <= d; ++j)
        if (i != j) m(i, j) = pair_sign(d, i, j);
    const auto ev = test_helpers::jacobi_eigenvalues(m);
    CHECK(ev[0] == doctest::Approx(-static_cast<double>(d)));
    for (std::size_t i = 1; i <= d; ++i) CHECK(ev[i] == doctest::Approx(1.0));
  }
}

TEST_CASE("neighbors: count d(n-d), symmetric relation, consistent signs") {
  for (std::size_t d = 1; d <= 3; ++d)
    for (std::uint32_t n = d + 1; n <= 8; ++n) {
      const CellIndexer ix(d, n);
      std::vector<CellIndexer::NeighborRank> nr;
      for (std::uint64_t r = 0; r < ix.num_faces(); ++r) {
        const Cell s = ix.face(r);
        const auto nb = neighbors(s, n);
        REQUIRE(nb.size() == d * (n - d));
        ix.neighbor_ranks(s, nr);
        REQUIRE(nr.size() == nb.size());
        for (std::size_t i = 0; i < nb.size(); ++i) {
          CHECK(ix.rank(nb[i].sigma) == nr[i].face);
          CHECK(ix.rank(nb[i].tau) == nr[i].cell);
          CHECK(nb[i].sign == nr[i].sign);
          CHECK(nb[i].tau == s.unite(nb[i].sigma));
          CHECK(nb[i].sigma.size() == d);
          // relation is symmetric with the same sign
          const auto back = neighbors(nb[i].sigma, n);
          const auto it = std::find_if(back.begin(), back.end(), [&](const Neighbor& x) { return x.sigma == s; });
          REQUIRE(it != back.end());
          CHECK(it->sign == nb[i].sign);
        }
      }
    }
}

}  // TEST_SUITE
