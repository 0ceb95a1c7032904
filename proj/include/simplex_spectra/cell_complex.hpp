#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "simplex_spectra/binomial.hpp"

namespace simplex_spectra {

using Vertex = std::uint32_t;

inline constexpr std::size_t kMaxCellSize = 16;

// A cell is a strictly increasing vertex list, i.e. positively oriented.
// Vertices are 0-based; anything user-facing prints them 1-based.
class Cell {
 public:
  Cell() = default;
  Cell(std::initializer_list<Vertex> vs);

  static Cell from_sorted(std::span<const Vertex> vs);
  static Cell from_unsorted(std::span<const Vertex> vs);

  std::size_t size() const { return size_; }
  int dim() const { return static_cast<int>(size_) - 1; }
  bool empty() const { return size_ == 0; }
  Vertex operator[](std::size_t i) const { return v_[i]; }
  const Vertex* begin() const { return v_.data(); }
  const Vertex* end() const { return v_.data() + size_; }
  Vertex back() const { return v_[size_ - 1]; }

  bool contains(Vertex x) const;
  // position of x, or size() if absent
  std::size_t index_of(Vertex x) const;
  Cell without_index(std::size_t i) const;
  Cell with_vertex(Vertex x) const;
  // vertices of *this not in other, ascending
  std::vector<Vertex> minus(const Cell& other) const;
  Cell unite(const Cell& other) const;

  std::string str(bool one_based = true) const;

  friend bool operator==(const Cell& a, const Cell& b) {
    if (a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a.v_[i] != b.v_[i]) return false;
    return true;
  }
  friend std::strong_ordering operator<=>(const Cell& a, const Cell& b);

 private:
  std::array<Vertex, kMaxCellSize> v_{};
  std::uint8_t size_ = 0;
};

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept;
};

// sum_i C(v_i, i+1); independent of n
std::uint64_t colex_rank(const Cell& c);
std::uint64_t rank_cell(const Cell& c, std::uint32_t n);
Cell unrank_cell(std::uint64_t rank, std::size_t size, std::uint32_t n);

// face i omits vertex i of tau
std::vector<Cell> boundary_faces(const Cell& tau);

// Relative orientation of faces i and j of a d-cell (d+1 vertices).
// +1 means sigma_i ~ sigma_j, i.e. sigma_i and the negatively oriented
// sigma_j are both in the boundary of one orientation of tau.
int pair_sign(std::size_t d, std::size_t i, std::size_t j);

// Same relation decided by enumerating all orientations of tau. Slow.
int pair_sign_bruteforce(const Cell& tau, std::size_t i, std::size_t j);

// Hook used by mutation tests: flips the sign of face pair {0,1}.
struct SignRule {
  bool flip_first_pair = false;
  int operator()(std::size_t d, std::size_t i, std::size_t j) const {
    const int s = pair_sign(d, i, j);
    return flip_first_pair && ((i == 0 && j == 1) || (i == 1 && j == 0)) ? -s : s;
  }
};

struct Neighbor {
  Cell sigma;  // the neighbor (d-1)-cell
  Cell tau;    // the d-cell both lie in
  int sign = 0;
};

// All sigma' with |sigma ∩ sigma'| = d-1 and sigma ∪ sigma' a d-cell on [n].
// Ordered by added vertex, then by position of the removed vertex.
std::vector<Neighbor> neighbors(const Cell& sigma, std::uint32_t n, SignRule rule = {});

// Ranks of (d-1)-faces and d-cells over [n]; shared by matrix builders.
class CellIndexer {
 public:
  CellIndexer(std::size_t d, std::uint32_t n, SignRule rule = {});

  std::size_t d() const { return d_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t num_faces() const { return num_faces_; }
  std::uint64_t num_cells() const { return num_cells_; }
  const SignRule& rule() const { return rule_; }

  std::uint64_t rank(const Cell& c) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < c.size(); ++i) r += table_(c[i], static_cast<std::uint32_t>(i + 1));
    return r;
  }
  Cell face(std::uint64_t r) const;
  Cell cell(std::uint64_t r) const;

  struct NeighborRank {
    std::uint64_t face;
    std::uint64_t cell;
    int sign;
  };
  // same order as neighbors()
  void neighbor_ranks(const Cell& sigma, std::vector<NeighborRank>& out) const;

 private:
  Cell unrank(std::uint64_t r, std::size_t size) const;

  std::size_t d_;
  std::uint32_t n_;
  SignRule rule_;
  BinomialTable table_;
  std::uint64_t num_faces_ = 0;
  std::uint64_t num_cells_ = 0;
};

}  // namespace simplex_spectra
