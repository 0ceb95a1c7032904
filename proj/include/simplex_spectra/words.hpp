#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "simplex_spectra/cell_complex.hpp"

namespace simplex_spectra {

// A word is a sequence of (d-1)-cells in which consecutive letters span a
// d-cell. Letters are unoriented vertex sets (stored ascending); signs live
// only in matrix entries.
struct Word {
  std::size_t d = 0;
  std::vector<Cell> letters;

  std::size_t length() const { return letters.size(); }
  bool closed() const { return !letters.empty() && letters.front() == letters.back(); }
  std::string str(bool one_based = true) const;

  // "[5,6][6,7][5,6]" with 1-based labels; d taken from the first letter
  static Word parse(std::string_view text);

  friend bool operator==(const Word& a, const Word& b) { return a.d == b.d && a.letters == b.letters; }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.d <=> b.d; c != 0) return c;
    return std::lexicographical_compare_three_way(a.letters.begin(), a.letters.end(), b.letters.begin(),
                                                  b.letters.end());
  }
};

void validate_word(const Word& w);

struct Supports {
  std::vector<Vertex> vertices;  // supp_0, ascending
  std::vector<Cell> cells;       // supp_d, ascending
};
Supports supports(const Word& w);

// tau -> number of steps i with sigma_i ∪ sigma_{i+1} = tau
std::map<Cell, std::size_t> crossing_numbers(const Word& w);

// Apply a vertex map (label v goes to map[v]); letters are re-sorted.
Word relabel(const Word& w, const std::vector<Vertex>& map);

// Representative of the equivalence class of w: vertices relabelled 0, 1, 2, ...
// in order of first appearance. The first letter's internal order is the
// only freedom; it is fixed by taking the lexicographically largest result.
Word canonicalize(const Word& w);

// Canonical closed words of length 2k+1 whose d-cells are all crossed at least
// min_mult times. Sorted. Throws CapExceeded if 2k+1 > max_length.
std::vector<Word> enumerate_closed_words(std::size_t d, unsigned k, std::size_t min_mult = 2,
                                         std::size_t max_length = 9);

struct EmbeddingCount {
  std::uint64_t exact = 0;  // distinct words over [n] equivalent to w
  std::uint64_t lower = 0;  // (n-d+1)! / (n-s)!
  std::uint64_t upper = 0;  // n! / (n-s)!
};
EmbeddingCount count_embeddings(const Word& w, std::uint32_t n, std::uint64_t budget = 5'000'000);

// permutations of supp_0 that fix w letter by letter
std::uint64_t automorphism_count(const Word& w);

}  // namespace simplex_spectra
