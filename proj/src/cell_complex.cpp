#include "simplex_spectra/cell_complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "simplex_spectra/error.hpp"

namespace simplex_spectra {

namespace {

void check_size(std::size_t n) {
  if (n > kMaxCellSize) throw DomainError("cell has more than 16 vertices");
}

int permutation_parity(const std::vector<std::size_t>& p) {
  std::size_t inv = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

Cell::Cell(std::initializer_list<Vertex> vs) {
  *this = from_sorted(std::span<const Vertex>(vs.begin(), vs.size()));
}

Cell Cell::from_sorted(std::span<const Vertex> vs) {
  check_size(vs.size());
  Cell c;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i > 0 && vs[i] <= vs[i - 1]) throw DomainError("cell vertices must be strictly increasing");
    c.v_[i] = vs[i];
  }
  c.size_ = static_cast<std::uint8_t>(vs.size());
  return c;
}

Cell Cell::from_unsorted(std::span<const Vertex> vs) {
  check_size(vs.size());
  std::array<Vertex, kMaxCellSize> tmp{};
  std::copy(vs.begin(), vs.end(), tmp.begin());
  std::sort(tmp.begin(), tmp.begin() + vs.size());
  return from_sorted(std::span<const Vertex>(tmp.data(), vs.size()));
}

bool Cell::contains(Vertex x) const { return index_of(x) != size_; }

std::size_t Cell::index_of(Vertex x) const {
  for (std::size_t i = 0; i < size_; ++i)
    if (v_[i] == x) return i;
  return size_;
}

Cell Cell::without_index(std::size_t i) const {
  Cell c;
  std::size_t k = 0;
  for (std::size_t a = 0; a < size_; ++a)
    if (a != i) c.v_[k++] = v_[a];
  c.size_ = static_cast<std::uint8_t>(k);
  return c;
}

Cell Cell::with_vertex(Vertex x) const {
  if (contains(x)) throw DomainError("vertex already in cell");
  check_size(size_ + 1u);
  Cell c;
  std::size_t k = 0, a = 0;
  while (a < size_ && v_[a] < x) c.v_[k++] = v_[a++];
  c.v_[k++] = x;
  while (a < size_) c.v_[k++] = v_[a++];
  c.size_ = static_cast<std::uint8_t>(k);
  return c;
}

std::vector<Vertex> Cell::minus(const Cell& other) const {
  std::vector<Vertex> out;
  for (Vertex x : *this)
    if (!other.contains(x)) out.push_back(x);
  return out;
}

Cell Cell::unite(const Cell& other) const {
  std::vector<Vertex> all(begin(), end());
  for (Vertex x : other)
    if (!contains(x)) all.push_back(x);
  return from_unsorted(all);
}

std::string Cell::str(bool one_based) const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) os << ',';
    os << v_[i] + (one_based ? 1 : 0);
  }
  os << ']';
  return os.str();
}

std::strong_ordering operator<=>(const Cell& a, const Cell& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t CellHash::operator()(const Cell& c) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ c.size();
  for (Vertex v : c) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t colex_rank(const Cell& c) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < c.size(); ++i) r += binomial(c[i], i + 1);
  return r;
}

std::uint64_t rank_cell(const Cell& c, std::uint32_t n) {
  if (c.empty()) throw DomainError("empty cell");
  if (c.back() >= n) throw DomainError("cell vertex outside [n]");
  return colex_rank(c);
}

Cell unrank_cell(std::uint64_t rank, std::size_t size, std::uint32_t n) {
  check_size(size);
  if (size == 0 || size > n) throw DomainError("cell size out of range");
  if (rank >= binomial(n, size)) throw DomainError("rank out of range");
  std::array<Vertex, kMaxCellSize> v{};
  Vertex hi = n;
  for (std::size_t i = size; i-- > 0;) {
    // largest x < hi with C(x, i+1) <= rank
    Vertex x = hi - 1;
    while (binomial(x, i + 1) > rank) --x;
    v[i] = x;
    rank -= binomial(x, i + 1);
    hi = x;
  }
  return Cell::from_sorted(std::span<const Vertex>(v.data(), size));
}

std::vector<Cell> boundary_faces(const Cell& tau) {
  if (tau.size() < 2) throw DomainError("boundary of a 0-cell");
  std::vector<Cell> out;
  out.reserve(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) out.push_back(tau.without_index(i));
  return out;
}

int pair_sign(std::size_t d, std::size_t i, std::size_t j) {
  if (d == 0 || i > d || j > d || i == j) throw DomainError("pair_sign: bad face indices");
  return (i + j) % 2 == 1 ? 1 : -1;
}

int pair_sign_bruteforce(const Cell& tau, std::size_t i, std::size_t j) {
  const std::size_t m = tau.size();
  if (m < 2 || i >= m || j >= m || i == j) throw DomainError("pair_sign_bruteforce: bad face indices");
  // perm[pos] = index of the tau vertex placed at position pos
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  bool same = false, opposite = false;
  std::vector<int> orient(m);
  do {
    for (std::size_t pos = 0; pos < m; ++pos) {
      std::vector<std::size_t> rest;
      for (std::size_t q = 0; q < m; ++q)
        if (q != pos) rest.push_back(perm[q]);
      // induced orientation of the face opposite tau vertex perm[pos]
      orient[perm[pos]] = (pos % 2 == 0 ? 1 : -1) * permutation_parity(rest);
    }
    if (orient[i] == 1 && orient[j] == -1) same = true;
    if (orient[i] == 1 && orient[j] == 1) opposite = true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (same == opposite) throw std::logic_error("inconsistent orientation enumeration");
  return same ? 1 : -1;
}

std::vector<Neighbor> neighbors(const Cell& sigma, std::uint32_t n, SignRule rule) {
  if (sigma.empty()) throw DomainError("empty cell");
  if (sigma.back() >= n) throw DomainError("cell vertex outside [n]");
  const std::size_t d = sigma.size();
  std::vector<Neighbor> out;
  out.reserve(d * (n - d));
  for (Vertex v = 0; v < n; ++v) {
    if (sigma.contains(v)) continue;
    const Cell tau = sigma.with_vertex(v);
    const std::size_t i = tau.index_of(v);
    for (std::size_t a = 0; a < d; ++a) {
      const std::size_t j = tau.index_of(sigma[a]);
      out.push_back({tau.without_index(j), tau, rule(d, i, j)});
    }
  }
  return out;
}

CellIndexer::CellIndexer(std::size_t d, std::uint32_t n, SignRule rule) : d_(d), n_(n), rule_(rule) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (d + 1 > kMaxCellSize) throw DomainError("d too large");
  if (n < d + 1) throw DomainError("n must be >= d + 1");
  table_ = BinomialTable(n, static_cast<std::uint32_t>(d + 1));
  num_faces_ = binomial(n, d);
  num_cells_ = binomial(n, d + 1);
}

Cell CellIndexer::unrank(std::uint64_t r, std::size_t size) const {
  std::array<Vertex, kMaxCellSize> v{};
  Vertex hi = n_;
  for (std::size_t i = size; i-- > 0;) {
    const auto j = static_cast<std::uint32_t>(i + 1);
    // binary search the largest x < hi with C(x, j) <= r
    Vertex lo = static_cast<Vertex>(i), top = hi - 1;
    while (lo < top) {
      const Vertex mid = lo + (top - lo + 1) / 2;
      if (table_(mid, j) <= r) lo = mid; else top = mid - 1;
    }
    v[i] = lo;
    r -= table_(lo, j);
    hi = lo;
  }
  return Cell::from_sorted(std::span<const Vertex>(v.data(), size));
}

Cell CellIndexer::face(std::uint64_t r) const {
  if (r >= num_faces_) throw DomainError("face rank out of range");
  return unrank(r, d_);
}

Cell CellIndexer::cell(std::uint64_t r) const {
  if (r >= num_cells_) throw DomainError("cell rank out of range");
  return unrank(r, d_ + 1);
}

void CellIndexer::neighbor_ranks(const Cell& sigma, std::vector<NeighborRank>& out) const {
  out.clear();
  const std::size_t d = d_;
  for (Vertex v = 0; v < n_; ++v) {
    if (sigma.contains(v)) continue;
    const Cell tau = sigma.with_vertex(v);
    const std::size_t i = tau.index_of(v);
    const std::uint64_t tr = rank(tau);
    for (std::size_t a = 0; a < d; ++a) {
      const std::size_t j = tau.index_of(sigma[a]);
      out.push_back({rank(tau.without_index(j)), tr, rule_(d, i, j)});
    }
  }
}

}  // namespace simplex_spectra
