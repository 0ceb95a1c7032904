#include "simplex_spectra/random_models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "simplex_spectra/error.hpp"
#include "simplex_spectra/rng.hpp"

namespace simplex_spectra {

namespace {

constexpr char kMagic[4] = {'S', 'S', 'C', 'X'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  os.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& is) {
  char buf[sizeof(T)];
  if (!is.read(buf, sizeof(T))) throw IoError("truncated complex sample");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

void check_dims(std::size_t d, std::uint32_t n) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (n < d + 1) throw DomainError("n must be >= d + 1");
}

// Row-wise assembly: every row sigma visits its d(n-d) neighbours; the cell
// value array decides the entry (zero means structurally absent).
SparseSymmetricMatrix assemble(const CellIndexer& ix, const std::vector<double>& cell_value, bool is_signed) {
  const std::uint64_t N = ix.num_faces();
  if (N > UINT32_MAX) throw CapExceeded("too many rows");
  std::vector<std::uint64_t> rp(N + 1, 0);
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  std::vector<CellIndexer::NeighborRank> nb;
  std::vector<std::pair<std::uint32_t, double>> row;
  for (std::uint64_t r = 0; r < N; ++r) {
    const Cell sigma = ix.face(r);
    ix.neighbor_ranks(sigma, nb);
    row.clear();
    for (const auto& e : nb) {
      const double v = cell_value[e.cell];
      if (v == 0.0) continue;
      row.emplace_back(static_cast<std::uint32_t>(e.face), is_signed ? static_cast<double>(e.sign) * v : v);
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [c, v] : row) {
      cols.push_back(c);
      vals.push_back(v);
    }
    rp[r + 1] = cols.size();
  }
  return SparseSymmetricMatrix(N, std::move(rp), std::move(cols), std::move(vals));
}

// shared by calA and H so that H(Bernoulli(p)) reproduces calA bit for bit
inline double centred(double z, double mean, double denom) { return (z - mean) / denom; }

std::vector<double> h_values(const CellIndexer& ix, const DistributionSpec& spec, std::uint64_t seed) {
  spec.validate();
  const double mean = spec.mean();
  const double var = spec.variance();
  if (!(var > 0.0)) throw DomainError("entry law has zero variance");
  const double denom = std::sqrt(static_cast<double>(ix.n()) * var);
  const CounterRng rng(seed);
  std::vector<double> v(ix.num_cells());
  for (std::uint64_t t = 0; t < v.size(); ++t) v[t] = centred(spec.draw(rng.uniform(t)), mean, denom);
  return v;
}

}  // namespace

ComplexSample::ComplexSample(std::size_t d, std::uint32_t n, double p, std::uint64_t seed,
                             std::vector<std::uint64_t> bits)
    : d_(d), n_(n), p_(p), seed_(seed), bits_(std::move(bits)) {
  check_dims(d, n);
  num_candidates_ = binomial(n, d + 1);
  if (bits_.size() != (num_candidates_ + 63) / 64) throw DomainError("bitset size does not match C(n, d+1)");
  const std::uint64_t tail = num_candidates_ % 64;
  if (tail && (bits_.back() >> tail) != 0) throw DomainError("bits set beyond C(n, d+1)");
}

std::uint64_t ComplexSample::num_present() const {
  std::uint64_t c = 0;
  for (auto w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

std::vector<Cell> ComplexSample::present_cells() const {
  const CellIndexer ix(d_, n_);
  std::vector<Cell> out;
  for (std::uint64_t t = 0; t < num_candidates_; ++t)
    if (present(t)) out.push_back(ix.cell(t));
  return out;
}

void ComplexSample::write_binary(std::ostream& os) const {
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(d_));
  put<std::uint32_t>(os, n_);
  put<double>(os, p_);
  put<std::uint64_t>(os, seed_);
  put<std::uint64_t>(os, num_candidates_);
  for (auto w : bits_) put<std::uint64_t>(os, w);
  if (!os) throw IoError("failed writing complex sample");
}

ComplexSample ComplexSample::read_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw IoError("not a complex sample file");
  if (get<std::uint32_t>(is) != kVersion) throw IoError("unsupported complex sample version");
  const auto d = get<std::uint32_t>(is);
  const auto n = get<std::uint32_t>(is);
  const auto p = get<double>(is);
  const auto seed = get<std::uint64_t>(is);
  const auto count = get<std::uint64_t>(is);
  if (d < 1 || n < d + 1 || count != binomial(n, d + 1)) throw IoError("corrupt complex sample header");
  std::vector<std::uint64_t> bits((count + 63) / 64);
  for (auto& w : bits) w = get<std::uint64_t>(is);
  return ComplexSample(d, n, p, seed, std::move(bits));
}

std::string ComplexSample::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "simplex-spectra/complex-sample/1";
  j["d"] = d_;
  j["n"] = n_;
  j["p"] = p_;
  j["seed"] = seed_;
  j["candidates"] = num_candidates_;
  j["present_count"] = num_present();
  auto cells = nlohmann::ordered_json::array();
  for (const Cell& c : present_cells()) {
    auto a = nlohmann::ordered_json::array();
    for (Vertex v : c) a.push_back(v + 1);
    cells.push_back(std::move(a));
  }
  j["present"] = std::move(cells);
  return j.dump(1);
}

ComplexSample ComplexSample::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const std::size_t d = j.at("d").get<std::size_t>();
  const auto n = j.at("n").get<std::uint32_t>();
  check_dims(d, n);
  const CellIndexer ix(d, n);
  std::vector<std::uint64_t> bits((ix.num_cells() + 63) / 64, 0);
  for (const auto& c : j.at("present")) {
    std::vector<Vertex> vs;
    for (const auto& v : c) {
      const auto x = v.get<std::int64_t>();
      if (x < 1 || x > n) throw DomainError("vertex out of range in JSON sample");
      vs.push_back(static_cast<Vertex>(x - 1));
    }
    const Cell cell = Cell::from_unsorted(vs);
    if (cell.size() != d + 1) throw DomainError("JSON sample cell has wrong size");
    const auto t = ix.rank(cell);
    bits[t >> 6] |= std::uint64_t{1} << (t & 63);
  }
  return ComplexSample(d, n, j.at("p").get<double>(), j.at("seed").get<std::uint64_t>(), std::move(bits));
}

ComplexSample sample_complex(std::size_t d, std::uint32_t n, double p, std::uint64_t seed) {
  check_dims(d, n);
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  const std::uint64_t count = binomial(n, d + 1);
  const CounterRng rng(seed);
  std::vector<std::uint64_t> bits((count + 63) / 64, 0);
  for (std::uint64_t t = 0; t < count; ++t)
    if (rng.uniform(t) < p) bits[t >> 6] |= std::uint64_t{1} << (t & 63);
  return ComplexSample(d, n, p, seed, std::move(bits));
}

SparseSymmetricMatrix build_A(const ComplexSample& x, SignRule rule) {
  const CellIndexer ix(x.d(), x.n(), rule);
  std::vector<double> v(ix.num_cells());
  for (std::uint64_t t = 0; t < v.size(); ++t) v[t] = x.present(t) ? 1.0 : 0.0;
  return assemble(ix, v, true);
}

SparseSymmetricMatrix build_expected_A(std::size_t d, std::uint32_t n, double p, SignRule rule) {
  check_dims(d, n);
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  const CellIndexer ix(d, n, rule);
  return assemble(ix, std::vector<double>(ix.num_cells(), p), true);
}

SparseSymmetricMatrix build_calA(const ComplexSample& x, SignRule rule) {
  const double p = x.p();
  if (!(p > 0.0 && p < 1.0)) throw DomainError("calA needs p in (0, 1)");
  const CellIndexer ix(x.d(), x.n(), rule);
  const double var = p * (1.0 - p);
  const double denom = std::sqrt(static_cast<double>(x.n()) * var);
  std::vector<double> v(ix.num_cells());
  for (std::uint64_t t = 0; t < v.size(); ++t) v[t] = centred(x.present(t) ? 1.0 : 0.0, p, denom);
  return assemble(ix, v, true);
}

SparseSymmetricMatrix build_H(std::size_t d, std::uint32_t n, const DistributionSpec& spec, std::uint64_t seed,
                              SignRule rule) {
  check_dims(d, n);
  const CellIndexer ix(d, n, rule);
  return assemble(ix, h_values(ix, spec, seed), true);
}

SparseSymmetricMatrix build_H_unsigned(std::size_t d, std::uint32_t n, const DistributionSpec& spec,
                                       std::uint64_t seed) {
  check_dims(d, n);
  const CellIndexer ix(d, n);
  return assemble(ix, h_values(ix, spec, seed), false);
}

SparseSymmetricMatrix build_Y(std::size_t d, std::uint32_t r, double p0, std::uint64_t seed) {
  check_dims(d, r);
  if (!(p0 > 0.0 && p0 < 1.0)) throw DomainError("p0 must lie in (0, 1)");
  const CellIndexer ix(d, r);
  const double sq = std::sqrt(p0 * (1.0 - p0));
  const CounterRng rng(seed);
  std::vector<double> v(ix.num_cells());
  for (std::uint64_t t = 0; t < v.size(); ++t) v[t] = ((rng.uniform(t) < p0 ? 1.0 : 0.0) - p0) / sq;
  return assemble(ix, v, false);
}

}  // namespace simplex_spectra
