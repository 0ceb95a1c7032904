#include "simplex_spectra/trace_oracle.hpp"

#include <cmath>
#include <vector>

#include "simplex_spectra/binomial.hpp"
#include "simplex_spectra/error.hpp"
#include "simplex_spectra/parallel.hpp"
#include "simplex_spectra/random_models.hpp"

namespace simplex_spectra {

namespace {

struct ExpectationWalker {
  const CellIndexer& ix;
  unsigned steps;
  std::vector<double> mu;  // mu[m] = E (Z-EZ)^m
  std::vector<std::vector<CellIndexer::NeighborRank>> nbr;  // per face rank

  // multiset of d-cells crossed so far, at most `steps` distinct
  std::vector<std::uint64_t> cell;
  std::vector<unsigned> count;
  unsigned singles = 0;
  std::uint64_t start = 0;
  double acc = 0.0;

  void push(std::uint64_t c) {
    for (std::size_t i = 0; i < cell.size(); ++i)
      if (cell[i] == c) {
        if (count[i] == 1) --singles;
        ++count[i];
        return;
      }
    cell.push_back(c);
    count.push_back(1);
    ++singles;
  }
  void pop(std::uint64_t c) {
    for (std::size_t i = cell.size(); i-- > 0;)
      if (cell[i] == c) {
        if (--count[i] == 0) {
          cell.erase(cell.begin() + static_cast<std::ptrdiff_t>(i));
          count.erase(count.begin() + static_cast<std::ptrdiff_t>(i));
          --singles;
        } else if (count[i] == 1) {
          ++singles;
        }
        return;
      }
  }

  void walk(std::uint64_t cur, unsigned depth, int sign) {
    const unsigned left = steps - depth;
    // every remaining step can lift at most one singleton crossing
    if (singles > left) return;
    if (left == 1) {
      for (const auto& nb : nbr[cur])
        if (nb.face == start) {
          push(nb.cell);
          if (singles == 0) {
            double v = sign * nb.sign;
            for (unsigned c : count) v *= mu[c];
            acc += v;
          }
          pop(nb.cell);
        }
      return;
    }
    for (const auto& nb : nbr[cur]) {
      push(nb.cell);
      walk(nb.face, depth + 1, sign * nb.sign);
      pop(nb.cell);
    }
  }
};

double realized_from(const SparseSymmetricMatrix& m, std::uint64_t start, unsigned steps) {
  const auto& rp = m.row_ptr();
  const auto& cols = m.cols();
  const auto& vals = m.values();
  double acc = 0.0;
  // explicit stack: (row, depth, product)
  struct Frame {
    std::uint64_t row;
    unsigned depth;
    double prod;
  };
  std::vector<Frame> stack{{start, 0, 1.0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.depth + 1 == steps) {
      acc += f.prod * m.at(f.row, start);
      continue;
    }
    for (std::uint64_t e = rp[f.row]; e < rp[f.row + 1]; ++e)
      stack.push_back({cols[e], f.depth + 1, f.prod * vals[e]});
  }
  return acc;
}

}  // namespace

double closed_walk_count(std::size_t d, std::uint32_t n, unsigned k) {
  return binomial_real(n, d) * std::pow(static_cast<double>(d) * (n - d), 2.0 * k - 1);
}

double trace_walk_sum(std::size_t d, std::uint32_t n, const DistributionSpec& spec, unsigned k,
                      const SparseSymmetricMatrix* realized, const WalkSumOptions& opt) {
  if (d < 1 || n < d + 1) throw DomainError("trace_walk_sum: need d >= 1 and n >= d+1");
  if (k < 1) throw DomainError("trace_walk_sum: k must be >= 1");
  const double walks = closed_walk_count(d, n, k);
  if (walks > static_cast<double>(opt.budget))
    throw CapExceeded("trace_walk_sum: " + std::to_string(static_cast<std::uint64_t>(walks)) +
                      " closed walks exceed the budget of " + std::to_string(opt.budget));
  const unsigned steps = 2 * k;
  const CellIndexer ix(d, n, opt.rule);
  const std::uint64_t faces = ix.num_faces();
  std::vector<double> partial(faces, 0.0);

  if (realized) {
    if (realized->dim() != faces) throw DomainError("trace_walk_sum: matrix size does not match C(n, d)");
    for_each_index(faces, opt.workers, [&](std::size_t s) { partial[s] = realized_from(*realized, s, steps); });
  } else {
    spec.validate();
    const double var = spec.variance();
    if (!(var > 0.0)) throw DomainError("trace_walk_sum: degenerate law (zero variance)");
    std::vector<double> mu(steps + 1, 0.0);
    for (unsigned m = 1; m <= steps; ++m) mu[m] = spec.central_moment(m);
    std::vector<std::vector<CellIndexer::NeighborRank>> nbr(faces);
    for (std::uint64_t r = 0; r < faces; ++r) ix.neighbor_ranks(ix.face(r), nbr[r]);
    for_each_index(faces, opt.workers, [&](std::size_t s) {
      ExpectationWalker w{ix, steps, mu, nbr, {}, {}, 0, s, 0.0};
      w.walk(s, 0, 1);
      partial[s] = w.acc;
    });
    const double norm = std::pow(n * var, static_cast<double>(k));
    for (double& v : partial) v /= norm;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

double trace_exhaustive(std::size_t d, std::uint32_t n, double p, unsigned k, SignRule rule) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("trace_exhaustive: p must lie in (0, 1)");
  if (d < 1 || n < d + 1) throw DomainError("trace_exhaustive: need d >= 1 and n >= d+1");
  if (k < 1) throw DomainError("trace_exhaustive: k must be >= 1");
  const std::uint64_t cells = binomial(n, d + 1);
  if (cells > 14) throw CapExceeded("trace_exhaustive: C(n, d+1) = " + std::to_string(cells) + " exceeds 14");

  double total = 0.0;
  const std::uint64_t masks = 1ull << cells;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    const ComplexSample x(d, n, p, 0, {mask});
    const DenseMatrix a = build_calA(x, rule).to_dense();
    const DenseMatrix a2 = a * a;
    DenseMatrix pw = a2;
    for (unsigned i = 1; i < k; ++i) pw = pw * a2;
    const int present = __builtin_popcountll(mask);
    const double weight = std::pow(p, present) * std::pow(1.0 - p, static_cast<double>(cells - present));
    total += weight * pw.trace();
  }
  return total;
}

}  // namespace simplex_spectra
