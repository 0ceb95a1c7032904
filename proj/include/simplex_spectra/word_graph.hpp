#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "simplex_spectra/distribution.hpp"
#include "simplex_spectra/words.hpp"

namespace simplex_spectra {

// Labelled graph on letters. Edge weights are positive; the cell of an edge is
// the union of its two letters.
class WordGraph {
 public:
  struct Edge {
    std::size_t a = 0, b = 0;  // vertex indices, a < b
    std::size_t weight = 0;
    Cell cell;
  };

  WordGraph() = default;
  WordGraph(std::size_t d, std::vector<Cell> vertices, std::vector<Edge> edges);

  // G_w with N_w(e) = number of steps along e in either direction
  static WordGraph from_word(const Word& w);

  std::size_t d() const { return d_; }
  const std::vector<Cell>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<Edge>& edges() { return edges_; }

  bool connected() const;
  bool is_tree() const { return connected() && edges_.size() + 1 == vertices_.size(); }
  std::vector<Vertex> support0() const;
  std::vector<Cell> support_d() const;
  std::map<Cell, std::size_t> cell_weights() const;
  std::size_t total_weight() const;
  std::size_t degree(std::size_t v) const;

  // drops edge e; does not touch vertices
  void remove_edge(std::size_t e);
  // drops vertex v (must be isolated) and renumbers
  void remove_vertex(std::size_t v);

  std::string str() const;

 private:
  std::size_t d_ = 0;
  std::vector<Cell> vertices_;
  std::vector<Edge> edges_;
};

// |S_0|! C(n, |S_0|) prod_tau E|Z - EZ|^{N(tau)}
double evaluate_G(const std::map<Cell, std::size_t>& cell_weights, std::size_t s0, std::uint32_t n,
                  const DistributionSpec& spec);
double evaluate_G(const WordGraph& g, std::uint32_t n, const DistributionSpec& spec);

enum class ReductionCase { Case1_1, Case1_2_1, Case1_2_2, Case2_1, Case2_2, Case2_3 };
const char* case_name(ReductionCase c);

struct ReductionStep {
  ReductionCase which;
  Cell removed_a, removed_b;  // letters of the dropped edge
  Cell target_a, target_b;    // letters of the edge that received its weight (empty for 2.1)
  std::size_t moved_weight = 0;
  Cell cell;                  // d-cell added to S (2.1) or vanished cell (1.2.2)
  bool partner_off_cycle = false;
};

struct LawCheck {
  std::string law;
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

struct TreeCertificate {
  WordGraph input;
  WordGraph output;
  std::vector<ReductionStep> steps;
  bool is_tree = false;
  bool sd_subset = false;
  bool s0_equal = false;
  bool weights_dominate = false;
  bool weight_conserved = false;
  bool g_monotone = false;
  std::vector<LawCheck> g_checks;

  bool ok() const { return is_tree && sd_subset && s0_equal && weights_dominate && weight_conserved && g_monotone; }
};

struct PruneCertificate {
  WordGraph input;
  std::vector<Cell> S;
  std::vector<std::size_t> M;
  std::vector<ReductionStep> steps;
  bool size_ok = false;       // |S| = |S_0| - d
  bool dominate_ok = false;   // M >= N on S
  bool sum_ok = false;        // sum M = sum N
  bool inequality_ok = false; // numeric check with p_tau = 2k / M(tau)
  std::vector<LawCheck> inequality;

  bool ok() const { return size_ok && dominate_ok && sum_ok && inequality_ok; }
};

// Break cycles until a tree remains; properties checked against `laws` at size n.
TreeCertificate tree_reduce(const WordGraph& g, std::uint32_t n, const std::vector<DistributionSpec>& laws);

// Strip leaves of a tree, collecting S and M. Total weight must be 2k.
PruneCertificate leaf_prune(const WordGraph& tree, unsigned k, std::uint32_t n,
                            const std::vector<DistributionSpec>& laws);

// Bernoulli(0.3), Rademacher, Uniform(0, 1)
std::vector<DistributionSpec> default_check_laws();

}  // namespace simplex_spectra
