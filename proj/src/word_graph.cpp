#include "simplex_spectra/word_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "simplex_spectra/binomial.hpp"
#include "simplex_spectra/error.hpp"

namespace simplex_spectra {

namespace {

constexpr double kRelTol = 1e-12;

bool leq(double a, double b) { return a <= b + kRelTol * std::max(std::abs(a), std::abs(b)); }

// edge indices of some cycle, in walking order; empty if acyclic
std::vector<std::size_t> find_cycle(const WordGraph& g) {
  const std::size_t nv = g.vertices().size();
  const auto& es = g.edges();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nv);  // (neighbour, edge)
  for (std::size_t e = 0; e < es.size(); ++e) {
    adj[es[e].a].push_back({es[e].b, e});
    adj[es[e].b].push_back({es[e].a, e});
  }
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(nv, none), parent_edge(nv, none), depth(nv, 0);
  std::vector<char> seen(nv, 0), tree_edge(es.size(), 0);
  for (std::size_t root = 0; root < nv; ++root) {
    if (seen[root]) continue;
    std::deque<std::size_t> q{root};
    seen[root] = 1;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (auto [v, e] : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          parent[v] = u;
          parent_edge[v] = e;
          depth[v] = depth[u] + 1;
          tree_edge[e] = 1;
          q.push_back(v);
        }
    }
  }
  for (std::size_t e = 0; e < es.size(); ++e) {
    if (tree_edge[e]) continue;
    std::size_t u = es[e].a, v = es[e].b;
    std::vector<std::size_t> up_u, up_v;
    while (depth[u] > depth[v]) { up_u.push_back(parent_edge[u]); u = parent[u]; }
    while (depth[v] > depth[u]) { up_v.push_back(parent_edge[v]); v = parent[v]; }
    while (u != v) {
      up_u.push_back(parent_edge[u]);
      u = parent[u];
      up_v.push_back(parent_edge[v]);
      v = parent[v];
    }
    // a -> (tree path) -> lca -> (tree path) -> b -> (edge e) -> a
    std::vector<std::size_t> cyc{e};
    for (auto it = up_v.begin(); it != up_v.end(); ++it) cyc.push_back(*it);
    for (auto it = up_u.rbegin(); it != up_u.rend(); ++it) cyc.push_back(*it);
    return cyc;
  }
  return {};
}

std::size_t cell_crossings(const WordGraph& g, const Cell& tau) {
  std::size_t c = 0;
  for (const auto& e : g.edges())
    if (e.cell == tau) ++c;
  return c;
}

ReductionStep merge_step(const WordGraph& g, ReductionCase which, std::size_t removed, std::size_t target) {
  const auto& es = g.edges();
  const auto& vs = g.vertices();
  ReductionStep s{which, vs[es[removed].a], vs[es[removed].b], {}, {}, es[removed].weight, {}, false};
  if (target != static_cast<std::size_t>(-1)) {
    s.target_a = vs[es[target].a];
    s.target_b = vs[es[target].b];
  }
  return s;
}

// move the weight of `removed` onto `target` and delete `removed`
void merge_into(WordGraph& g, std::size_t removed, std::size_t target) {
  g.edges()[target].weight += g.edges()[removed].weight;
  g.remove_edge(removed);
}

std::string law_name(const DistributionSpec& s) { return s.str(); }

bool is_subset(const std::vector<Cell>& a, const std::vector<Cell>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

WordGraph::WordGraph(std::size_t d, std::vector<Cell> vertices, std::vector<Edge> edges)
    : d_(d), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (const Cell& c : vertices_)
    if (c.size() != d_) throw DomainError("WordGraph: vertex is not a (d-1)-cell");
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (auto& e : edges_) {
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.b >= vertices_.size() || e.a == e.b) throw DomainError("WordGraph: bad edge endpoints");
    if (e.weight == 0) throw DomainError("WordGraph: edge weights must be positive");
    e.cell = vertices_[e.a].unite(vertices_[e.b]);
    if (e.cell.size() != d_ + 1) throw DomainError("WordGraph: edge letters do not span a d-cell");
    if (!pairs.insert({e.a, e.b}).second) throw DomainError("WordGraph: duplicate edge");
  }
}

WordGraph WordGraph::from_word(const Word& w) {
  validate_word(w);
  std::vector<Cell> vs(w.letters.begin(), w.letters.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  auto idx = [&](const Cell& c) {
    return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), c) - vs.begin());
  };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> count;
  for (std::size_t i = 1; i < w.letters.size(); ++i) {
    std::size_t a = idx(w.letters[i - 1]), b = idx(w.letters[i]);
    if (a > b) std::swap(a, b);
    ++count[{a, b}];
  }
  std::vector<Edge> es;
  for (const auto& [ab, c] : count) es.push_back({ab.first, ab.second, c, {}});
  return WordGraph(w.d, std::move(vs), std::move(es));
}

bool WordGraph::connected() const {
  if (vertices_.empty()) return false;
  std::vector<std::vector<std::size_t>> adj(vertices_.size());
  for (const auto& e : edges_) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<char> seen(vertices_.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == vertices_.size();
}

std::vector<Vertex> WordGraph::support0() const {
  std::set<Vertex> s;
  for (const Cell& c : vertices_) s.insert(c.begin(), c.end());
  return {s.begin(), s.end()};
}

std::vector<Cell> WordGraph::support_d() const {
  std::set<Cell> s;
  for (const auto& e : edges_) s.insert(e.cell);
  return {s.begin(), s.end()};
}

std::map<Cell, std::size_t> WordGraph::cell_weights() const {
  std::map<Cell, std::size_t> m;
  for (const auto& e : edges_) m[e.cell] += e.weight;
  return m;
}

std::size_t WordGraph::total_weight() const {
  std::size_t s = 0;
  for (const auto& e : edges_) s += e.weight;
  return s;
}

std::size_t WordGraph::degree(std::size_t v) const {
  std::size_t c = 0;
  for (const auto& e : edges_)
    if (e.a == v || e.b == v) ++c;
  return c;
}

void WordGraph::remove_edge(std::size_t e) { edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(e)); }

void WordGraph::remove_vertex(std::size_t v) {
  if (degree(v) != 0) throw std::logic_error("remove_vertex: vertex still has edges");
  vertices_.erase(vertices_.begin() + static_cast<std::ptrdiff_t>(v));
  for (auto& e : edges_) {
    if (e.a > v) --e.a;
    if (e.b > v) --e.b;
  }
}

std::string WordGraph::str() const {
  std::string s;
  for (const auto& e : edges_) {
    if (!s.empty()) s += ' ';
    s += vertices_[e.a].str() + "-" + vertices_[e.b].str() + ":" + std::to_string(e.weight);
  }
  return s;
}

double evaluate_G(const std::map<Cell, std::size_t>& cell_weights, std::size_t s0, std::uint32_t n,
                  const DistributionSpec& spec) {
  spec.validate();
  if (s0 > n) return 0.0;
  double v = 1.0;
  for (std::uint64_t i = 0; i < s0; ++i) v *= static_cast<double>(n - i);
  for (const auto& [tau, w] : cell_weights) {
    if (w < 1) throw DomainError("evaluate_G: weights must be >= 1");
    v *= spec.abs_central_moment(static_cast<unsigned>(w));
  }
  return v;
}

double evaluate_G(const WordGraph& g, std::uint32_t n, const DistributionSpec& spec) {
  return evaluate_G(g.cell_weights(), g.support0().size(), n, spec);
}

const char* case_name(ReductionCase c) {
  switch (c) {
    case ReductionCase::Case1_1: return "1.1";
    case ReductionCase::Case1_2_1: return "1.2.1";
    case ReductionCase::Case1_2_2: return "1.2.2";
    case ReductionCase::Case2_1: return "2.1";
    case ReductionCase::Case2_2: return "2.2";
    case ReductionCase::Case2_3: return "2.3";
  }
  return "?";
}

std::vector<DistributionSpec> default_check_laws() {
  return {DistributionSpec::bernoulli(0.3), DistributionSpec::rademacher(), DistributionSpec::uniform(0.0, 1.0)};
}

TreeCertificate tree_reduce(const WordGraph& input, std::uint32_t n, const std::vector<DistributionSpec>& laws) {
  if (!input.connected()) throw DomainError("tree_reduce: graph is disconnected");
  TreeCertificate cert;
  cert.input = input;
  WordGraph g = input;
  const std::size_t none = static_cast<std::size_t>(-1);

  while (!g.is_tree()) {
    const std::vector<std::size_t> cyc = find_cycle(g);
    if (cyc.empty()) throw std::logic_error("tree_reduce: connected non-tree without a cycle");
    const auto& es = g.edges();
    const std::size_t L = cyc.size();

    bool all_same = true;
    for (std::size_t i = 1; i < L; ++i) all_same = all_same && es[cyc[i]].cell == es[cyc[0]].cell;
    if (all_same) {
      cert.steps.push_back(merge_step(g, ReductionCase::Case1_1, cyc[0], cyc[L - 1]));
      merge_into(g, cyc[0], cyc[L - 1]);
      continue;
    }

    std::size_t r1 = none, r2 = none;
    for (std::size_t i = 0; i < L && r1 == none; ++i)
      for (std::size_t j = i + 1; j < L; ++j)
        if (es[cyc[i]].cell == es[cyc[j]].cell) {
          r1 = cyc[i];
          r2 = cyc[j];
          break;
        }
    if (r1 != none) {
      cert.steps.push_back(merge_step(g, ReductionCase::Case1_2_1, r1, r2));
      merge_into(g, r1, r2);
      continue;
    }

    // all cycle cells distinct: drop an edge whose cell nothing else crosses,
    // its weight goes to the neighbouring cycle edge (a different cell)
    bool done = false;
    for (std::size_t b = 0; b < L && !done; ++b) {
      const Cell tau = es[cyc[b]].cell;
      if (cell_crossings(g, tau) != 1) continue;
      const std::size_t partner = cyc[(b + L - 1) % L];
      ReductionStep st = merge_step(g, ReductionCase::Case1_2_2, cyc[b], partner);
      st.cell = tau;
      cert.steps.push_back(st);
      merge_into(g, cyc[b], partner);
      done = true;
    }
    if (done) continue;

    // every cycle cell is also crossed off the cycle: merge into that edge
    // (same cell, so no cell weight changes)
    for (std::size_t b = 0; b < L && !done; ++b) {
      const Cell tau = es[cyc[b]].cell;
      for (std::size_t e = 0; e < es.size(); ++e) {
        if (e == cyc[b] || es[e].cell != tau) continue;
        ReductionStep st = merge_step(g, ReductionCase::Case1_2_1, cyc[b], e);
        st.partner_off_cycle = true;
        cert.steps.push_back(st);
        merge_into(g, cyc[b], e);
        done = true;
        break;
      }
    }
    if (!done) throw std::logic_error("tree_reduce: no applicable case");
  }

  cert.output = g;
  cert.is_tree = g.is_tree();
  const auto sdg = input.support_d(), sdt = g.support_d();
  cert.sd_subset = is_subset(sdt, sdg);
  cert.s0_equal = input.support0() == g.support0();
  const auto ng = input.cell_weights(), nt = g.cell_weights();
  cert.weights_dominate = true;
  for (const auto& [tau, w] : nt) {
    auto it = ng.find(tau);
    if (it == ng.end() || w < it->second) cert.weights_dominate = false;
  }
  cert.weight_conserved = input.total_weight() == g.total_weight();
  cert.g_monotone = true;
  for (const auto& law : laws) {
    LawCheck c{law_name(law), evaluate_G(input, n, law), evaluate_G(g, n, law), false};
    c.ok = leq(c.lhs, c.rhs);
    cert.g_monotone = cert.g_monotone && c.ok;
    cert.g_checks.push_back(c);
  }
  return cert;
}

PruneCertificate leaf_prune(const WordGraph& tree, unsigned k, std::uint32_t n,
                            const std::vector<DistributionSpec>& laws) {
  if (!tree.is_tree()) throw DomainError("leaf_prune: input is not a tree");
  if (tree.total_weight() != 2ull * k) throw DomainError("leaf_prune: weight-sum mismatch (total != 2k)");
  const std::size_t d = tree.d();
  PruneCertificate cert;
  cert.input = tree;
  WordGraph g = tree;

  while (!g.edges().empty()) {
    const auto& vs = g.vertices();
    const auto& es = g.edges();
    // colex-least leaf
    std::size_t leaf = static_cast<std::size_t>(-1);
    for (std::size_t v = 0; v < vs.size(); ++v)
      if (g.degree(v) == 1 && (leaf == static_cast<std::size_t>(-1) || colex_rank(vs[v]) < colex_rank(vs[leaf])))
        leaf = v;
    std::size_t le = 0;
    while (es[le].a != leaf && es[le].b != leaf) ++le;
    const std::size_t other = es[le].a == leaf ? es[le].b : es[le].a;
    const Cell tau = es[le].cell;
    const Vertex i_l = tau.minus(vs[other]).front();

    auto edge_key = [&](std::size_t e) { return std::make_pair(colex_rank(vs[es[e].a]), colex_rank(vs[es[e].b])); };

    std::size_t same = static_cast<std::size_t>(-1);
    for (std::size_t e = 0; e < es.size(); ++e)
      if (e != le && es[e].cell == tau && (same == static_cast<std::size_t>(-1) || edge_key(e) < edge_key(same)))
        same = e;

    bool i_elsewhere = false;
    for (std::size_t e = 0; e < es.size(); ++e)
      if (e != le && es[e].cell != tau && es[e].cell.contains(i_l)) i_elsewhere = true;

    if (same != static_cast<std::size_t>(-1)) {
      cert.steps.push_back(merge_step(g, ReductionCase::Case2_2, le, same));
      merge_into(g, le, same);
    } else if (i_elsewhere) {
      // colex-least neighbour sigma of sigma'_l with sigma ∪ sigma'_l != tau_l
      std::size_t target = static_cast<std::size_t>(-1);
      for (std::size_t e = 0; e < es.size(); ++e) {
        if (e == le || (es[e].a != other && es[e].b != other) || es[e].cell == tau) continue;
        const std::size_t nb = es[e].a == other ? es[e].b : es[e].a;
        if (target == static_cast<std::size_t>(-1)) {
          target = e;
          continue;
        }
        const std::size_t cur = es[target].a == other ? es[target].b : es[target].a;
        if (colex_rank(vs[nb]) < colex_rank(vs[cur])) target = e;
      }
      if (target == static_cast<std::size_t>(-1)) throw std::logic_error("leaf_prune: case 2.3 without a partner edge");
      cert.steps.push_back(merge_step(g, ReductionCase::Case2_3, le, target));
      merge_into(g, le, target);
    } else {
      ReductionStep st = merge_step(g, ReductionCase::Case2_1, le, static_cast<std::size_t>(-1));
      st.cell = tau;
      cert.steps.push_back(st);
      cert.S.push_back(tau);
      cert.M.push_back(es[le].weight);
      g.remove_edge(le);
    }
    g.remove_vertex(leaf);
  }

  const auto n_t = tree.cell_weights();
  cert.size_ok = cert.S.size() + d == tree.support0().size();
  cert.dominate_ok = true;
  std::size_t sum_m = 0;
  for (std::size_t i = 0; i < cert.S.size(); ++i) {
    auto it = n_t.find(cert.S[i]);
    if (it == n_t.end() || cert.M[i] < it->second) cert.dominate_ok = false;
    sum_m += cert.M[i];
  }
  cert.sum_ok = sum_m == tree.total_weight();

  // d! prod_tau [ sum_sigma ( sum_{i not in sigma} b^(M) )^p ]^(1/p),  p = 2k / M
  cert.inequality_ok = cert.sum_ok;
  const CellIndexer ix(d, n);
  for (const auto& law : laws) {
    double rhs = static_cast<double>(factorial(d));
    for (std::size_t t = 0; t < cert.S.size(); ++t) {
      const double p = 2.0 * k / static_cast<double>(cert.M[t]);
      const double b = law.abs_central_moment(static_cast<unsigned>(cert.M[t]));
      double outer = 0.0;
      for (std::uint64_t r = 0; r < ix.num_faces(); ++r) {
        const Cell sigma = ix.face(r);
        double inner = 0.0;
        for (Vertex i = 0; i < n; ++i)
          if (!sigma.contains(i)) inner += b;
        outer += std::pow(inner, p);
      }
      rhs *= std::pow(outer, 1.0 / p);
    }
    LawCheck c{law_name(law), evaluate_G(tree, n, law), rhs, false};
    c.ok = leq(c.lhs, c.rhs);
    cert.inequality_ok = cert.inequality_ok && c.ok;
    cert.inequality.push_back(c);
  }
  return cert;
}

}  // namespace simplex_spectra
