#include "simplex_spectra/words.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "simplex_spectra/binomial.hpp"
#include "simplex_spectra/error.hpp"

namespace simplex_spectra {

std::string Word::str(bool one_based) const {
  std::string s;
  for (const Cell& c : letters) s += c.str(one_based);
  return s;
}

Word Word::parse(std::string_view text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != '[') throw DomainError("word: expected '['");
    const std::size_t close = text.find(']', i);
    if (close == std::string_view::npos) throw DomainError("word: missing ']'");
    std::vector<Vertex> vs;
    std::string item(text.substr(i + 1, close - i - 1));
    std::istringstream is(item);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      const long v = std::stol(tok);
      if (v < 1) throw DomainError("word: labels are 1-based");
      vs.push_back(static_cast<Vertex>(v - 1));
    }
    w.letters.push_back(Cell::from_unsorted(vs));
    i = close + 1;
  }
  if (w.letters.empty()) throw DomainError("word: no letters");
  w.d = w.letters.front().size();
  validate_word(w);
  return w;
}

void validate_word(const Word& w) {
  if (w.d < 1) throw DomainError("word: d must be >= 1");
  if (w.letters.empty()) throw DomainError("word: empty");
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (w.letters[i].size() != w.d) throw DomainError("word: letter " + std::to_string(i) + " is not a (d-1)-cell");
    if (i > 0 && w.letters[i - 1].unite(w.letters[i]).size() != w.d + 1)
      throw DomainError("word: letters " + std::to_string(i - 1) + " and " + std::to_string(i) +
                        " do not span a d-cell");
  }
}

Supports supports(const Word& w) {
  validate_word(w);
  std::set<Vertex> vs;
  std::set<Cell> cs;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    vs.insert(w.letters[i].begin(), w.letters[i].end());
    if (i > 0) cs.insert(w.letters[i - 1].unite(w.letters[i]));
  }
  return {std::vector<Vertex>(vs.begin(), vs.end()), std::vector<Cell>(cs.begin(), cs.end())};
}

std::map<Cell, std::size_t> crossing_numbers(const Word& w) {
  validate_word(w);
  std::map<Cell, std::size_t> out;
  for (std::size_t i = 1; i < w.letters.size(); ++i) ++out[w.letters[i - 1].unite(w.letters[i])];
  return out;
}

Word relabel(const Word& w, const std::vector<Vertex>& map) {
  Word out{w.d, {}};
  out.letters.reserve(w.letters.size());
  std::vector<Vertex> tmp;
  for (const Cell& c : w.letters) {
    tmp.clear();
    for (Vertex v : c) {
      if (v >= map.size()) throw DomainError("relabel: vertex outside map");
      tmp.push_back(map[v]);
    }
    out.letters.push_back(Cell::from_unsorted(tmp));
  }
  return out;
}

Word canonicalize(const Word& w) {
  validate_word(w);
  if (w.d > 8) throw CapExceeded("canonicalize: d > 8");
  Vertex top = 0;
  for (const Cell& c : w.letters) top = std::max(top, c.back());
  const Vertex unset = static_cast<Vertex>(-1);

  std::vector<Vertex> first(w.letters.front().begin(), w.letters.front().end());
  std::sort(first.begin(), first.end());
  Word best;
  bool have = false;
  std::vector<Vertex> map(static_cast<std::size_t>(top) + 1);
  do {
    std::fill(map.begin(), map.end(), unset);
    Vertex next = 0;
    for (Vertex v : first) map[v] = next++;
    for (std::size_t i = 1; i < w.letters.size(); ++i)
      for (Vertex v : w.letters[i])
        if (map[v] == unset) map[v] = next++;
    Word cand = relabel(w, map);
    if (!have || cand > best) {
      best = std::move(cand);
      have = true;
    }
  } while (std::next_permutation(first.begin(), first.end()));
  return best;
}

namespace {

struct Enumerator {
  std::size_t d;
  std::size_t steps;  // 2k
  std::size_t min_mult;
  std::size_t max_cells;
  Cell first;
  std::vector<Cell> letters;
  std::vector<std::pair<Cell, std::size_t>> counts;
  std::set<Word> found;

  std::size_t deficit() const {
    std::size_t s = 0;
    for (const auto& [c, k] : counts)
      if (k < min_mult) s += min_mult - k;
    return s;
  }

  void run(Vertex next_label) {
    const std::size_t done = letters.size() - 1;
    if (done == steps) {
      if (letters.back() == first && deficit() == 0) found.insert(canonicalize(Word{d, letters}));
      return;
    }
    const Cell cur = letters.back();
    const std::size_t remaining_after = steps - done - 1;
    for (std::size_t a = 0; a < d; ++a) {
      for (Vertex v = 0; v <= next_label; ++v) {
        if (cur.contains(v)) continue;
        const Cell tau = cur.with_vertex(v);
        const Cell nxt = tau.without_index(tau.index_of(cur[a]));
        // can we still get back to the first letter?
        std::size_t away = 0;
        for (Vertex x : nxt)
          if (!first.contains(x)) ++away;
        if (away > remaining_after) continue;

        auto it = std::find_if(counts.begin(), counts.end(), [&](const auto& e) { return e.first == tau; });
        const bool fresh = it == counts.end();
        if (fresh) {
          if (counts.size() >= max_cells) continue;
          counts.emplace_back(tau, 1);
        } else {
          ++it->second;
        }
        if (deficit() <= remaining_after) {
          letters.push_back(nxt);
          run(v == next_label ? next_label + 1 : next_label);
          letters.pop_back();
        }
        if (fresh) counts.pop_back();
        else {
          auto jt = std::find_if(counts.begin(), counts.end(), [&](const auto& e) { return e.first == tau; });
          --jt->second;
        }
      }
    }
  }
};

}  // namespace

std::vector<Word> enumerate_closed_words(std::size_t d, unsigned k, std::size_t min_mult, std::size_t max_length) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (k < 1) throw DomainError("k must be >= 1");
  if (2ull * k + 1 > max_length)
    throw CapExceeded("enumerate_closed_words: length " + std::to_string(2 * k + 1) + " exceeds cap " +
                      std::to_string(max_length));
  Enumerator e;
  e.d = d;
  e.steps = 2 * k;
  e.min_mult = min_mult;
  e.max_cells = min_mult >= 1 ? e.steps / min_mult : e.steps;
  std::vector<Vertex> f(d);
  std::iota(f.begin(), f.end(), 0);
  e.first = Cell::from_sorted(f);
  e.letters.push_back(e.first);
  e.run(static_cast<Vertex>(d));
  return std::vector<Word>(e.found.begin(), e.found.end());
}

EmbeddingCount count_embeddings(const Word& w, std::uint32_t n, std::uint64_t budget) {
  const Supports sp = supports(w);
  const std::size_t s = sp.vertices.size();
  if (n < s) throw DomainError("count_embeddings: n < |supp_0|");
  EmbeddingCount out;
  out.upper = falling_factorial(n, s);
  out.lower = falling_factorial(n - w.d + 1, s - w.d + 1);
  if (out.upper > budget) throw CapExceeded("count_embeddings: n!/(n-s)! exceeds budget");

  Vertex top = sp.vertices.back();
  std::vector<Vertex> map(static_cast<std::size_t>(top) + 1, 0);
  std::vector<char> used(n, 0);
  std::set<std::vector<Vertex>> seen;
  std::vector<Vertex> key;
  // recursive assignment of images to supp_0 in ascending order
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == s) {
      key.clear();
      for (const Cell& c : relabel(w, map).letters) key.insert(key.end(), c.begin(), c.end());
      seen.insert(key);
      return;
    }
    for (Vertex x = 0; x < n; ++x) {
      if (used[x]) continue;
      used[x] = 1;
      map[sp.vertices[i]] = x;
      self(self, i + 1);
      used[x] = 0;
    }
  };
  rec(rec, 0);
  out.exact = seen.size();
  return out;
}

std::uint64_t automorphism_count(const Word& w) {
  const Supports sp = supports(w);
  const std::size_t s = sp.vertices.size();
  if (s > 10) throw CapExceeded("automorphism_count: support too large");
  std::vector<Vertex> perm = sp.vertices;
  std::vector<Vertex> map(static_cast<std::size_t>(sp.vertices.back()) + 1, 0);
  std::uint64_t count = 0;
  do {
    for (std::size_t i = 0; i < s; ++i) map[sp.vertices[i]] = perm[i];
    if (relabel(w, map) == w) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace simplex_spectra
