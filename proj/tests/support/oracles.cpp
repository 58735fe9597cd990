#include "oracles.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace oracle {

using hbtop::Integer;
using hbtop::Simplex;
using hbtop::SimplicialComplex;

std::size_t rational_rank(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t m = a.rows(), n = a.cols();
  Integer prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m; ++c) {
    std::size_t piv = rank;
    while (piv < m && a(piv, c) == 0) ++piv;
    if (piv == m) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(rank, j), a(piv, j));
    for (std::size_t i = rank + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        Integer v = a(rank, c) * a(i, j) - a(i, c) * a(rank, j);
        a(i, j) = v / prev;
      }
      a(i, c) = 0;
    }
    prev = a(rank, c);
    ++rank;
  }
  return rank;
}

std::size_t rank_mod_p(const IntMatrix& input, long p) {
  const std::size_t m = input.rows(), n = input.cols();
  std::vector<std::vector<long>> a(m, std::vector<long>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer r = input(i, j) % p;
      if (r < 0) r += p;
      a[i][j] = r.get_si();
    }
  auto inverse = [p](long x) {
    long r = 1, e = p - 2, b = x;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m; ++c) {
    std::size_t piv = rank;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[rank], a[piv]);
    long inv = inverse(a[rank][c]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      long f = a[i][c] * inv % p;
      for (std::size_t j = c; j < n; ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

std::vector<std::size_t> reduced_betti_mod_p(const SimplicialComplex& k, long p) {
  // Enumerate every face as a sorted vertex set, empty face included.
  std::vector<std::vector<Simplex>> by_size;
  std::set<Simplex> all;
  for (const auto& f : k.facets()) {
    const std::size_t n = f.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Simplex s;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) s.push_back(f[i]);
      all.insert(s);
    }
  }
  if (all.empty()) all.insert(Simplex{});
  std::size_t top = 0;
  for (const auto& s : all) top = std::max(top, s.size());
  by_size.resize(top + 1);
  for (const auto& s : all) by_size[s.size()].push_back(s);

  // rank of boundary from size s to size s-1
  std::vector<std::size_t> ranks(top + 2, 0);
  for (std::size_t s = 1; s <= top; ++s) {
    const auto& hi = by_size[s];
    const auto& lo = by_size[s - 1];
    IntMatrix m(lo.size(), hi.size());
    for (std::size_t c = 0; c < hi.size(); ++c)
      for (std::size_t skip = 0; skip < s; ++skip) {
        Simplex sub;
        for (std::size_t j = 0; j < s; ++j)
          if (j != skip) sub.push_back(hi[c][j]);
        auto r = std::lower_bound(lo.begin(), lo.end(), sub) - lo.begin();
        m(r, c) = skip % 2 ? -1 : 1;
      }
    ranks[s] = rank_mod_p(m, p);
  }
  if (k.empty() && !k.empty_allowed()) return {};
  std::vector<std::size_t> betti(top + 1);
  for (std::size_t s = 0; s <= top; ++s) betti[s] = by_size[s].size() - ranks[s] - ranks[s + 1];
  return betti;
}

SimplicialComplex projective_plane() {
  return SimplicialComplex::from_named_faces({{"1", "2", "3"}, {"1", "3", "4"}, {"1", "4", "5"}, {"1", "5", "6"},
                                              {"1", "2", "6"}, {"2", "3", "5"}, {"2", "4", "5"}, {"2", "4", "6"},
                                              {"3", "4", "6"}, {"3", "5", "6"}});
}

SimplicialComplex torus() {
  std::vector<std::vector<std::string>> faces;
  for (int i = 0; i < 7; ++i) {
    auto v = [&](int d) { return std::to_string((i + d) % 7); };
    faces.push_back({v(0), v(1), v(3)});
    faces.push_back({v(0), v(2), v(3)});
  }
  return SimplicialComplex::from_named_faces(faces);
}

SimplicialComplex hexagon() {
  std::vector<std::vector<std::string>> faces;
  for (int i = 0; i < 6; ++i) faces.push_back({std::to_string(i), std::to_string((i + 1) % 6)});
  return SimplicialComplex::from_named_faces(faces);
}

SimplicialComplex random_complex(std::mt19937_64& rng, int vertices, int facets, int max_dim) {
  std::vector<std::string> ids;
  for (int i = 0; i < vertices; ++i) ids.push_back("v" + std::to_string(i));
  std::uniform_int_distribution<int> dim(0, max_dim);
  std::vector<Simplex> faces;
  for (int f = 0; f < facets; ++f) {
    std::vector<hbtop::Vertex> all(vertices);
    for (int i = 0; i < vertices; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    int size = std::min(vertices, dim(rng) + 1);
    Simplex s(all.begin(), all.begin() + size);
    std::sort(s.begin(), s.end());
    faces.push_back(s);
  }
  return SimplicialComplex::from_faces(ids, faces);
}

hbtop::Poset random_poset(std::mt19937_64& rng, int n, double density) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<hbtop::Index, hbtop::Index>> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) gens.emplace_back(i, j);
  return hbtop::Poset::from_generators(ids, gens);
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi, double fill) {
  IntMatrix m(rows, cols);
  std::uniform_int_distribution<long> val(lo, hi);
  std::bernoulli_distribution coin(fill);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (coin(rng)) m(i, j) = val(rng);
  return m;
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> mult(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    long k = mult(rng);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
  }
  return u;
}

}  // namespace oracle
