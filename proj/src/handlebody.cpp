#include "hbtop/handlebody.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hbtop {

std::string HandlebodySignature::to_string() const {
  return "(" + std::to_string(g) + "," + std::to_string(b) + "," + std::to_string(p) + ")";
}

namespace {

void require_valid(const HandlebodySignature& sig) {
  if (!sig.valid()) throw std::invalid_argument("invalid handlebody signature " + sig.to_string());
}

void require_positive_genus(const HandlebodySignature& sig) {
  require_valid(sig);
  if (sig.g == 0) throw std::invalid_argument("genus must be positive: " + sig.to_string());
}

IdentityCheck compare(std::string name, long long lhs, long long rhs, std::string detail = {}) {
  IdentityCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.status = lhs == rhs ? IdentityCheck::Status::Holds : IdentityCheck::Status::Fails;
  c.detail = std::move(detail);
  return c;
}

IdentityCheck skipped(std::string name, std::string detail) {
  IdentityCheck c;
  c.name = std::move(name);
  c.detail = std::move(detail);
  return c;
}

}  // namespace

int vcd(const HandlebodySignature& sig) {
  require_valid(sig);
  if (sig.g == 0) return 2 * sig.b + sig.p - 3;
  if (sig.b == 0 && sig.p == 0) return 4 * sig.g - 5;
  return 4 * sig.g + 2 * sig.b + sig.p - 4;
}

int nu(const HandlebodySignature& sig) {
  require_positive_genus(sig);
  if (sig.b == 0 && sig.p == 0) return 2 * sig.g - 3;
  return 2 * sig.g - 4 + sig.b + sig.p;
}

int ambient_dimension(const HandlebodySignature& sig) {
  require_valid(sig);
  return 6 * sig.g - 6 + 3 * sig.b + 2 * sig.p;
}

std::string to_string(IdentityCheck::Status s) {
  switch (s) {
    case IdentityCheck::Status::Holds: return "holds";
    case IdentityCheck::Status::Fails: return "fails";
    case IdentityCheck::Status::Skipped: return "skipped";
  }
  return "?";
}

bool IdentityReport::ok() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const IdentityCheck& c) { return c.status == IdentityCheck::Status::Fails; });
}

IdentityReport duality_bookkeeping(const HandlebodySignature& sig) {
  require_positive_genus(sig);
  IdentityReport r;
  r.subject = sig.to_string();
  int dim = ambient_dimension(sig);
  int d = vcd(sig);
  r.checks.push_back(compare("dim - vcd - 2 = nu", dim - d - 2, nu(sig),
                             std::to_string(dim) + " - " + std::to_string(d) + " - 2"));
  return r;
}

IdentityReport birman_identities(const HandlebodySignature& sig) {
  require_valid(sig);
  IdentityReport r;
  r.subject = sig.to_string();
  if (sig.b >= 1) {
    HandlebodySignature other{sig.g, sig.b - 1, sig.p + 1};
    std::string name = "d" + sig.to_string() + " = d" + other.to_string() + " + 1";
    if (other.valid())
      r.checks.push_back(compare(name, vcd(sig), vcd(other) + 1, "disc replaced by a point"));
    else
      r.checks.push_back(skipped(name, "comparison signature invalid"));
  }
  if (sig.p >= 1) {
    HandlebodySignature other{sig.g, sig.b, sig.p - 1};
    bool closed = sig.b == 0 && sig.p == 1 && sig.g >= 1;
    int cd = closed ? 2 : 1;
    std::string name = "d" + sig.to_string() + " = d" + other.to_string() + " + " + std::to_string(cd);
    if (other.valid())
      r.checks.push_back(compare(name, vcd(sig), vcd(other) + cd,
                                 closed ? "closed surface group" : "free surface group"));
    else
      r.checks.push_back(skipped(name, "comparison signature invalid"));
  }
  return r;
}

WedgeOfSpheres WedgeOfSpheres::finite(int q, std::size_t n) {
  if (q < -1) throw std::invalid_argument("sphere dimension below -1");
  if (n == 0) return contractible(q);
  if (q == -1 && n != 1) throw std::invalid_argument("the empty complex is a single (-1)-sphere");
  return {q, Count::Finite, n};
}

namespace {

bool is_empty_complex(const WedgeOfSpheres& w) {
  return w.q == -1 && w.count != WedgeOfSpheres::Count::Zero;
}

}  // namespace

WedgeOfSpheres WedgeOfSpheres::suspend(int times) const {
  WedgeOfSpheres out = *this;
  if (times <= 0) return out;
  if (is_empty_complex(out)) out = finite(-1, 1);
  out.q += times;
  return out;
}

GradedHomology WedgeOfSpheres::homology() const {
  switch (count) {
    case Count::Zero: return GradedHomology::point();
    case Count::Finite: return GradedHomology::free_in(q, n);
    case Count::Some:
      if (q == -1) return GradedHomology::free_in(-1, 1);
      throw std::logic_error("homology of a wedge with unspecified count");
  }
  return {};
}

std::string WedgeOfSpheres::to_string() const {
  std::string sphere = "S^" + std::to_string(q);
  switch (count) {
    case Count::Zero: return "contractible (dim " + std::to_string(q) + ")";
    case Count::Finite: return "wedge of " + std::to_string(n) + " " + sphere;
    case Count::Some: return q == -1 ? "empty" : "wedge of " + sphere;
  }
  return "?";
}

WedgeOfSpheres join(const WedgeOfSpheres& x, const WedgeOfSpheres& y) {
  using C = WedgeOfSpheres::Count;
  if (x.count != C::Zero && is_empty_complex(x)) return y;
  if (y.count != C::Zero && is_empty_complex(y)) return x;
  int q = x.q + y.q + 1;
  if (x.count == C::Zero || y.count == C::Zero) return WedgeOfSpheres::contractible(q);
  if (x.count == C::Finite && y.count == C::Finite) return WedgeOfSpheres::finite(q, x.n * y.n);
  return WedgeOfSpheres::some(q);
}

bool CutReport::valid() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const IdentityCheck& c) { return c.status == IdentityCheck::Status::Holds; });
}

std::vector<std::string> CutReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (c.status != IdentityCheck::Status::Holds) out.push_back(c.name);
  return out;
}

namespace {

int count_components(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int components = n;
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components;
}

}  // namespace

CutReport validate_cut_data(const CutData& c, int g) {
  CutReport r;
  const int s = static_cast<int>(c.s());
  const int t = static_cast<int>(c.t());
  const int k = static_cast<int>(c.k());
  const int n = s + t;

  int bad_positive = 0;
  for (const auto& piece : c.positive)
    if (piece.genus < 1 || piece.spots < 1) ++bad_positive;
  r.checks.push_back(compare("positive pieces have genus >= 1 and spots >= 1", bad_positive, 0));
  int bad_zero = 0;
  for (int cj : c.zero)
    if (cj < 3) ++bad_zero;
  r.checks.push_back(compare("zero pieces have spots >= 3", bad_zero, 0));
  r.checks.push_back(compare("at least one positive piece", s >= 1, 1));
  r.checks.push_back(compare("at least one disc", k >= 1, 1));

  long long spots = 0;
  for (const auto& piece : c.positive) spots += piece.spots;
  for (int cj : c.zero) spots += cj;
  r.checks.push_back(compare("spot accounting", spots, 2LL * k));

  int bad_endpoints = 0;
  for (auto [a, b] : c.edges)
    if (a < 0 || b < 0 || a >= n || b >= n) ++bad_endpoints;
  r.checks.push_back(compare("edge endpoints are pieces", bad_endpoints, 0));

  if (bad_endpoints == 0 && n > 0) {
    std::vector<int> degree(n, 0);
    for (auto [a, b] : c.edges) {
      ++degree[a];
      ++degree[b];
    }
    long long mismatch = 0;
    for (int i = 0; i < n; ++i) {
      int want = i < s ? c.positive[i].spots : c.zero[i - s];
      mismatch += std::abs(degree[i] - want);
    }
    r.checks.push_back(compare("edge degrees match spots", mismatch, 0));
    r.checks.push_back(compare("dual graph connected", count_components(n, c.edges), 1));
  } else {
    r.checks.push_back(skipped("edge degrees match spots", "no valid dual graph"));
    r.checks.push_back(skipped("dual graph connected", "no valid dual graph"));
  }

  long long genus_sum = 0;
  long long euler = 0;
  for (const auto& piece : c.positive) {
    genus_sum += piece.genus;
    euler += 2LL * piece.genus - 2 + piece.spots;
  }
  for (int cj : c.zero) euler += cj - 2;
  long long beta1 = static_cast<long long>(k) - n + 1;
  r.checks.push_back(compare("genus accounting", g, genus_sum + beta1,
                             "first Betti number " + std::to_string(beta1)));
  r.checks.push_back(compare("euler characteristic relation", 2LL * g - 2, euler));
  return r;
}

WedgeOfSpheres ns_type(const HandlebodySignature& sig) { return WedgeOfSpheres::some(nu(sig)); }

WedgeOfSpheres link_type(const CutData& c, int g) {
  auto report = validate_cut_data(c, g);
  if (!report.valid()) {
    std::string msg = "invalid cut data:";
    for (const auto& f : report.failures()) msg += " [" + f + "]";
    throw std::invalid_argument(msg);
  }
  WedgeOfSpheres x = WedgeOfSpheres::empty();
  for (const auto& piece : c.positive) x = join(x, ns_type({piece.genus, piece.spots, 0}));
  x = x.suspend(static_cast<int>(c.s()) - 1);
  for (int cj : c.zero) x = join(x, WedgeOfSpheres::some(cj - 4));
  int expected = 2 * g - 4 - static_cast<int>(c.t());
  if (x.q != expected)
    throw std::logic_error("link dimension " + std::to_string(x.q) + " differs from " + std::to_string(expected));
  return x;
}

namespace {

/// Multigraph on n vertices as an upper-triangular multiplicity table.
struct Multigraph {
  int n = 0;
  std::vector<int> mult;  // index via slot(i, j), i <= j

  int slot(int i, int j) const {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
  }
  int at(int i, int j) const { return mult[slot(i, j)]; }
  int degree(int v) const {
    int d = 0;
    for (int u = 0; u < n; ++u) d += at(v, u) * (u == v ? 2 : 1);
    return d;
  }
};

/// Canonical encoding of a vertex-labelled multigraph. Label 0 marks a
/// zero piece; positive labels are genera. Vertices are grouped into cells
/// by (label, degree, loops) with positive labels first, then the
/// lexicographically smallest table over permutations within cells wins.
/// Returns the encoding and the vertex order realizing it.
std::pair<std::vector<int>, std::vector<int>> canonical_form(const Multigraph& m, const std::vector<int>& label) {
  const int n = m.n;
  std::vector<std::array<int, 4>> key(n);
  for (int v = 0; v < n; ++v) key[v] = {label[v] == 0 ? 1 : 0, -label[v], -m.degree(v), -m.at(v, v)};
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && key[order[j]] == key[order[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }

  std::vector<int> best_code, best_order;
  std::vector<int> code(m.mult.size());
  auto evaluate = [&] {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) code[idx++] = m.at(order[i], order[j]);
    if (best_code.empty() || code < best_code) {
      best_code = code;
      best_order = order;
    }
  };
  // Odometer over the permutations of each cell.
  for (auto [lo, hi] : cells) std::sort(order.begin() + lo, order.begin() + hi);
  while (true) {
    evaluate();
    std::size_t c = 0;
    for (; c < cells.size(); ++c) {
      auto [lo, hi] = cells[c];
      if (std::next_permutation(order.begin() + lo, order.begin() + hi)) break;
    }
    if (c == cells.size()) break;
  }

  std::vector<int> encoding;
  encoding.push_back(n);
  for (int v : best_order) encoding.push_back(label[v]);
  encoding.insert(encoding.end(), best_code.begin(), best_code.end());
  return {encoding, best_order};
}

CutData from_canonical(const Multigraph& m, const std::vector<int>& label, const std::vector<int>& order) {
  CutData c;
  std::vector<int> position(m.n);
  for (int i = 0; i < m.n; ++i) position[order[i]] = i;
  for (int v : order) {
    if (label[v] > 0)
      c.positive.push_back({label[v], m.degree(v)});
    else
      c.zero.push_back(m.degree(v));
  }
  for (int i = 0; i < m.n; ++i)
    for (int j = i; j < m.n; ++j)
      for (int e = 0; e < m.at(order[i], order[j]); ++e) c.edges.emplace_back(i, j);
  return c;
}

bool connected(const Multigraph& m) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m.n; ++i)
    for (int j = i; j < m.n; ++j)
      if (m.at(i, j) > 0) edges.emplace_back(i, j);
  return count_components(m.n, edges) == 1;
}

/// Connected multigraphs with k edges on n vertices whose degree sequence
/// is non-increasing, one per isomorphism class.
std::vector<Multigraph> connected_multigraphs(int n, int k) {
  Multigraph m;
  m.n = n;
  m.mult.assign(n * (n + 1) / 2, 0);
  std::vector<Multigraph> out;
  std::set<std::vector<int>> seen;
  const std::vector<int> blank(n, 0);
  const int slots = static_cast<int>(m.mult.size());
  auto visit = [&] {
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v) {
      degree[v] = m.degree(v);
      if (degree[v] == 0) return;
      if (v > 0 && degree[v] > degree[v - 1]) return;
    }
    if (!connected(m)) return;
    if (seen.insert(canonical_form(m, blank).first).second) out.push_back(m);
  };
  auto place = [&](auto&& self, int from, int remaining) -> void {
    if (remaining == 0) {
      visit();
      return;
    }
    for (int s = from; s < slots; ++s) {
      ++m.mult[s];
      self(self, s, remaining - 1);
      --m.mult[s];
    }
  };
  place(place, 0, k);
  return out;
}

/// Ordered ways of writing total as a sum of parts positive integers.
void compositions(int total, int parts, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(current);
    return;
  }
  for (int first = 1; first <= total - (parts - 1); ++first) {
    current.push_back(first);
    compositions(total - first, parts - 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<CutData> enumerate_cut_data(int g, int k_max) {
  if (g < 1 || g > kMaxCutGenus || k_max < 1 || k_max > kMaxCutDiscs)
    throw std::invalid_argument("cut data enumeration needs 1 <= g <= " + std::to_string(kMaxCutGenus) +
                                " and 1 <= k_max <= " + std::to_string(kMaxCutDiscs));
  // Keyed by (k, s, t, canonical encoding) for a deterministic order.
  std::map<std::vector<int>, CutData> found;
  for (int k = 1; k <= k_max; ++k) {
    for (int n = 1; n <= k + 1; ++n) {
      int beta1 = k - n + 1;
      int genus_left = g - beta1;
      if (genus_left < 1) continue;
      for (const auto& m : connected_multigraphs(n, k)) {
        std::vector<int> degree(n);
        for (int v = 0; v < n; ++v) degree[v] = m.degree(v);
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
          std::vector<int> positives;
          bool ok = true;
          for (int v = 0; v < n; ++v) {
            if (mask >> v & 1u)
              positives.push_back(v);
            else if (degree[v] < 3)
              ok = false;
          }
          if (!ok || static_cast<int>(positives.size()) > genus_left) continue;
          std::vector<std::vector<int>> genera;
          std::vector<int> scratch;
          compositions(genus_left, static_cast<int>(positives.size()), scratch, genera);
          for (const auto& split : genera) {
            std::vector<int> label(n, 0);
            for (std::size_t i = 0; i < positives.size(); ++i) label[positives[i]] = split[i];
            auto [encoding, order] = canonical_form(m, label);
            int s = static_cast<int>(positives.size());
            std::vector<int> key{k, s, n - s};
            key.insert(key.end(), encoding.begin(), encoding.end());
            if (!found.count(key)) found.emplace(std::move(key), from_canonical(m, label, order));
          }
        }
      }
    }
  }
  std::vector<CutData> out;
  out.reserve(found.size());
  for (auto& [key, c] : found) out.push_back(std::move(c));
  return out;
}

nlohmann::json to_json(const HandlebodySignature& sig) { return {{"g", sig.g}, {"b", sig.b}, {"p", sig.p}}; }

namespace {

nlohmann::json checks_json(const std::vector<IdentityCheck>& checks) {
  auto arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j{{"name", c.name}, {"status", to_string(c.status)}};
    if (c.status != IdentityCheck::Status::Skipped) {
      j["lhs"] = c.lhs;
      j["rhs"] = c.rhs;
    }
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

nlohmann::json to_json(const IdentityReport& r) {
  return {{"subject", r.subject}, {"ok", r.ok()}, {"checks", checks_json(r.checks)}};
}

nlohmann::json to_json(const CutReport& r) { return {{"valid", r.valid()}, {"checks", checks_json(r.checks)}}; }

nlohmann::json to_json(const WedgeOfSpheres& w) {
  nlohmann::json j{{"q", w.q}};
  switch (w.count) {
    case WedgeOfSpheres::Count::Zero: j["count"] = "zero"; break;
    case WedgeOfSpheres::Count::Finite:
      j["count"] = "finite";
      j["n"] = w.n;
      break;
    case WedgeOfSpheres::Count::Some: j["count"] = "some"; break;
  }
  return j;
}

nlohmann::json to_json(const CutData& c) {
  auto positive = nlohmann::json::array();
  for (const auto& piece : c.positive) positive.push_back({{"genus", piece.genus}, {"spots", piece.spots}});
  auto edges = nlohmann::json::array();
  for (auto [a, b] : c.edges) edges.push_back({a, b});
  return {{"positive", positive}, {"zero", c.zero}, {"k", c.k()}, {"edges", edges}};
}

}  // namespace hbtop
