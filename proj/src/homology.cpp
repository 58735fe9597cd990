#include "hbtop/homology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hbtop {

namespace {

const FgAbelianGroup kZero{};

Integer parse_integer(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw std::invalid_argument("torsion entry must be an integer");
}

nlohmann::json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

}  // namespace

FgAbelianGroup::FgAbelianGroup(std::size_t rank, std::vector<Integer> torsion)
    : rank_(rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw std::invalid_argument("torsion coefficients must be >= 2");
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
      throw std::invalid_argument("torsion coefficients must form a divisor chain");
  }
}

FgAbelianGroup FgAbelianGroup::from_cyclic(const std::vector<Integer>& orders) {
  std::size_t rank = 0;
  // prime -> exponents of the prime-power cyclic summands
  std::map<Integer, std::vector<unsigned>> powers;
  for (Integer n : orders) {
    n = abs(n);
    if (n == 0) {
      ++rank;
      continue;
    }
    for (Integer p = 2; p * p <= n; ++p) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      if (e) powers[p].push_back(e);
    }
    if (n > 1) powers[n].push_back(1);
  }
  std::size_t longest = 0;
  for (auto& [p, es] : powers) {
    std::sort(es.begin(), es.end(), std::greater<>());
    longest = std::max(longest, es.size());
  }
  // The i-th largest invariant factor collects the i-th largest power of
  // every prime.
  std::vector<Integer> factors(longest, Integer(1));
  for (const auto& [p, es] : powers)
    for (std::size_t i = 0; i < es.size(); ++i) {
      Integer q;
      mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), es[i]);
      factors[i] *= q;
    }
  std::reverse(factors.begin(), factors.end());
  return FgAbelianGroup(rank, std::move(factors));
}

std::string FgAbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  if (rank_ > 0) {
    out << "Z";
    if (rank_ > 1) out << "^" << rank_;
    first = false;
  }
  for (const auto& d : torsion_) {
    out << (first ? "" : " + ") << "Z/" << d.get_str();
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

const FgAbelianGroup& GradedHomology::at(int degree) const {
  auto it = groups_.find(degree);
  return it == groups_.end() ? kZero : it->second;
}

void GradedHomology::set(int degree, FgAbelianGroup g) {
  if (degree < -1) throw std::invalid_argument("homology degree below -1");
  if (g.is_zero())
    groups_.erase(degree);
  else
    groups_[degree] = std::move(g);
}

GradedHomology GradedHomology::shifted(int by) const {
  GradedHomology out;
  for (const auto& [d, g] : groups_) out.set(d + by, g);
  return out;
}

long long GradedHomology::euler_characteristic() const {
  long long chi = 0;
  for (const auto& [d, g] : groups_) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(g.rank());
  return chi;
}

std::optional<int> GradedHomology::lowest_nonzero_degree() const {
  if (groups_.empty()) return std::nullopt;
  return groups_.begin()->first;
}

std::string GradedHomology::to_string() const {
  if (groups_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [d, g] : groups_) {
    out << (first ? "" : ", ") << "H" << d << "=" << g.to_string();
    first = false;
  }
  return out.str();
}

GradedHomology GradedHomology::free_in(int degree, std::size_t count) {
  GradedHomology h;
  h.set(degree, FgAbelianGroup(count));
  return h;
}

// ---------------------------------------------------------------------------

std::vector<SparseIntMatrix> boundary_matrices(const SimplicialComplex& k) {
  std::vector<SparseIntMatrix> out;
  if (k.empty()) return out;
  FaceLattice lattice = k.faces();
  const int top = static_cast<int>(lattice.by_dim.size()) - 1;

  SparseIntMatrix aug;
  aug.rows = 1;
  aug.cols = lattice.count(0);
  aug.columns.assign(aug.cols, {{0, 1}});
  out.push_back(std::move(aug));

  Simplex sub;
  for (int d = 1; d <= top; ++d) {
    const FaceList& faces = lattice.by_dim[d];
    const FaceList& lower = lattice.by_dim[d - 1];
    SparseIntMatrix m;
    m.rows = lower.size();
    m.cols = faces.size();
    m.columns.resize(m.cols);
    for (std::size_t c = 0; c < faces.size(); ++c) {
      auto f = faces[c];
      auto& col = m.columns[c];
      col.reserve(f.size());
      for (std::size_t skip = 0; skip < f.size(); ++skip) {
        sub.clear();
        for (std::size_t j = 0; j < f.size(); ++j)
          if (j != skip) sub.push_back(f[j]);
        auto row = lower.find(sub);
        col.emplace_back(static_cast<std::uint32_t>(*row), skip % 2 == 0 ? 1 : -1);
      }
      std::sort(col.begin(), col.end());
    }
    out.push_back(std::move(m));
  }
  return out;
}

GradedHomology reduced_homology(const SimplicialComplex& k) {
  GradedHomology h;
  if (k.empty()) {
    if (k.empty_allowed()) h.set(-1, FgAbelianGroup(1));
    return h;
  }
  auto boundaries = boundary_matrices(k);
  const int top = static_cast<int>(boundaries.size()) - 1;
  // chain group sizes by degree starting at -1
  std::vector<std::size_t> size(top + 2);
  size[0] = 1;
  for (int d = 0; d <= top; ++d) size[d + 1] = boundaries[d].cols;

  std::vector<std::vector<Integer>> factors(top + 1);
  for (int d = 0; d <= top; ++d) factors[d] = invariant_factors(boundaries[d]);
  auto rank_of = [&](int d) -> std::size_t {
    return d >= 0 && d <= top ? factors[d].size() : 0;
  };

  for (int n = -1; n <= top; ++n) {
    std::size_t cycles = size[n + 1] - rank_of(n);
    std::size_t rank = cycles - rank_of(n + 1);
    std::vector<Integer> torsion;
    if (n + 1 <= top)
      for (const auto& f : factors[n + 1])
        if (f > 1) torsion.push_back(f);
    h.set(n, FgAbelianGroup(rank, std::move(torsion)));
  }
  return h;
}

bool is_homologically_dim_at_most(const GradedHomology& h, int d) {
  for (const auto& [deg, g] : h.groups())
    if (deg > d) return false;
  return h.at(d).is_free();
}

WedgeCheck is_wedge_homology(const GradedHomology& h, int q) {
  if (h.is_zero()) return {true, true};
  bool holds = h.groups().size() == 1 && h.groups().begin()->first == q && h.at(q).is_free();
  return {holds, false};
}

GradedHomology join_kunneth(const GradedHomology& x, const GradedHomology& y) {
  std::map<int, std::vector<Integer>> cyclic;
  auto add_free = [&](int degree, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) cyclic[degree].push_back(0);
  };
  for (const auto& [i, a] : x.groups()) {
    for (const auto& [j, b] : y.groups()) {
      const int tensor_deg = i + j + 1;
      add_free(tensor_deg, a.rank() * b.rank());
      for (std::size_t r = 0; r < a.rank(); ++r)
        for (const auto& e : b.torsion()) cyclic[tensor_deg].push_back(e);
      for (std::size_t r = 0; r < b.rank(); ++r)
        for (const auto& d : a.torsion()) cyclic[tensor_deg].push_back(d);
      for (const auto& d : a.torsion())
        for (const auto& e : b.torsion()) {
          Integer g = gcd(d, e);
          cyclic[tensor_deg].push_back(g);
          cyclic[tensor_deg + 1].push_back(g);
        }
    }
  }
  GradedHomology out;
  for (const auto& [deg, orders] : cyclic) out.set(deg, FgAbelianGroup::from_cyclic(orders));
  return out;
}

nlohmann::json to_json(const GradedHomology& h) {
  nlohmann::json degrees = nlohmann::json::object();
  for (const auto& [d, g] : h.groups()) {
    nlohmann::json torsion = nlohmann::json::array();
    for (const auto& t : g.torsion()) torsion.push_back(integer_json(t));
    degrees[std::to_string(d)] = {{"rank", g.rank()}, {"torsion", torsion}};
  }
  return {{"degrees", degrees}};
}

GradedHomology homology_from_json(const nlohmann::json& j) {
  GradedHomology h;
  for (const auto& [key, value] : j.at("degrees").items()) {
    std::vector<Integer> torsion;
    for (const auto& t : value.at("torsion")) torsion.push_back(parse_integer(t));
    h.set(std::stoi(key), FgAbelianGroup(value.at("rank").get<std::size_t>(), std::move(torsion)));
  }
  return h;
}

}  // namespace hbtop
