#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hbtop/integer_matrix.hpp"
#include "hbtop/simplicial.hpp"

namespace hbtop {

/// Finitely generated abelian group ℤ^rank ⊕ ℤ/d1 ⊕ ... with d1 | d2 | ...
/// and every d_i >= 2.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  explicit FgAbelianGroup(std::size_t rank, std::vector<Integer> torsion = {});

  /// Group generated by the given cyclic orders (0 means ℤ, 1 is dropped);
  /// the torsion is brought into invariant-factor form.
  static FgAbelianGroup from_cyclic(const std::vector<Integer>& orders);

  std::size_t rank() const { return rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  bool is_zero() const { return rank_ == 0 && torsion_.empty(); }
  bool is_free() const { return torsion_.empty(); }

  bool operator==(const FgAbelianGroup&) const = default;
  std::string to_string() const;

 private:
  std::size_t rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Reduced homology by degree (degrees >= -1); absent degrees are zero.
class GradedHomology {
 public:
  GradedHomology() = default;

  const FgAbelianGroup& at(int degree) const;
  void set(int degree, FgAbelianGroup g);
  const std::map<int, FgAbelianGroup>& groups() const { return groups_; }

  bool is_zero() const { return groups_.empty(); }
  /// The same groups, `by` degrees higher.
  GradedHomology shifted(int by) const;
  /// Σ (-1)^k rank H_k, including degree -1.
  long long euler_characteristic() const;
  std::optional<int> lowest_nonzero_degree() const;

  bool operator==(const GradedHomology&) const = default;
  std::string to_string() const;

  static GradedHomology point() { return {}; }
  /// ℤ^count in one degree.
  static GradedHomology free_in(int degree, std::size_t count = 1);

 private:
  std::map<int, FgAbelianGroup> groups_;
};

/// Boundary maps ∂_k : C_k -> C_{k-1} for k = 0..dim K; ∂_0 is the
/// augmentation onto the empty face. The empty complex has no matrices.
std::vector<SparseIntMatrix> boundary_matrices(const SimplicialComplex& k);

/// Exact reduced integral homology. The empty complex has ℤ in degree -1
/// when its `empty_allowed` flag is set and nothing otherwise.
GradedHomology reduced_homology(const SimplicialComplex& k);

/// H_k = 0 for every k > d and H_d is free.
bool is_homologically_dim_at_most(const GradedHomology& h, int d);

struct WedgeCheck {
  bool holds = false;
  /// Set when H is zero; the empty wedge then fits every degree.
  bool zero_module = false;
};
/// Free homology concentrated in degree q.
WedgeCheck is_wedge_homology(const GradedHomology& h, int q);

/// Reduced homology of a join from that of the factors:
/// H̃_n = ⊕_{i+j=n-1} H̃_i ⊗ H̃_j ⊕ ⊕_{i+j=n-2} Tor(H̃_i, H̃_j).
GradedHomology join_kunneth(const GradedHomology& x, const GradedHomology& y);

nlohmann::json to_json(const GradedHomology& h);
GradedHomology homology_from_json(const nlohmann::json& j);

}  // namespace hbtop
