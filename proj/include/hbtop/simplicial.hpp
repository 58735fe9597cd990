#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hbtop/poset.hpp"

namespace hbtop {

using Vertex = std::uint32_t;
/// Strictly increasing list of vertex indices.
using Simplex = std::vector<Vertex>;

/// All faces of a single dimension, sorted lexicographically and stored flat.
class FaceList {
 public:
  explicit FaceList(int dim) : width_(static_cast<std::size_t>(dim + 1)) {}

  int dim() const { return static_cast<int>(width_) - 1; }
  std::size_t size() const { return width_ ? data_.size() / width_ : 0; }
  std::span<const Vertex> operator[](std::size_t i) const { return {data_.data() + i * width_, width_}; }
  /// Position of a face, if present. Requires `face.size() == dim() + 1`.
  std::optional<std::size_t> find(std::span<const Vertex> face) const;

  void push_back(std::span<const Vertex> face) { data_.insert(data_.end(), face.begin(), face.end()); }
  void sort_unique();

 private:
  std::size_t width_;
  std::vector<Vertex> data_;
};

/// Nonempty faces grouped by dimension (index 0 holds vertices).
struct FaceLattice {
  std::vector<FaceList> by_dim;

  std::size_t count(int dim) const {
    return dim >= 0 && dim < static_cast<int>(by_dim.size()) ? by_dim[dim].size() : 0;
  }
  std::size_t total() const;
};

/// Finite abstract simplicial complex stored by its facets.
///
/// The empty complex is an ordinary value. `empty_allowed` records whether
/// that value carries the degree -1 convention for reduced homology.
class SimplicialComplex {
 public:
  /// The empty complex.
  SimplicialComplex() = default;
  explicit SimplicialComplex(bool empty_allowed) : empty_allowed_(empty_allowed) {}

  /// Builds from any generating family of faces over `vertex_ids`; nested
  /// faces are dropped and unused vertices become isolated points.
  static SimplicialComplex from_faces(std::vector<std::string> vertex_ids, std::vector<Simplex> faces,
                                      bool empty_allowed = true);
  /// Builds from faces given by vertex names; the vertex set is the union.
  static SimplicialComplex from_named_faces(const std::vector<std::vector<std::string>>& faces,
                                            bool empty_allowed = true);

  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  std::size_t vertex_count() const { return vertex_ids_.size(); }
  const std::vector<Simplex>& facets() const { return facets_; }
  bool empty() const { return facets_.empty(); }
  bool empty_allowed() const { return empty_allowed_; }
  /// -1 for the empty complex.
  int dimension() const;
  std::optional<Vertex> find_vertex(std::string_view id) const;

  FaceLattice faces() const;
  /// Alternating face count over nonempty faces.
  long long euler_characteristic() const;

  /// Same vertex names and the same facet sets.
  bool operator==(const SimplicialComplex& other) const;

 private:
  friend SimplicialComplex order_complex(const Poset&);
  static SimplicialComplex from_maximal(std::vector<std::string> vertex_ids, std::vector<Simplex> facets,
                                        bool empty_allowed);

  std::vector<std::string> vertex_ids_;
  std::vector<Simplex> facets_;
  bool empty_allowed_ = true;
};

/// Faces are the chains of P.
SimplicialComplex order_complex(const Poset& p);

/// Faces σ ∪ τ with σ ∈ K ∪ {∅}, τ ∈ L ∪ {∅}. Vertex names are tagged `L:`
/// and `R:` only when the two vertex sets collide.
SimplicialComplex space_join(const SimplicialComplex& k, const SimplicialComplex& l);

/// Join with two fresh apex vertices.
SimplicialComplex suspension(const SimplicialComplex& k);
SimplicialComplex suspension(const SimplicialComplex& k, int times);

/// Join with one fresh apex vertex.
SimplicialComplex simplicial_cone(const SimplicialComplex& k);

/// One-point union identifying the given basepoints. Summand vertices are
/// renamed `<i>:<name>`; the shared point is named `*`.
SimplicialComplex wedge(const std::vector<SimplicialComplex>& summands, const std::vector<std::string>& basepoints);

/// Faces of dimension at most d (d >= -1).
SimplicialComplex skeleton(const SimplicialComplex& k, int d);

/// Subcomplex generated by `faces` (vertex indices of k), keeping the
/// vertex names of k for the vertices that occur.
SimplicialComplex subcomplex(const SimplicialComplex& k, std::vector<Simplex> faces);

/// Full simplex and its boundary on named vertices `0..n-1`.
SimplicialComplex full_simplex(int vertices);
SimplicialComplex simplex_boundary(int vertices);

/// One facet per line, `∅` alone denotes the empty complex. Throws ParseError.
SimplicialComplex parse_complex(std::string_view text);
std::string format_complex(const SimplicialComplex& k);

}  // namespace hbtop
