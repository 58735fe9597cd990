#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hbtop/lemmas.hpp"
#include "hbtop/poset.hpp"
#include "hbtop/simplicial.hpp"

namespace hbtop {

/// Face of a base complex as a bitmask over its vertex indices.
using FaceMask = std::uint64_t;

/// A finite complex with an upward-closed "simple" predicate on its faces,
/// the empty face included.
///
/// In positive-genus mode (the default) the empty face is non-simple; in
/// genus-0 mode it is simple, which by upward closure makes every face
/// simple.
class MarkedComplex {
 public:
  /// Simple faces are those containing one of `minimal_simple`.
  static MarkedComplex from_generators(SimplicialComplex base, const std::vector<Simplex>& minimal_simple,
                                       bool genus0 = false);
  /// Explicit list of simple nonempty faces; throws std::invalid_argument
  /// unless the list is upward closed among the faces of the base.
  static MarkedComplex from_simple_faces(SimplicialComplex base, const std::vector<Simplex>& simple,
                                         bool genus0 = false);

  const SimplicialComplex& base() const { return base_; }
  bool genus0() const { return genus0_; }
  /// Whether a system whose non-blue part is empty counts towards ∂RGB and
  /// Q1 in positive-genus mode. On by default.
  bool count_empty_remainder() const { return count_empty_remainder_; }
  MarkedComplex with_count_empty_remainder(bool on) const;

  std::size_t vertex_count() const { return base_.vertex_count(); }
  /// All faces of the base, the empty face first, then by size and mask.
  const std::vector<FaceMask>& faces() const { return faces_; }
  bool is_face(FaceMask f) const;
  bool is_simple(FaceMask f) const;
  /// Inclusion-minimal simple faces.
  std::vector<FaceMask> minimal_simple() const;

  std::string face_name(FaceMask f) const;

 private:
  MarkedComplex(SimplicialComplex base, bool genus0);

  SimplicialComplex base_;
  bool genus0_ = false;
  bool count_empty_remainder_ = true;
  std::vector<FaceMask> faces_;
  std::vector<FaceMask> simple_;  // sorted
};

/// A simple face with every vertex coloured red, green or blue.
struct ColoredSystem {
  FaceMask face = 0;
  FaceMask red = 0;
  FaceMask blue = 0;

  FaceMask green() const { return face & ~red & ~blue; }
  /// Red and green vertices.
  FaceMask non_blue() const { return face & ~blue; }
  bool operator==(const ColoredSystem&) const = default;
  auto operator<=>(const ColoredSystem&) const = default;
};

/// Closed form of the RGB order: a ≤ b iff b arises from a by adding blue
/// vertices, turning green to blue and turning green to red.
bool rgb_leq(const ColoredSystem& a, const ColoredSystem& b);

struct ColoredPoset {
  PosetPtr poset;
  /// Coloured system of each element, by element index.
  std::vector<ColoredSystem> systems;

  std::size_t size() const { return systems.size(); }
  /// Subposet on the systems satisfying `keep`, in the same relative order.
  template <class Pred>
  ColoredPoset restrict(Pred keep) const {
    ElementSet s;
    for (Index i = 0; i < systems.size(); ++i)
      if (keep(systems[i])) s.push_back(i);
    return subset(s);
  }
  ColoredPoset subset(const ElementSet& s) const;
  std::optional<Index> find(const ColoredSystem& c) const;
};

struct FacePoset {
  PosetPtr poset;
  std::vector<FaceMask> faces;
};

std::string system_name(const MarkedComplex& m, const ColoredSystem& c);

/// All coloured simple systems, ordered by the closure of the single moves.
ColoredPoset build_rgb(const MarkedComplex& m);

/// Systems with a red vertex, or whose non-blue part is non-simple. Throws
/// std::logic_error if the result is not upward closed.
ColoredPoset boundary_rgb(const MarkedComplex& m);
ColoredPoset boundary_rgb(const MarkedComplex& m, const ColoredPoset& rgb);

/// Non-blue part non-simple. Throws std::domain_error in genus-0 mode.
ColoredPoset q1(const MarkedComplex& m);
/// Some vertex red. Throws std::domain_error in genus-0 mode.
ColoredPoset q2(const MarkedComplex& m);

/// Nonempty non-simple faces under inclusion.
FacePoset ns_poset(const MarkedComplex& m);
/// Simple faces under inclusion (the empty face only in genus-0 mode).
FacePoset simple_poset(const MarkedComplex& m);

/// Sends a coloured system to its underlying face.
PosetMap forget_colours(const ColoredPoset& source, const FacePoset& simple);
PosetMap forget_colours(const MarkedComplex& m);

enum class RecolourScope { RgbFibre, Q2Fibre, Q1Q2Fibre };
const char* to_string(RecolourScope s);

/// One map of a retraction sequence: an endomap of `domain`, whose image is
/// the domain of the next step.
struct RecolourStep {
  std::string description;
  ColoredPoset domain;
  PosetMap map;
  MonotoneKind kind;
};

/// The fibre a retraction sequence starts from:
///  - RgbFibre: systems whose face contains D (D simple);
///  - Q2Fibre: the same, restricted to systems with a red vertex (D simple,
///    nonempty);
///  - Q1Q2Fibre: systems in Q1 ∩ Q2 whose non-blue part contains D (D
///    nonempty, non-simple).
/// Throws std::invalid_argument when D does not fit the scope.
ColoredPoset recolour_domain(const MarkedComplex& m, RecolourScope scope, FaceMask d);

/// The recolouring maps retracting the fibre over D. The final image is
/// D all blue (RgbFibre), D all red (Q2Fibre), or the systems D red plus
/// blue B with D ∪ B simple (Q1Q2Fibre).
std::vector<RecolourStep> recolour_retraction(const MarkedComplex& m, RecolourScope scope, FaceMask d);

/// Classification of every recolouring step over every admissible D: the
/// rgb fibre for each simple D, and in positive genus the Q2 fibre for each
/// nonempty simple D and the Q1 ∩ Q2 fibre for each non-simple D.
struct RecolourAudit {
  std::size_t fibres = 0;
  std::size_t steps = 0;
  std::size_t increasing = 0;
  std::size_t decreasing = 0;
  /// "<scope> over <D>: <step>" for each step classified as neither.
  std::vector<std::string> non_monotone;

  bool all_monotone() const { return non_monotone.empty(); }
};
RecolourAudit audit_recolouring(const MarkedComplex& m);
nlohmann::json to_json(const RecolourAudit& a);

/// |∂RGB| ≃ Σ|NS| at the level of reduced homology, with the hypotheses of
/// the two-set covering argument certified: Q1 and Q2 contractible and,
/// for every D in NS, the retract of the fibre over D contractible.
LemmaReport check_boundary_suspension(const MarkedComplex& m);

/// Complex facets as in the complex format, plus `simple v1 v2 …` lines for
/// minimal simple faces and optional flag lines `genus0` and
/// `ignore-empty-remainder`. Throws ParseError.
MarkedComplex parse_marked(std::string_view text);
std::string format_marked(const MarkedComplex& m);

}  // namespace hbtop
