#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hbtop/homology.hpp"
#include "hbtop/poset.hpp"
#include "hbtop/simplicial.hpp"

namespace hbtop {

enum class Verdict { Contractible, NonContractible, Unknown };

const char* to_string(Verdict v);

/// Outcome of a contractibility certification attempt.
///
/// A contractible verdict carries a cone point, a dismantling order, or a
/// complete collapse sequence; a noncontractible verdict carries the lowest
/// degree with nonzero reduced homology.
struct ContractibilityCertificate {
  Verdict verdict = Verdict::Unknown;
  /// "cone", "dismantling", "collapse", "homology" or "none".
  std::string method = "none";
  std::optional<std::string> cone_point;
  /// Removed elements, in order.
  std::vector<std::string> dismantled;
  /// Elementary collapses (free face, its unique coface), in order.
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> collapses;
  std::optional<int> witness_degree;
  /// Size of what is left after dismantling or collapsing: elements for a
  /// poset, nonempty faces for a complex.
  std::size_t core_size = 0;

  bool contractible() const { return verdict == Verdict::Contractible; }
};

/// Greedy elementary collapses, lexicographically smallest free face first.
/// The empty complex is reported noncontractible with witness degree -1.
ContractibilityCertificate certify_complex(const SimplicialComplex& k);

/// Tries a minimum or maximum, then beat-point dismantling, then collapses
/// on the order complex of what is left.
ContractibilityCertificate certify_poset(const Poset& p);

/// Removes beat points (elements with a single upper cover or a single lower
/// cover), smallest index first, until none remain. The result is a strong
/// deformation retract of P. `removed` receives the removal order.
Poset beat_point_core(const Poset& p, std::vector<Index>* removed = nullptr);

/// Reduced homology of |P|, computed on its beat-point core.
GradedHomology poset_homology(const Poset& p);

/// When enabled, every contractible verdict is re-checked against reduced
/// homology and a std::logic_error is thrown on disagreement.
void set_certificate_cross_check(bool enabled);
bool certificate_cross_check();

nlohmann::json to_json(const ContractibilityCertificate& c);

}  // namespace hbtop
