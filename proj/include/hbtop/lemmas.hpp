#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hbtop/contractibility.hpp"
#include "hbtop/homology.hpp"
#include "hbtop/poset.hpp"
#include "hbtop/simplicial.hpp"

namespace hbtop {

enum class HypothesisStatus { Certified, Failed, Unknown };
enum class Conclusion { Verified, Violated, Skipped };

const char* to_string(HypothesisStatus s);
const char* to_string(Conclusion c);

struct Hypothesis {
  std::string clause;
  HypothesisStatus status = HypothesisStatus::Unknown;
  std::string detail;
};

/// Outcome of checking one lemma on one instance. The conclusion is only
/// evaluated when every hypothesis is certified; otherwise it is skipped.
struct LemmaReport {
  std::string lemma;
  std::string instance;
  std::vector<Hypothesis> hypotheses;
  Conclusion conclusion = Conclusion::Skipped;
  /// What was compared, e.g. "H(P) = H(Σ^2 |Q1∩Q2∩Q3|)".
  std::string claim;
  std::optional<GradedHomology> lhs;
  std::optional<GradedHomology> rhs;
  nlohmann::json details = nlohmann::json::object();

  bool hypotheses_certified() const;
  Hypothesis& add(std::string clause, HypothesisStatus status, std::string detail = {});
  /// Sets the conclusion from `holds` when all hypotheses are certified.
  void conclude(bool holds);
  /// Sets lhs and rhs and concludes on their equality.
  void conclude_equal(GradedHomology left, GradedHomology right);
};

nlohmann::json to_json(const LemmaReport& r);

/// Maps a certificate verdict onto a hypothesis status.
HypothesisStatus status_of(const ContractibilityCertificate& c);

/// Quillen's fibre lemma: every fibre f^{-1}(Q_{<=x}) (or Q_{>=x}) contractible
/// implies |P| and |Q| have equal reduced homology.
LemmaReport check_fibre_lemma(const PosetMap& f, Relation mode);

/// A monotone increasing or decreasing endomap is a homotopy equivalence
/// onto its image.
LemmaReport check_monotone_lemma(const PosetMap& f);

/// P = Q_1 ∪ ... ∪ Q_k with each Q_i downward closed and every proper
/// nonempty intersection contractible implies |P| ≃ Σ^{k-1} |∩ Q_i|.
LemmaReport check_covering_lemma(const Poset& p, const std::vector<ElementSet>& qs);

/// The two-set case stated directly: Q_1, Q_2 downward closed and
/// contractible implies |P| ≃ Σ |Q_1 ∩ Q_2|. The suspension is built as a
/// complex rather than by shifting degrees.
LemmaReport check_two_cover_lemma(const Poset& p, const ElementSet& q1, const ElementSet& q2);

/// The map P -> (∩ Q_i) ∗ S^{k-2} that is the identity on the intersection
/// and sends x to {i : x ∉ Q_i} elsewhere. Its fibres below each point are
/// the intersections over complementary index sets. Throws
/// std::invalid_argument unless the Q_i are downward closed and cover P.
PosetMap proof_map_hocolim(const Poset& p, const std::vector<ElementSet>& qs);

/// If every |P_{>x}| is homologically of dimension <= d-1 then |P| is
/// homologically of dimension <= d (reduced homology throughout).
LemmaReport check_dimension_lemma(const Poset& p, int d);

/// Face-labelled complex: each nonempty face carries an element of P.
struct Stratification {
  SimplicialComplex complex;
  Poset poset;
  /// Labels indexed like `complex.faces().by_dim`.
  std::vector<std::vector<Index>> labels;

  static Stratification from_function(SimplicialComplex k, Poset p,
                                      const std::function<Index(std::span<const Vertex>)>& label);
};

/// Monotone labelling with every closed stratum f^{-1}(P_{<=p}) contractible
/// implies |X| and |P| have equal reduced homology.
LemmaReport check_stratification(const Stratification& s);

}  // namespace hbtop
