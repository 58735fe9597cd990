#include "hbtop/lemmas.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hbtop {

namespace {

ElementSet intersect(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet sorted(ElementSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

ElementSet all_elements(const Poset& p) {
  ElementSet out(p.size());
  for (Index i = 0; i < p.size(); ++i) out[i] = i;
  return out;
}

std::string set_label(std::uint32_t mask, std::size_t k) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < k; ++i)
    if (mask >> i & 1) {
      s += (first ? "" : ",") + std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

// Certifies each set in `sets` contractible; returns the combined status.
Hypothesis certify_all(const Poset& p, const std::vector<std::pair<std::string, ElementSet>>& sets,
                       std::string clause) {
  Hypothesis h{std::move(clause), HypothesisStatus::Certified, {}};
  std::size_t unknown = 0;
  for (const auto& [name, s] : sets) {
    auto cert = certify_poset(p.induced(s));
    auto st = status_of(cert);
    if (st == HypothesisStatus::Failed) {
      h.status = HypothesisStatus::Failed;
      h.detail = name + " is not contractible (H" + std::to_string(cert.witness_degree.value_or(-1)) + " ≠ 0)";
      return h;
    }
    if (st == HypothesisStatus::Unknown) {
      if (unknown++ == 0) h.detail = name + " could not be certified";
      h.status = HypothesisStatus::Unknown;
    }
  }
  if (h.status == HypothesisStatus::Certified) h.detail = std::to_string(sets.size()) + " certified";
  return h;
}

struct CoverCheck {
  bool covers = true;
  bool down_closed = true;
  std::string detail;
};

CoverCheck check_cover(const Poset& p, const std::vector<ElementSet>& qs) {
  CoverCheck c;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    for (Index x : qs[i]) {
      if (x >= p.size()) throw std::invalid_argument("cover set refers to an unknown element");
      seen[x] = true;
    }
    if (c.down_closed && !p.is_down_closed(qs[i])) {
      c.down_closed = false;
      c.detail = "Q" + std::to_string(i + 1) + " is not downward closed";
    }
  }
  for (Index x = 0; x < p.size(); ++x)
    if (!seen[x]) {
      c.covers = false;
      if (c.detail.empty()) c.detail = p.id(x) + " lies in no Q_i";
      break;
    }
  return c;
}

}  // namespace

const char* to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::Certified:
      return "certified";
    case HypothesisStatus::Failed:
      return "failed";
    case HypothesisStatus::Unknown:
      break;
  }
  return "unknown";
}

const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Verified:
      return "verified";
    case Conclusion::Violated:
      return "violated";
    case Conclusion::Skipped:
      break;
  }
  return "skipped";
}

bool LemmaReport::hypotheses_certified() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(),
                     [](const Hypothesis& h) { return h.status == HypothesisStatus::Certified; });
}

Hypothesis& LemmaReport::add(std::string clause, HypothesisStatus status, std::string detail) {
  hypotheses.push_back({std::move(clause), status, std::move(detail)});
  return hypotheses.back();
}

void LemmaReport::conclude(bool holds) {
  if (!hypotheses_certified())
    conclusion = Conclusion::Skipped;
  else
    conclusion = holds ? Conclusion::Verified : Conclusion::Violated;
}

void LemmaReport::conclude_equal(GradedHomology left, GradedHomology right) {
  const bool equal = left == right;
  lhs = std::move(left);
  rhs = std::move(right);
  conclude(equal);
}

nlohmann::json to_json(const LemmaReport& r) {
  nlohmann::json hyps = nlohmann::json::array();
  for (const auto& h : r.hypotheses) {
    nlohmann::json j{{"clause", h.clause}, {"status", to_string(h.status)}};
    if (!h.detail.empty()) j["detail"] = h.detail;
    hyps.push_back(j);
  }
  nlohmann::json j{{"lemma", r.lemma},     {"instance", r.instance},
                   {"hypotheses", hyps},   {"conclusion", to_string(r.conclusion)},
                   {"claim", r.claim}};
  if (r.lhs) j["lhs"] = to_json(*r.lhs);
  if (r.rhs) j["rhs"] = to_json(*r.rhs);
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

HypothesisStatus status_of(const ContractibilityCertificate& c) {
  switch (c.verdict) {
    case Verdict::Contractible:
      return HypothesisStatus::Certified;
    case Verdict::NonContractible:
      return HypothesisStatus::Failed;
    case Verdict::Unknown:
      break;
  }
  return HypothesisStatus::Unknown;
}

LemmaReport check_fibre_lemma(const PosetMap& f, Relation mode) {
  if (mode != Relation::LessEq && mode != Relation::GreaterEq)
    throw std::invalid_argument("fibre mode must be <= or >=");
  LemmaReport r;
  r.lemma = "fibre";
  r.claim = "H(source) = H(target)";
  const bool preserving = f.is_order_preserving();
  r.add("order-preserving", preserving ? HypothesisStatus::Certified : HypothesisStatus::Failed);
  if (preserving) {
    std::vector<std::pair<std::string, ElementSet>> fibres;
    for (Index x = 0; x < f.target().size(); ++x)
      fibres.emplace_back("fibre over " + f.target().id(x), fibre_elements(f, x, mode));
    r.hypotheses.push_back(certify_all(f.source(), fibres, mode == Relation::LessEq ? "fibres f^-1(Q<=x) contractible"
                                                                                  : "fibres f^-1(Q>=x) contractible"));
  }
  if (!r.hypotheses_certified()) return r;
  r.conclude_equal(poset_homology(f.source()), poset_homology(f.target()));
  return r;
}

LemmaReport check_monotone_lemma(const PosetMap& f) {
  LemmaReport r;
  r.lemma = "monotone";
  r.claim = "H(P) = H(Im f)";
  if (!f.is_endomap()) {
    r.add("endomap", HypothesisStatus::Failed, "source and target differ");
    return r;
  }
  if (!f.is_order_preserving()) {
    r.add("order-preserving", HypothesisStatus::Failed);
    return r;
  }
  r.add("order-preserving", HypothesisStatus::Certified);
  MonotoneKind kind = classify_endomap(f);
  r.details["kind"] = to_string(kind);
  r.add("monotone increasing or decreasing",
        kind == MonotoneKind::Neither ? HypothesisStatus::Failed : HypothesisStatus::Certified, to_string(kind));
  if (!r.hypotheses_certified()) return r;
  r.conclude_equal(poset_homology(f.source()), poset_homology(f.source().induced(f.image())));
  return r;
}

LemmaReport check_covering_lemma(const Poset& p, const std::vector<ElementSet>& raw) {
  LemmaReport r;
  r.lemma = "covering";
  const std::size_t k = raw.size();
  if (k == 0 || k > 16) throw std::invalid_argument("covering lemma needs between 1 and 16 subsets");
  std::vector<ElementSet> qs;
  for (const auto& q : raw) qs.push_back(sorted(q));
  r.details["k"] = k;
  r.claim = "H(P) = H(Σ^" + std::to_string(k - 1) + " |∩Q|)";

  CoverCheck cover = check_cover(p, qs);
  r.add("Q_i cover P", cover.covers ? HypothesisStatus::Certified : HypothesisStatus::Failed,
        cover.covers ? "" : cover.detail);
  r.add("Q_i downward closed", cover.down_closed ? HypothesisStatus::Certified : HypothesisStatus::Failed,
        cover.down_closed ? "" : cover.detail);
  if (!r.hypotheses_certified()) return r;

  std::vector<std::pair<std::string, ElementSet>> proper;
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    ElementSet s;
    bool first = true;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) {
        s = first ? qs[i] : intersect(s, qs[i]);
        first = false;
      }
    proper.emplace_back("∩ over " + set_label(mask, k), std::move(s));
  }
  r.hypotheses.push_back(certify_all(p, proper, "proper intersections contractible"));
  if (!r.hypotheses_certified()) return r;

  ElementSet all = qs[0];
  for (std::size_t i = 1; i < k; ++i) all = intersect(all, qs[i]);
  r.details["intersection_size"] = all.size();
  r.conclude_equal(poset_homology(p), poset_homology(p.induced(all)).shifted(static_cast<int>(k) - 1));
  return r;
}

LemmaReport check_two_cover_lemma(const Poset& p, const ElementSet& raw1, const ElementSet& raw2) {
  LemmaReport r;
  r.lemma = "two-cover";
  r.claim = "H(P) = H(Σ |Q1∩Q2|)";
  ElementSet q1 = sorted(raw1), q2 = sorted(raw2);
  CoverCheck cover = check_cover(p, {q1, q2});
  r.add("Q1 ∪ Q2 = P", cover.covers ? HypothesisStatus::Certified : HypothesisStatus::Failed);
  r.add("Q1, Q2 downward closed", cover.down_closed ? HypothesisStatus::Certified : HypothesisStatus::Failed);
  if (!r.hypotheses_certified()) return r;
  r.hypotheses.push_back(certify_all(p, {{"Q1", q1}, {"Q2", q2}}, "Q1 and Q2 contractible"));
  if (!r.hypotheses_certified()) return r;
  SimplicialComplex meet = order_complex(p.induced(intersect(q1, q2)));
  r.conclude_equal(reduced_homology(order_complex(p)), reduced_homology(suspension(meet)));
  return r;
}

PosetMap proof_map_hocolim(const Poset& p, const std::vector<ElementSet>& raw) {
  const std::size_t k = raw.size();
  if (k == 0 || k > 16) throw std::invalid_argument("covering map needs between 1 and 16 subsets");
  std::vector<ElementSet> qs;
  for (const auto& q : raw) qs.push_back(sorted(q));
  CoverCheck cover = check_cover(p, qs);
  if (!cover.covers || !cover.down_closed) throw std::invalid_argument(cover.detail);

  std::vector<std::uint32_t> missing(p.size(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<bool> in(p.size(), false);
    for (Index x : qs[i]) in[x] = true;
    for (Index x = 0; x < p.size(); ++x)
      if (!in[x]) missing[x] |= std::uint32_t{1} << i;
  }
  ElementSet meet;
  for (Index x = 0; x < p.size(); ++x)
    if (!missing[x]) meet.push_back(x);

  auto target = std::make_shared<const Poset>(quillen_join(p.induced(meet), sphere_poset(static_cast<int>(k) - 2)));
  std::vector<Index> assignment(p.size());
  for (Index x = 0; x < p.size(); ++x)
    assignment[x] = missing[x] ? target->at("R:" + set_label(missing[x], k)) : target->at("L:" + p.id(x));
  return PosetMap(std::make_shared<const Poset>(p), target, std::move(assignment));
}

LemmaReport check_dimension_lemma(const Poset& p, int d) {
  LemmaReport r;
  r.lemma = "dimension";
  r.claim = "|P| homologically of dimension <= " + std::to_string(d);
  r.details["d"] = d;
  r.add("d >= -1", d >= -1 ? HypothesisStatus::Certified : HypothesisStatus::Failed);
  // The longest chain going up is a strictly decreasing function to ℕ.
  auto rank = p.height_above();
  bool decreasing = true;
  for (const auto& [lo, hi] : p.covers()) decreasing = decreasing && rank[lo] > rank[hi];
  r.add("strictly decreasing rank", decreasing ? HypothesisStatus::Certified : HypothesisStatus::Failed);
  Hypothesis links{"every |P>x| homologically of dimension <= d-1", HypothesisStatus::Certified, {}};
  for (Index x = 0; x < p.size() && links.status == HypothesisStatus::Certified; ++x)
    if (!is_homologically_dim_at_most(poset_homology(subposet(p, x, Relation::Greater)), d - 1)) {
      links.status = HypothesisStatus::Failed;
      links.detail = "fails at " + p.id(x);
    }
  r.hypotheses.push_back(links);
  if (!r.hypotheses_certified()) return r;
  GradedHomology h = poset_homology(p);
  r.lhs = h;
  r.conclude(is_homologically_dim_at_most(h, d));
  return r;
}

Stratification Stratification::from_function(SimplicialComplex k, Poset p,
                                             const std::function<Index(std::span<const Vertex>)>& label) {
  Stratification s{std::move(k), std::move(p), {}};
  FaceLattice lattice = s.complex.faces();
  for (const auto& list : lattice.by_dim) {
    std::vector<Index> row(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
      row[i] = label(list[i]);
      if (row[i] >= s.poset.size()) throw std::invalid_argument("label outside the poset");
    }
    s.labels.push_back(std::move(row));
  }
  return s;
}

LemmaReport check_stratification(const Stratification& s) {
  LemmaReport r;
  r.lemma = "stratification";
  r.claim = "H(X) = H(|P|)";
  const Poset& p = s.poset;
  FaceLattice lattice = s.complex.faces();
  if (s.labels.size() != lattice.by_dim.size())
    throw std::invalid_argument("stratification labels do not match the complex");
  for (std::size_t d = 0; d < lattice.by_dim.size(); ++d)
    if (s.labels[d].size() != lattice.by_dim[d].size())
      throw std::invalid_argument("stratification labels do not match the complex");

  // Monotone on codimension-one pairs, hence on all pairs.
  bool monotone = true;
  std::string where;
  Simplex sub;
  for (std::size_t d = 1; d < lattice.by_dim.size() && monotone; ++d)
    for (std::size_t i = 0; i < lattice.by_dim[d].size() && monotone; ++i) {
      auto f = lattice.by_dim[d][i];
      for (std::size_t skip = 0; skip < f.size(); ++skip) {
        sub.clear();
        for (std::size_t j = 0; j < f.size(); ++j)
          if (j != skip) sub.push_back(f[j]);
        std::size_t low = *lattice.by_dim[d - 1].find(sub);
        if (!p.leq(s.labels[d - 1][low], s.labels[d][i])) {
          monotone = false;
          where = p.id(s.labels[d - 1][low]) + " on a face, " + p.id(s.labels[d][i]) + " on a coface";
          break;
        }
      }
    }
  r.add("label monotone for the face order", monotone ? HypothesisStatus::Certified : HypothesisStatus::Failed,
        where);
  r.add("locally finite", HypothesisStatus::Certified, "finite complex");
  r.add("closed strata inclusions are cofibrations", HypothesisStatus::Certified, "subcomplex inclusions");
  if (!r.hypotheses_certified()) return r;

  Hypothesis strata{"closed strata f^-1(P<=p) contractible", HypothesisStatus::Certified, {}};
  std::size_t unknown = 0;
  for (Index x = 0; x < p.size(); ++x) {
    std::vector<Simplex> faces;
    for (std::size_t d = 0; d < lattice.by_dim.size(); ++d)
      for (std::size_t i = 0; i < lattice.by_dim[d].size(); ++i)
        if (p.leq(s.labels[d][i], x)) {
          auto f = lattice.by_dim[d][i];
          faces.emplace_back(f.begin(), f.end());
        }
    auto cert = certify_complex(subcomplex(s.complex, std::move(faces)));
    auto st = status_of(cert);
    if (st == HypothesisStatus::Failed) {
      strata.status = HypothesisStatus::Failed;
      strata.detail = "stratum over " + p.id(x) + " is not contractible";
      break;
    }
    if (st == HypothesisStatus::Unknown) {
      strata.status = HypothesisStatus::Unknown;
      if (unknown++ == 0) strata.detail = "stratum over " + p.id(x) + " could not be certified";
    }
  }
  r.hypotheses.push_back(strata);
  if (!r.hypotheses_certified()) return r;
  r.conclude_equal(reduced_homology(s.complex), poset_homology(p));
  return r;
}

}  // namespace hbtop
