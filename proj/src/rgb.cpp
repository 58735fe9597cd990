#include "hbtop/rgb.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hbtop/error.hpp"
#include "text_util.hpp"

namespace hbtop {

namespace {

constexpr std::size_t kMaxBaseVertices = 64;

FaceMask mask_of(std::span<const Vertex> f) {
  FaceMask m = 0;
  for (Vertex v : f) m |= FaceMask{1} << v;
  return m;
}

bool subset_of(FaceMask a, FaceMask b) { return (a & ~b) == 0; }

bool by_size_then_mask(FaceMask a, FaceMask b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}

// Non-blue part qualifies for ∂RGB's first clause and for Q1.
bool remainder_counts(const MarkedComplex& m, FaceMask remainder) {
  if (remainder == 0) return !m.genus0() && m.count_empty_remainder();
  return !m.is_simple(remainder);
}

bool in_q1(const MarkedComplex& m, const ColoredSystem& c) { return remainder_counts(m, c.non_blue()); }
bool in_q2(const ColoredSystem& c) { return c.red != 0; }
bool in_boundary(const MarkedComplex& m, const ColoredSystem& c) { return in_q2(c) || in_q1(m, c); }

void require_positive_genus(const MarkedComplex& m, const char* what) {
  if (m.genus0())
    throw std::domain_error(std::string(what) + " is only defined in positive-genus mode");
}

FacePoset face_poset(const MarkedComplex& m, const std::vector<FaceMask>& faces) {
  std::vector<std::string> ids;
  for (FaceMask f : faces) ids.push_back(m.face_name(f));
  auto p = Poset::from_predicate(std::move(ids), [&](Index a, Index b) {
    return faces[a] != faces[b] && subset_of(faces[a], faces[b]);
  });
  return {std::make_shared<const Poset>(std::move(p)), faces};
}

using Recolour = std::function<ColoredSystem(const ColoredSystem&)>;

struct StepSpec {
  std::string description;
  Recolour apply;
};

std::vector<StepSpec> step_specs(RecolourScope scope, FaceMask d) {
  StepSpec red_to_green{"turn red vertices green", [](const ColoredSystem& c) {
                          return ColoredSystem{c.face, 0, c.blue};
                        }};
  StepSpec green_to_blue{"turn green vertices blue", [](const ColoredSystem& c) {
                           return ColoredSystem{c.face, c.red, c.blue | c.green()};
                         }};
  StepSpec forget_outside{"forget blue vertices outside D", [d](const ColoredSystem& c) {
                            FaceMask gone = c.blue & ~d;
                            return ColoredSystem{c.face & ~gone, c.red, c.blue & ~gone};
                          }};
  StepSpec blue_in_to_green{"turn blue vertices in D green", [d](const ColoredSystem& c) {
                              return ColoredSystem{c.face, c.red, c.blue & ~d};
                            }};
  StepSpec green_in_to_red{"turn green vertices in D red", [d](const ColoredSystem& c) {
                             return ColoredSystem{c.face, c.red | (c.green() & d), c.blue};
                           }};
  StepSpec red_out_to_green{"turn red vertices outside D green", [d](const ColoredSystem& c) {
                              return ColoredSystem{c.face, c.red & d, c.blue};
                            }};
  StepSpec green_out_to_blue{"turn green vertices outside D blue", [d](const ColoredSystem& c) {
                               return ColoredSystem{c.face, c.red, c.blue | (c.green() & ~d)};
                             }};
  switch (scope) {
    case RecolourScope::RgbFibre:
      return {red_to_green, green_to_blue, forget_outside};
    case RecolourScope::Q2Fibre:
      return {blue_in_to_green, green_in_to_red, red_out_to_green, green_out_to_blue, forget_outside};
    case RecolourScope::Q1Q2Fibre:
      // Making D red first keeps every intermediate system inside Q1 ∩ Q2.
      return {green_in_to_red, red_out_to_green, green_out_to_blue};
  }
  return {};
}

ColoredPoset domain_from(const MarkedComplex& m, const ColoredPoset& rgb, RecolourScope scope, FaceMask d) {
  if (!m.is_face(d)) throw std::invalid_argument("D is not a face of the base complex");
  switch (scope) {
    case RecolourScope::RgbFibre:
      if (!m.is_simple(d)) throw std::invalid_argument("the rgb fibre needs a simple face D");
      return rgb.restrict([d](const ColoredSystem& c) { return subset_of(d, c.face); });
    case RecolourScope::Q2Fibre:
      if (!m.is_simple(d)) throw std::invalid_argument("the Q2 fibre needs a simple face D");
      if (d == 0) throw std::invalid_argument("the Q2 fibre needs a nonempty face D");
      return rgb.restrict([d](const ColoredSystem& c) { return subset_of(d, c.face) && in_q2(c); });
    case RecolourScope::Q1Q2Fibre:
      require_positive_genus(m, "the Q1 ∩ Q2 fibre");
      if (d == 0 || m.is_simple(d)) throw std::invalid_argument("the Q1 ∩ Q2 fibre needs a nonempty non-simple D");
      return rgb.restrict([&m, d](const ColoredSystem& c) {
        return in_q1(m, c) && in_q2(c) && subset_of(d, c.non_blue());
      });
  }
  throw std::invalid_argument("unknown recolouring scope");
}

std::vector<RecolourStep> retraction_from(const MarkedComplex& m, const ColoredPoset& rgb, RecolourScope scope,
                                          FaceMask d) {
  ColoredPoset cur = domain_from(m, rgb, scope, d);
  std::vector<RecolourStep> steps;
  for (const auto& spec : step_specs(scope, d)) {
    std::map<ColoredSystem, Index> index;
    for (Index i = 0; i < cur.size(); ++i) index.emplace(cur.systems[i], i);
    std::vector<Index> assignment(cur.size());
    for (Index i = 0; i < cur.size(); ++i) {
      auto it = index.find(spec.apply(cur.systems[i]));
      if (it == index.end())
        throw std::logic_error("recolouring step '" + spec.description + "' leaves its domain at " +
                               system_name(m, cur.systems[i]));
      assignment[i] = it->second;
    }
    PosetMap map(cur.poset, cur.poset, std::move(assignment));
    MonotoneKind kind = classify_endomap(map);
    ColoredPoset next = cur.subset(map.image());
    steps.push_back({spec.description, std::move(cur), std::move(map), kind});
    cur = std::move(next);
  }
  return steps;
}

}  // namespace

// ---------------------------------------------------------------------------

MarkedComplex::MarkedComplex(SimplicialComplex base, bool genus0) : base_(std::move(base)), genus0_(genus0) {
  if (base_.vertex_count() > kMaxBaseVertices)
    throw std::invalid_argument("marked complexes support at most 64 base vertices");
  std::vector<FaceMask> all{0};
  for (const auto& f : base_.facets()) {
    if (f.size() > 24) throw std::invalid_argument("base facet too large");
    const FaceMask full = mask_of(f);
    // every submask of the facet
    for (FaceMask s = full;; s = (s - 1) & full) {
      all.push_back(s);
      if (s == 0) break;
    }
  }
  std::sort(all.begin(), all.end(), by_size_then_mask);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  faces_ = std::move(all);
}

MarkedComplex MarkedComplex::from_generators(SimplicialComplex base, const std::vector<Simplex>& minimal_simple,
                                             bool genus0) {
  MarkedComplex m(std::move(base), genus0);
  std::vector<FaceMask> gens;
  for (const auto& g : minimal_simple) {
    for (Vertex v : g)
      if (v >= m.vertex_count()) throw std::invalid_argument("simple face refers to an unknown vertex");
    FaceMask mask = mask_of(g);
    if (!m.is_face(mask)) throw std::invalid_argument("simple generator is not a face of the base");
    gens.push_back(mask);
  }
  if (genus0) gens.push_back(0);
  for (FaceMask f : m.faces_)
    if (std::any_of(gens.begin(), gens.end(), [f](FaceMask g) { return subset_of(g, f); })) m.simple_.push_back(f);
  std::sort(m.simple_.begin(), m.simple_.end());
  return m;
}

MarkedComplex MarkedComplex::from_simple_faces(SimplicialComplex base, const std::vector<Simplex>& simple,
                                               bool genus0) {
  MarkedComplex m(std::move(base), genus0);
  for (const auto& s : simple) {
    for (Vertex v : s)
      if (v >= m.vertex_count()) throw std::invalid_argument("simple face refers to an unknown vertex");
    FaceMask mask = mask_of(s);
    if (!m.is_face(mask)) throw std::invalid_argument("simple face is not a face of the base");
    m.simple_.push_back(mask);
  }
  if (genus0) m.simple_.push_back(0);
  std::sort(m.simple_.begin(), m.simple_.end());
  m.simple_.erase(std::unique(m.simple_.begin(), m.simple_.end()), m.simple_.end());
  for (FaceMask s : m.simple_)
    for (FaceMask f : m.faces_)
      if (subset_of(s, f) && !m.is_simple(f))
        throw std::invalid_argument("simplicity is not upward closed: " + m.face_name(s) + " is simple but " +
                                    m.face_name(f) + " is not");
  return m;
}

MarkedComplex MarkedComplex::with_count_empty_remainder(bool on) const {
  MarkedComplex copy = *this;
  copy.count_empty_remainder_ = on;
  return copy;
}

bool MarkedComplex::is_face(FaceMask f) const {
  return std::binary_search(faces_.begin(), faces_.end(), f, by_size_then_mask);
}

bool MarkedComplex::is_simple(FaceMask f) const { return std::binary_search(simple_.begin(), simple_.end(), f); }

std::vector<FaceMask> MarkedComplex::minimal_simple() const {
  std::vector<FaceMask> out;
  for (FaceMask s : simple_) {
    bool minimal = std::none_of(simple_.begin(), simple_.end(),
                                [s](FaceMask t) { return t != s && subset_of(t, s); });
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), by_size_then_mask);
  return out;
}

std::string MarkedComplex::face_name(FaceMask f) const {
  if (f == 0) return "∅";
  std::string s = "{";
  bool first = true;
  for (std::size_t v = 0; v < vertex_count(); ++v)
    if (f >> v & 1) {
      s += (first ? "" : ",") + base_.vertex_ids()[v];
      first = false;
    }
  return s + "}";
}

std::string system_name(const MarkedComplex& m, const ColoredSystem& c) {
  if (c.face == 0) return "∅";
  std::string s;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    const FaceMask bit = FaceMask{1} << v;
    if (!(c.face & bit)) continue;
    if (!s.empty()) s += ',';
    s += m.base().vertex_ids()[v] + (c.red & bit ? "_r" : c.blue & bit ? "_b" : "_g");
  }
  return s;
}

bool rgb_leq(const ColoredSystem& a, const ColoredSystem& b) {
  return subset_of(a.face, b.face) && subset_of(a.red, b.red) && subset_of(a.blue, b.blue) &&
         subset_of(b.face & ~a.face, b.blue);
}

ColoredPoset ColoredPoset::subset(const ElementSet& s) const {
  ColoredPoset out;
  out.poset = std::make_shared<const Poset>(poset->induced(s));
  for (Index i : s) out.systems.push_back(systems[i]);
  return out;
}

std::optional<Index> ColoredPoset::find(const ColoredSystem& c) const {
  auto it = std::find(systems.begin(), systems.end(), c);
  if (it == systems.end()) return std::nullopt;
  return static_cast<Index>(it - systems.begin());
}

ColoredPoset build_rgb(const MarkedComplex& m) {
  std::vector<ColoredSystem> systems;
  for (FaceMask f : m.faces()) {
    if (!m.is_simple(f)) continue;
    std::vector<FaceMask> bits;
    for (std::size_t v = 0; v < m.vertex_count(); ++v)
      if (f >> v & 1) bits.push_back(FaceMask{1} << v);
    std::size_t combos = 1;
    for (std::size_t i = 0; i < bits.size(); ++i) combos *= 3;
    for (std::size_t code = 0; code < combos; ++code) {
      ColoredSystem c{f, 0, 0};
      std::size_t rest = code;
      for (FaceMask bit : bits) {
        switch (rest % 3) {
          case 0:
            c.red |= bit;
            break;
          case 2:
            c.blue |= bit;
            break;
          default:
            break;
        }
        rest /= 3;
      }
      systems.push_back(c);
    }
  }
  std::map<ColoredSystem, Index> index;
  for (Index i = 0; i < systems.size(); ++i) index.emplace(systems[i], i);

  std::vector<std::pair<Index, Index>> moves;
  for (Index i = 0; i < systems.size(); ++i) {
    const ColoredSystem& c = systems[i];
    for (std::size_t v = 0; v < m.vertex_count(); ++v) {
      const FaceMask bit = FaceMask{1} << v;
      if (!(c.face & bit)) {
        if (m.is_face(c.face | bit)) moves.emplace_back(i, index.at({c.face | bit, c.red, c.blue | bit}));
      } else if (c.green() & bit) {
        moves.emplace_back(i, index.at({c.face, c.red, c.blue | bit}));
        moves.emplace_back(i, index.at({c.face, c.red | bit, c.blue}));
      }
    }
  }
  std::vector<std::string> ids;
  for (const auto& c : systems) ids.push_back(system_name(m, c));
  ColoredPoset out;
  out.poset = std::make_shared<const Poset>(Poset::from_generators(std::move(ids), moves));
  out.systems = std::move(systems);
  return out;
}

ColoredPoset boundary_rgb(const MarkedComplex& m) { return boundary_rgb(m, build_rgb(m)); }

ColoredPoset boundary_rgb(const MarkedComplex& m, const ColoredPoset& rgb) {
  ElementSet keep;
  for (Index i = 0; i < rgb.size(); ++i)
    if (in_boundary(m, rgb.systems[i])) keep.push_back(i);
  if (!rgb.poset->is_up_closed(keep)) throw std::logic_error("∂RGB is not upward closed");
  return rgb.subset(keep);
}

ColoredPoset q1(const MarkedComplex& m) {
  require_positive_genus(m, "Q1");
  return build_rgb(m).restrict([&m](const ColoredSystem& c) { return in_q1(m, c); });
}

ColoredPoset q2(const MarkedComplex& m) {
  require_positive_genus(m, "Q2");
  return build_rgb(m).restrict([](const ColoredSystem& c) { return in_q2(c); });
}

FacePoset ns_poset(const MarkedComplex& m) {
  std::vector<FaceMask> faces;
  for (FaceMask f : m.faces())
    if (f != 0 && !m.is_simple(f)) faces.push_back(f);
  return face_poset(m, faces);
}

FacePoset simple_poset(const MarkedComplex& m) {
  std::vector<FaceMask> faces;
  for (FaceMask f : m.faces())
    if (m.is_simple(f)) faces.push_back(f);
  return face_poset(m, faces);
}

PosetMap forget_colours(const ColoredPoset& source, const FacePoset& simple) {
  std::map<FaceMask, Index> index;
  for (Index i = 0; i < simple.faces.size(); ++i) index.emplace(simple.faces[i], i);
  std::vector<Index> assignment;
  for (const auto& c : source.systems) {
    auto it = index.find(c.face);
    if (it == index.end()) throw std::invalid_argument("coloured system over a face that is not simple");
    assignment.push_back(it->second);
  }
  PosetMap f(source.poset, simple.poset, std::move(assignment));
  if (!f.is_order_preserving()) throw std::logic_error("forgetting colours is not order preserving");
  return f;
}

PosetMap forget_colours(const MarkedComplex& m) { return forget_colours(build_rgb(m), simple_poset(m)); }

const char* to_string(RecolourScope s) {
  switch (s) {
    case RecolourScope::RgbFibre:
      return "rgb-fibre";
    case RecolourScope::Q2Fibre:
      return "q2-fibre";
    case RecolourScope::Q1Q2Fibre:
      break;
  }
  return "q1q2-fibre";
}

ColoredPoset recolour_domain(const MarkedComplex& m, RecolourScope scope, FaceMask d) {
  return domain_from(m, build_rgb(m), scope, d);
}

std::vector<RecolourStep> recolour_retraction(const MarkedComplex& m, RecolourScope scope, FaceMask d) {
  return retraction_from(m, build_rgb(m), scope, d);
}

RecolourAudit audit_recolouring(const MarkedComplex& m) {
  RecolourAudit a;
  ColoredPoset rgb = build_rgb(m);
  auto run = [&](RecolourScope scope, FaceMask d) {
    ++a.fibres;
    for (const auto& step : retraction_from(m, rgb, scope, d)) {
      ++a.steps;
      switch (step.kind) {
        case MonotoneKind::Increasing: ++a.increasing; break;
        case MonotoneKind::Decreasing: ++a.decreasing; break;
        case MonotoneKind::Neither:
          a.non_monotone.push_back(std::string(to_string(scope)) + " over " + m.face_name(d) + ": " +
                                   step.description);
          break;
      }
    }
  };
  for (FaceMask d : m.faces()) {
    if (m.is_simple(d)) {
      run(RecolourScope::RgbFibre, d);
      if (!m.genus0() && d != 0) run(RecolourScope::Q2Fibre, d);
    } else if (d != 0) {
      run(RecolourScope::Q1Q2Fibre, d);
    }
  }
  return a;
}

nlohmann::json to_json(const RecolourAudit& a) {
  return {{"fibres", a.fibres},         {"steps", a.steps},
          {"increasing", a.increasing}, {"decreasing", a.decreasing},
          {"non_monotone", a.non_monotone}, {"all_monotone", a.all_monotone()}};
}

LemmaReport check_boundary_suspension(const MarkedComplex& m) {
  LemmaReport r;
  r.lemma = "boundary-suspension";
  r.claim = "H(∂RGB) = H(Σ|NS|) and H(Q1∩Q2) = H(NS)";
  if (m.genus0()) {
    r.add("positive genus", HypothesisStatus::Failed,
          "genus-0 mode: the empty system is simple, so Q1 loses the all-blue systems");
    return r;
  }
  r.add("positive genus", HypothesisStatus::Certified);

  ColoredPoset rgb = build_rgb(m);
  ColoredPoset bd = boundary_rgb(m, rgb);
  ElementSet e1, e2, both;
  for (Index i = 0; i < bd.size(); ++i) {
    const bool a = in_q1(m, bd.systems[i]), b = in_q2(bd.systems[i]);
    if (a) e1.push_back(i);
    if (b) e2.push_back(i);
    if (a && b) both.push_back(i);
  }
  const bool covers = e1.size() + e2.size() - both.size() == bd.size();
  r.add("Q1 ∪ Q2 = ∂RGB", covers ? HypothesisStatus::Certified : HypothesisStatus::Failed);
  // Q1 and Q2 are upward closed, i.e. downward closed in the opposite order
  // whose realization is the same space.
  const bool closed = bd.poset->is_up_closed(e1) && bd.poset->is_up_closed(e2);
  r.add("Q1, Q2 downward closed in ∂RGB^op", closed ? HypothesisStatus::Certified : HypothesisStatus::Failed);
  if (!r.hypotheses_certified()) return r;

  auto c1 = certify_poset(bd.poset->induced(e1));
  auto c2 = certify_poset(bd.poset->induced(e2));
  r.add("Q1 contractible", status_of(c1), c1.method);
  r.add("Q2 contractible", status_of(c2), c2.method);

  FacePoset ns = ns_poset(m);
  Hypothesis fibres{"fibres of Q1∩Q2 → NS^op retract onto contractible images", HypothesisStatus::Certified, {}};
  std::size_t steps = 0;
  for (Index i = 0; i < ns.faces.size() && fibres.status != HypothesisStatus::Failed; ++i) {
    auto seq = retraction_from(m, rgb, RecolourScope::Q1Q2Fibre, ns.faces[i]);
    steps += seq.size();
    if (std::any_of(seq.begin(), seq.end(), [](const RecolourStep& s) { return s.kind == MonotoneKind::Neither; })) {
      fibres.status = HypothesisStatus::Failed;
      fibres.detail = "non-monotone step over " + m.face_name(ns.faces[i]);
      break;
    }
    const RecolourStep& last = seq.back();
    auto cert = certify_poset(last.domain.poset->induced(last.map.image()));
    auto st = status_of(cert);
    if (st == HypothesisStatus::Failed) {
      fibres.status = HypothesisStatus::Failed;
      fibres.detail = "retract over " + m.face_name(ns.faces[i]) + " is not contractible";
    } else if (st == HypothesisStatus::Unknown && fibres.status == HypothesisStatus::Certified) {
      fibres.status = HypothesisStatus::Unknown;
      fibres.detail = "retract over " + m.face_name(ns.faces[i]) + " could not be certified";
    }
  }
  if (fibres.detail.empty()) fibres.detail = std::to_string(ns.faces.size()) + " fibres, " + std::to_string(steps) + " steps";
  r.hypotheses.push_back(fibres);

  r.details["rgb_size"] = rgb.size();
  r.details["boundary_size"] = bd.size();
  r.details["q1_size"] = e1.size();
  r.details["q2_size"] = e2.size();
  r.details["q1q2_size"] = both.size();
  r.details["ns_size"] = ns.faces.size();
  if (!r.hypotheses_certified()) return r;

  GradedHomology h_ns = poset_homology(*ns.poset);
  GradedHomology h_meet = poset_homology(bd.poset->induced(both));
  r.details["q1q2_homology"] = to_json(h_meet);
  r.details["ns_homology"] = to_json(h_ns);
  const bool meet_ok = h_meet == h_ns;
  GradedHomology lhs = poset_homology(*bd.poset);
  GradedHomology rhs = reduced_homology(suspension(order_complex(*ns.poset)));
  const bool susp_ok = lhs == rhs;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.conclude(meet_ok && susp_ok);
  return r;
}

// ---------------------------------------------------------------------------

MarkedComplex parse_marked(std::string_view text) {
  auto lines = detail::tokenize(text);
  std::vector<std::vector<std::string>> facets;
  std::vector<const detail::Line*> simple_lines;
  bool genus0 = false;
  bool ignore_empty = false;
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "simple") {
      if (t.size() == 1) throw ParseError(line.number, "'simple' needs at least one vertex; use 'genus0' for ∅");
      simple_lines.push_back(&line);
    } else if (t[0] == "genus0" && t.size() == 1) {
      genus0 = true;
    } else if (t[0] == "ignore-empty-remainder" && t.size() == 1) {
      ignore_empty = true;
    } else {
      std::set<std::string> distinct(t.begin(), t.end());
      if (distinct.size() != t.size()) throw ParseError(line.number, "facet repeats a vertex");
      if (distinct.count("∅")) throw ParseError(line.number, "'∅' cannot appear in a marked complex facet");
      facets.push_back(t);
    }
  }
  SimplicialComplex base = SimplicialComplex::from_named_faces(facets);
  MarkedComplex probe = MarkedComplex::from_generators(base, {}, false);
  std::vector<Simplex> gens;
  for (const auto* line : simple_lines) {
    Simplex g;
    for (std::size_t i = 1; i < line->tokens.size(); ++i) {
      auto v = base.find_vertex(line->tokens[i]);
      if (!v) throw ParseError(line->number, "unknown vertex '" + line->tokens[i] + "'");
      g.push_back(*v);
    }
    std::sort(g.begin(), g.end());
    if (std::adjacent_find(g.begin(), g.end()) != g.end()) throw ParseError(line->number, "repeated vertex");
    if (!probe.is_face(mask_of(g))) throw ParseError(line->number, "simple system is not a face of the complex");
    gens.push_back(std::move(g));
  }
  return MarkedComplex::from_generators(std::move(base), gens, genus0).with_count_empty_remainder(!ignore_empty);
}

std::string format_marked(const MarkedComplex& m) {
  std::ostringstream out;
  if (!m.base().empty()) out << format_complex(m.base());
  if (m.genus0()) {
    out << "genus0\n";
  } else {
    for (FaceMask f : m.minimal_simple()) {
      out << "simple";
      for (std::size_t v = 0; v < m.vertex_count(); ++v)
        if (f >> v & 1) out << ' ' << m.base().vertex_ids()[v];
      out << '\n';
    }
  }
  if (!m.count_empty_remainder()) out << "ignore-empty-remainder\n";
  return out.str();
}

}  // namespace hbtop
