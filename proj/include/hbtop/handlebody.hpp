#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hbtop/homology.hpp"

namespace hbtop {

/// Genus g handlebody with b marked boundary discs and p marked boundary
/// points. Valid when 2g - 2 + b + p > 0.
struct HandlebodySignature {
  int g = 0;
  int b = 0;
  int p = 0;

  bool valid() const { return g >= 0 && b >= 0 && p >= 0 && 2 * g - 2 + b + p > 0; }
  std::string to_string() const;
  bool operator==(const HandlebodySignature&) const = default;
};

/// Virtual cohomological dimension d(g,b,p) of the handlebody group.
/// Throws std::invalid_argument for an invalid signature.
int vcd(const HandlebodySignature& sig);

/// Dimension ν(g,b,p) of the non-simple disc complex's spherical homology.
/// Throws std::invalid_argument when g = 0 or the signature is invalid.
int nu(const HandlebodySignature& sig);

/// Dimension 6g - 6 + 3b + 2p of the ambient contractible complex.
int ambient_dimension(const HandlebodySignature& sig);

/// One exact integer identity lhs = rhs, or a skipped comparison.
struct IdentityCheck {
  enum class Status { Holds, Fails, Skipped };
  std::string name;
  Status status = Status::Skipped;
  long long lhs = 0;
  long long rhs = 0;
  std::string detail;
};
std::string to_string(IdentityCheck::Status s);

struct IdentityReport {
  std::string subject;
  std::vector<IdentityCheck> checks;
  /// No check fails (skipped checks are fine).
  bool ok() const;
};

/// ambient_dimension - vcd - 2 = ν. Throws when g = 0.
IdentityReport duality_bookkeeping(const HandlebodySignature& sig);

/// d(g,b,p) = d(g,b-1,p+1) + 1 for b >= 1 and d(g,b,p) = d(g,b,p-1) + cd
/// for p >= 1, where cd = 2 for (g,0,1) with g >= 1 and 1 otherwise.
/// Comparisons against invalid signatures are skipped.
IdentityReport birman_identities(const HandlebodySignature& sig);

/// Symbolic wedge of q-spheres. The count is Zero (contractible), a known
/// positive number, or Some (unspecified, at least one). q = -1 with Some
/// is the empty complex.
struct WedgeOfSpheres {
  enum class Count { Zero, Finite, Some };
  int q = -1;
  Count count = Count::Some;
  std::size_t n = 0;

  static WedgeOfSpheres empty() { return {-1, Count::Some, 0}; }
  static WedgeOfSpheres some(int q) { return {q, Count::Some, 0}; }
  static WedgeOfSpheres finite(int q, std::size_t n);
  static WedgeOfSpheres contractible(int q) { return {q, Count::Zero, 0}; }

  WedgeOfSpheres suspend(int times = 1) const;
  /// Reduced homology; throws std::logic_error for a Some count.
  GradedHomology homology() const;
  std::string to_string() const;
  bool operator==(const WedgeOfSpheres&) const = default;
};

WedgeOfSpheres join(const WedgeOfSpheres& x, const WedgeOfSpheres& y);

struct PositivePiece {
  int genus = 1;
  int spots = 1;
  bool operator==(const PositivePiece&) const = default;
};

/// A disc system cutting a closed genus-g handlebody into positive-genus
/// pieces and genus-zero pieces. Dual graph vertices are numbered with the
/// positive pieces first, then the zero pieces; each edge is one disc.
struct CutData {
  std::vector<PositivePiece> positive;
  std::vector<int> zero;
  std::vector<std::pair<int, int>> edges;

  std::size_t s() const { return positive.size(); }
  std::size_t t() const { return zero.size(); }
  std::size_t k() const { return edges.size(); }
  bool operator==(const CutData&) const = default;
};

struct CutReport {
  std::vector<IdentityCheck> checks;
  bool valid() const;
  /// Names of the failing checks.
  std::vector<std::string> failures() const;
};

CutReport validate_cut_data(const CutData& c, int g);

/// Symbolic type of the link of the disc system: the join of the pieces'
/// non-simple complexes, suspended s-1 times, then joined with the disc
/// complexes of the zero pieces. Throws std::invalid_argument for invalid
/// data and std::logic_error if the dimension is not 2g - 4 - t.
WedgeOfSpheres link_type(const CutData& c, int g);

/// Symbolic type of the non-simple disc complex for g > 0.
WedgeOfSpheres ns_type(const HandlebodySignature& sig);

inline constexpr int kMaxCutGenus = 5;
inline constexpr int kMaxCutDiscs = 6;

/// Every valid cut datum with 1 <= k <= k_max discs, one per isomorphism
/// class of labelled dual multigraph, in a fixed order. Throws
/// std::invalid_argument outside 1 <= g <= 5, 1 <= k_max <= 6.
std::vector<CutData> enumerate_cut_data(int g, int k_max);

nlohmann::json to_json(const HandlebodySignature& sig);
nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const CutReport& r);
nlohmann::json to_json(const WedgeOfSpheres& w);
nlohmann::json to_json(const CutData& c);

}  // namespace hbtop
