#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hbtop/lemmas.hpp"
#include "hbtop/poset.hpp"
#include "hbtop/rgb.hpp"

namespace hbtop::cli {

using Rng = std::mt19937_64;

/// Seed of instance `index` in a run seeded with `seed` (splitmix64).
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index);

/// Lemma ids accepted by the suite, in a fixed order.
const std::vector<std::string>& lemma_ids();
bool is_lemma_id(const std::string& id);

/// Random poset on n elements: each pair i < j is a generating relation
/// with the given probability.
Poset random_poset(Rng& rng, int n, double density);

/// Random poset grown from a small random core by attaching beat points,
/// which leaves the homotopy type of the core unchanged.
Poset random_grown_poset(Rng& rng, int core, int extra);

/// Random complex on `vertices` vertices with up to `facets` facets of at
/// most `max_dim`.
SimplicialComplex random_complex(Rng& rng, int vertices, int facets, int max_dim);

/// Random marked complex on at most `max_vertices` base vertices, with at
/// least one simple face; `family` receives the construction used.
MarkedComplex random_marked_complex(Rng& rng, int max_vertices, std::string* family = nullptr);

/// X = order complex of P, each chain labelled by its maximum.
Stratification chain_max_stratification(const Poset& p);
/// K over its face poset, each face labelled by itself.
Stratification face_stratification(const SimplicialComplex& k);

/// One instance of the given lemma, generated from `seed` and checked. The
/// generators favour instances whose hypotheses can be certified but also
/// emit some that fail them.
LemmaReport run_lemma_instance(const std::string& lemma, std::uint64_t seed);

/// Boundary-suspension report for a marked complex with the recolouring
/// audit attached under `details.recolouring`.
LemmaReport check_marked(const MarkedComplex& m);

}  // namespace hbtop::cli
