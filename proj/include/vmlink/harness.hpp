#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vmlink/graph.hpp"
#include "vmlink/linking.hpp"
#include "vmlink/rng.hpp"
#include "vmlink/violation.hpp"

namespace vmlink {

// All 2^(n(n-1)/2) labeled simple graphs on n vertices, in lexicographic
// edge-mask order (graph6 bit order). n <= 9.
class GraphEnumerator {
 public:
  explicit GraphEnumerator(int n);
  std::uint64_t total() const { return total_; }
  Graph at(std::uint64_t index) const;
  std::optional<Graph> next();  // streams from index 0

 private:
  int n_;
  std::uint64_t total_;
  std::uint64_t cursor_ = 0;
};

// G(n, p) with deterministic per-index seeding: graph i of a run depends
// only on (seed, i), so sweeps parallelize without losing reproducibility.
Graph random_graph(int n, double edge_prob, Rng& rng);

struct SweepSpec {
  struct Exhaustive { int n; };
  struct Random {
    int n;
    double edge_prob;
    std::uint64_t count;
  };
  struct FromFile { std::string path; };

  std::variant<Exhaustive, Random, FromFile> generator;
  std::string property;
  std::uint64_t seed = 0;
  // Per-graph cap on parameter tuples; when a property's tuple space is
  // larger, tuples are sampled uniformly from the per-graph seed stream.
  std::uint64_t tuple_cap = 256;
  int threads = 1;  // 0 = hardware concurrency

  std::string generator_desc() const;
};

struct SweepReport {
  std::string property;
  std::string generator_desc;
  std::uint64_t seed = 0;
  std::uint64_t tuple_cap = 0;
  std::uint64_t graphs = 0;
  std::uint64_t checked = 0;  // parameter tuples actually verified
  std::vector<ViolationReport> violations;
  double wall_seconds = 0;  // informational; not part of body()

  bool passed() const { return violations.empty(); }
  // Deterministic serialized form: one JSON line per violation (sorted by
  // graph index and in-graph sequence) plus a summary line. Identical specs
  // and seeds produce byte-identical bodies regardless of thread count.
  std::string body() const;
};

// Property ids runnable by run_sweep, one per verified lemma/theorem.
std::vector<std::string> known_properties();

SweepReport run_sweep(const SweepSpec& spec);

// Randomized search for linking instances with kappa(Q,R)=k, kappa(S,T)=l
// and |F| below the two-pair bound on which no doubly-good vertex exists.
// Records the largest failing |F| seen: an empirical floor for any sharper
// threshold.
struct TightnessSpec {
  int k = 0;
  int ell = 0;
  std::uint64_t budget = 1000;  // instances attempted per |F| value
  std::uint64_t seed = 0;
};

struct TightnessWitness {
  int f_size = 0;
  std::string instance;  // graph6
  VertexSet q, r, s, t;
};

struct TightnessReport {
  TightnessSpec spec;
  std::uint64_t bound = 0;
  std::uint64_t instances_tested = 0;
  std::uint64_t failures = 0;
  int max_failing_f = -1;  // -1: none found
  std::vector<TightnessWitness> witnesses;  // first witness per |F|

  std::string body() const;
};

TightnessReport tightness_search(const TightnessSpec& spec);

// Rejection-samples an instance with the exact connectivities and exact
// free-set size, planting disconnections when a zero target asks for them.
// nullopt when max_tries random draws all miss.
std::optional<LinkingInstance> sample_instance(Rng& rng, int k, int ell, int f_size,
                                               int max_tries = 20000);

}  // namespace vmlink
