#pragma once

#include "genus2/graph.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace genus2 {

enum class TailType { I, II };

/// Divisor multiplicities d_A indexed by component.
struct MultiDegree {
  std::map<int, long> d;
};

/// A required relation kappa * K_v + sum coeff * point ~ 0 in the Picard
/// group of the component v; kappa is nonzero only on genus-two components.
struct PicardPredicate {
  int vertex = -1;
  int canonical_mult = 0;
  std::vector<std::pair<Point, int>> terms;
};

struct BalancingProblem {
  const DecoratedGraph* graph = nullptr;
  Subcurve z;                       // connected, unmarked, nodal
  std::set<int> special_edges;      // boundary edges playing the special role
  TailType type = TailType::I;
};

struct BalancingResult {
  bool feasible = false;
  MultiDegree degrees;
  std::vector<PicardPredicate> predicates;
  int witness_vertex = -1;
  std::string witness;
};

/// Solves the degree-zero system for omega(D) on the contracted subcurve:
/// for each component A of Z,
///   (2 g_A + 2 loops_A - 2 + v_A) + sum_B d_B e(A,B) - d_A v_A = 0,
/// then checks integrality, positivity, and the boundary pins (3/1 for type
/// I, 2/1 for type II). Picard predicates at positive-genus components are
/// returned for the caller to match against decorations.
BalancingResult solve_balancing(const BalancingProblem& problem);

/// Matches a predicate against the graph decorations (and the graph-forced
/// situations recognised by weierstrass_status).
bool predicate_matched(const DecoratedGraph& g, const PicardPredicate& p);

/// dist*: edges weigh 1 exactly when they sit on a path from a special
/// component to a stable non-special component through strictly semistable
/// non-special ones; the distance is the minimum path weight.
int weighted_core_distance(const DecoratedGraph& g, const Subcurve& core,
                           const std::set<int>& special_components, int a,
                           int b);

/// Combinatorial description of a semistable tail: core, special chain
/// length, and the attachment pattern of the axis chains.
struct TailConfig {
  TailType type = TailType::I;
  DecoratedGraph core;              // standalone core
  std::vector<int> special_attach;  // core vertices; 1 entry (I) or 2 (II)
  int k = 0;                        // length of the special chain(s)
  int trunk = 0;  // type II with both chains on one tree: shared trunk length
  struct Axis {
    bool on_special_tree = false;
    int core_attach = -1;   // when attached directly to the core
    int which_special = 0;  // which special tree it branches from
    int depth = 0;          // branch depth j >= 1 along that tree
  };
  std::vector<Axis> axes;
};

/// The closed-form chain lengths (inclusive of any shared prefix) forced by
/// the balancing equations, one entry per axis.
std::vector<int> expected_chain_lengths(const TailConfig& config);

/// Builds the semistable tail graph realising the config: core + chains,
/// with one 2-marked outside vertex per boundary branch and marking 1
/// (and the auxiliary conjugate leg for type II) beyond the special
/// chain(s). Returns the graph and the contracted subcurve.
struct SynthesizedTail {
  DecoratedGraph graph;
  Subcurve z;
  std::set<int> special_edges;
  std::vector<std::vector<int>> axis_chain_vertices;  // per axis, core-outward
  std::vector<std::vector<int>> special_chain_vertices;
};
SynthesizedTail synthesize_tail(const TailConfig& config);

/// The contractibility certificate: balancing is feasible, every returned
/// predicate is matched by the decorations, and the chain lengths agree
/// with the closed forms.
bool verify_tail_shape(const DecoratedGraph& g, const Subcurve& z,
                       TailType type, std::string* why = nullptr);

}  // namespace genus2
