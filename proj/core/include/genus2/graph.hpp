#pragma once

#include "genus2/singularity.hpp"
#include "genus2/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace genus2 {

/// A point on a component of the curve, for decorations and predicates.
/// - Leg: the marked point with the given marking index.
/// - Toward: the attachment point on `vertex` of the subcurve in the
///   direction of `toward` (resolved to the first edge of a shortest path).
/// - OnVertex: an otherwise unnamed point of the component.
struct Point {
  enum class Kind { Leg, Toward, OnVertex };
  Kind kind = Kind::OnVertex;
  int vertex = -1;
  int toward = -1;
  int marking = -1;

  static Point leg(int marking) { return {Kind::Leg, -1, -1, marking}; }
  static Point towards(int vertex, int toward) {
    return {Kind::Toward, vertex, toward, -1};
  }
  static Point on(int vertex) { return {Kind::OnVertex, vertex, -1, -1}; }
  bool operator==(const Point&) const = default;
};

/// Symbolic input assertions about special points; the engine checks
/// graph-forced cases itself and consults these for the rest.
struct Decoration {
  enum class Kind { Weierstrass, Conjugate, Torsion };
  Kind kind = Kind::Weierstrass;
  std::vector<Point> points;
  int order = 0;  // torsion order
  bool operator==(const Decoration&) const = default;
};

/// Marking index reserved for the auxiliary conjugate section; it never
/// counts towards levels or stability.
inline constexpr int kAuxMarking = 0;

/// Dual graph of a pointed curve: genus-weighted vertices, nodes as edges
/// (self-loops allowed, parallel edges allowed), worse singularities as
/// hyperedges with designated special branches, markings as legs.
class DecoratedGraph {
 public:
  struct VertexData {
    int genus = 0;
    bool alive = true;
  };
  struct Edge {
    int u = -1, v = -1;
    bool alive = true;
  };
  struct SingularPoint {
    SingularityType type;
    std::vector<int> branches;  // vertex carrying each branch slot
    std::vector<int> special;   // indices into branches
    bool dangling = false;
    bool atom = false;
    bool alive = true;
  };

  int add_vertex(int genus) {
    verts_.push_back({genus, true});
    return static_cast<int>(verts_.size()) - 1;
  }
  int add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    edges_.push_back({u, v, true});
    return static_cast<int>(edges_.size()) - 1;
  }
  void add_leg(int marking, int v) {
    check_vertex(v);
    if (legs_.count(marking))
      throw input_error("duplicate marking " + std::to_string(marking));
    legs_[marking] = v;
  }
  int add_singular_point(SingularPoint s);

  void remove_vertex(int v) { verts_.at(v).alive = false; }
  void remove_edge(int e) { edges_.at(e).alive = false; }
  void remove_singular_point(int s) { sings_.at(s).alive = false; }
  void remove_leg(int marking) { legs_.erase(marking); }
  void move_leg(int marking, int v) {
    check_vertex(v);
    legs_.at(marking) = v;
  }

  int genus_of(int v) const { return verts_.at(v).genus; }
  bool vertex_alive(int v) const {
    return v >= 0 && v < static_cast<int>(verts_.size()) && verts_[v].alive;
  }
  std::vector<int> vertices() const;
  std::vector<int> edge_ids() const;
  std::vector<int> singular_ids() const;
  const Edge& edge(int e) const { return edges_.at(e); }
  const SingularPoint& singular(int s) const { return sings_.at(s); }
  SingularPoint& singular_mut(int s) { return sings_.at(s); }
  const std::map<int, int>& legs() const { return legs_; }
  int leg_vertex(int marking) const { return legs_.at(marking); }
  bool has_leg(int marking) const { return legs_.count(marking) > 0; }

  int vertex_storage_size() const { return static_cast<int>(verts_.size()); }

  std::vector<Decoration>& decorations() { return decorations_; }
  const std::vector<Decoration>& decorations() const { return decorations_; }

  /// Edges incident to v (self-loops listed once).
  std::vector<int> edges_at(int v) const;
  /// Branch slots (singular id, slot index) on v.
  std::vector<std::pair<int, int>> slots_at(int v) const;

  /// Number of special points on the component v: legs + edge ends
  /// (self-loops twice) + hyperedge slots. The auxiliary marking counts
  /// only when include_aux is set.
  int special_count(int v, bool include_aux = false) const;

  /// Validates the structural invariants and returns a list of problems.
  std::vector<std::string> validate() const;

  /// Compact isomorphic copy without tombstones; old vertex id -> new id
  /// returned through the optional map.
  DecoratedGraph compacted(std::map<int, int>* vertex_map = nullptr) const;

  // --- model surgeries -----------------------------------------------

  /// Subdivides every edge into b segments by inserting b-1 rational
  /// vertices (the dual-graph effect of a degree-b base change on a
  /// regular model).
  DecoratedGraph base_change(int b) const;

  /// Inserts a rational vertex carrying the leg, joined to its old
  /// position by one edge; returns the new vertex id.
  int blow_up_marking(int marking);

  bool operator==(const DecoratedGraph&) const = default;

 private:
  void check_vertex(int v) const {
    if (!vertex_alive(v)) throw input_error("bad vertex id");
  }

  std::vector<VertexData> verts_;
  std::vector<Edge> edges_;
  std::vector<SingularPoint> sings_;
  std::map<int, int> legs_;
  std::vector<Decoration> decorations_;
};

/// Vertex subsets standing for subcurves.
using Subcurve = std::vector<int>;

// --- queries (graph_queries.cpp) -------------------------------------

struct LevelInfo {
  int nodal_boundary = 0;
  int markings = 0;
  int hyperedge_boundary = 0;  // inside slots of partial hyperedges
  bool nodally_attached = true;
  int level() const { return nodal_boundary + markings; }
};

bool is_connected(const DecoratedGraph& g, const Subcurve& s);
/// Connected components of the induced subcurve (glued through hyperedges
/// as well as nodes).
std::vector<Subcurve> components(const DecoratedGraph& g, const Subcurve& s);

/// Arithmetic genus of a connected subcurve.
int arithmetic_genus(const DecoratedGraph& g, const Subcurve& s);
int arithmetic_genus(const DecoratedGraph& g);

LevelInfo level(const DecoratedGraph& g, const Subcurve& s);
bool is_nodally_attached(const DecoratedGraph& g, const Subcurve& s);

/// Minimal connected subcurve of arithmetic genus two.
Subcurve core(const DecoratedGraph& g);

/// Minimal connected subcurves of arithmetic genus one (elliptic vertices,
/// minimal rings, full elliptic hyperedges).
std::vector<Subcurve> minimal_genus_one_subcurves(const DecoratedGraph& g);

bool is_rDM(const DecoratedGraph& g);

/// True if the point (a leg or an attachment) is connected to the target
/// vertex through rational components with exactly two special points.
bool cleaves_to(const DecoratedGraph& g, const Point& p, int target_vertex);

/// The six shapes of a minimal Gorenstein curve of arithmetic genus two.
enum class MinimalGenusTwoCase {
  SmoothGenusTwo = 1,      // one vertex of genus two
  TwoGenusOneCores = 2,    // E1 - rational chain - E2
  GenusOneWithChain = 3,   // E glued to a rational chain at two nodes
  TwoRationalsThreeChains = 4,
  EllipticMFold = 5,       // self-branched or genus-one-branched l-fold
  GenusTwoSingularity = 6,
};
MinimalGenusTwoCase classify_minimal_genus2(const DecoratedGraph& g,
                                            const Subcurve& s);

enum class WeierstrassStatus { Always, Never, Conditional };
struct WeierstrassAnswer {
  WeierstrassStatus status = WeierstrassStatus::Conditional;
  /// For Conditional: the divisor relation sum coeff * point ~ 0 required
  /// in the Picard group of the carrying component, when expressible.
  std::optional<Decoration> predicate;
};
WeierstrassAnswer weierstrass_status(const DecoratedGraph& g, const Point& p);

/// Decoration-aware isomorphism (markings must match by label).
bool isomorphic(const DecoratedGraph& a, const DecoratedGraph& b);

/// Deterministic structural fingerprint: equal for isomorphic graphs.
std::string graph_fingerprint(const DecoratedGraph& g);

/// Renders a small text diagram of the graph (for reports).
std::string render_graph(const DecoratedGraph& g,
                         const std::map<int, long>* multiplicities = nullptr);

}  // namespace genus2
