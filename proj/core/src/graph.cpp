#include "genus2/graph.hpp"

#include <algorithm>
#include <sstream>

namespace genus2 {

int DecoratedGraph::add_singular_point(SingularPoint s) {
  for (int v : s.branches) check_vertex(v);
  const int m = s.type.branches;
  if (static_cast<int>(s.branches.size()) != m)
    throw input_error("singular point needs one branch slot per branch");
  switch (s.type.kind) {
    case SingularityType::Kind::Elliptic:
      if (!s.special.empty())
        throw input_error("elliptic points have no special branches");
      break;
    case SingularityType::Kind::GenusTwoI:
      if (s.special.size() != 1)
        throw input_error("type I carries exactly one singular branch");
      break;
    case SingularityType::Kind::GenusTwoII:
      if (s.special.size() != 2)
        throw input_error("type II carries exactly two twin branches");
      break;
    default:
      throw input_error("unsupported singularity tag in a graph");
  }
  for (int i : s.special)
    if (i < 0 || i >= m) throw input_error("special branch index out of range");
  sings_.push_back(std::move(s));
  return static_cast<int>(sings_.size()) - 1;
}

std::vector<int> DecoratedGraph::vertices() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(verts_.size()); ++v)
    if (verts_[v].alive) out.push_back(v);
  return out;
}

std::vector<int> DecoratedGraph::edge_ids() const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
    if (edges_[e].alive) out.push_back(e);
  return out;
}

std::vector<int> DecoratedGraph::singular_ids() const {
  std::vector<int> out;
  for (int s = 0; s < static_cast<int>(sings_.size()); ++s)
    if (sings_[s].alive) out.push_back(s);
  return out;
}

std::vector<int> DecoratedGraph::edges_at(int v) const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
    if (edges_[e].alive && (edges_[e].u == v || edges_[e].v == v))
      out.push_back(e);
  return out;
}

std::vector<std::pair<int, int>> DecoratedGraph::slots_at(int v) const {
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s < static_cast<int>(sings_.size()); ++s) {
    if (!sings_[s].alive) continue;
    for (int i = 0; i < static_cast<int>(sings_[s].branches.size()); ++i)
      if (sings_[s].branches[i] == v) out.emplace_back(s, i);
  }
  return out;
}

int DecoratedGraph::special_count(int v, bool include_aux) const {
  int n = 0;
  for (const auto& [mark, vert] : legs_) {
    if (vert != v) continue;
    if (mark == kAuxMarking && !include_aux) continue;
    ++n;
  }
  for (int e : edges_at(v)) {
    n += 1;
    if (edges_[e].u == v && edges_[e].v == v) n += 1;  // self-loop: two ends
  }
  n += static_cast<int>(slots_at(v).size());
  return n;
}

std::vector<std::string> DecoratedGraph::validate() const {
  std::vector<std::string> problems;
  auto vs = vertices();
  if (vs.empty()) problems.push_back("graph has no vertices");
  for (const auto& [mark, v] : legs_)
    if (!vertex_alive(v))
      problems.push_back("marking " + std::to_string(mark) + " on a dead vertex");
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
    if (edges_[e].alive &&
        (!vertex_alive(edges_[e].u) || !vertex_alive(edges_[e].v)))
      problems.push_back("edge " + std::to_string(e) + " touches a dead vertex");
  for (int s : singular_ids()) {
    const auto& sp = sings_[s];
    for (int v : sp.branches)
      if (!vertex_alive(v))
        problems.push_back("singular point " + std::to_string(s) +
                           " touches a dead vertex");
  }
  if (!vs.empty() && !is_connected(*this, vs))
    problems.push_back("graph is not connected");
  return problems;
}

DecoratedGraph DecoratedGraph::compacted(std::map<int, int>* vertex_map) const {
  DecoratedGraph out;
  std::map<int, int> vm;
  for (int v : vertices()) vm[v] = out.add_vertex(verts_[v].genus);
  for (int e : edge_ids()) out.add_edge(vm.at(edges_[e].u), vm.at(edges_[e].v));
  for (int s : singular_ids()) {
    SingularPoint sp = sings_[s];
    for (auto& b : sp.branches) b = vm.at(b);
    out.sings_.push_back(std::move(sp));
  }
  for (const auto& [mark, v] : legs_) out.legs_[mark] = vm.at(v);
  for (Decoration d : decorations_) {
    bool ok = true;
    for (auto& p : d.points) {
      if (p.kind == Point::Kind::Leg) {
        if (!legs_.count(p.marking)) { ok = false; break; }
        continue;
      }
      if (!vm.count(p.vertex)) { ok = false; break; }
      p.vertex = vm.at(p.vertex);
      if (p.kind == Point::Kind::Toward) {
        if (!vm.count(p.toward)) { ok = false; break; }
        p.toward = vm.at(p.toward);
      }
    }
    if (ok) out.decorations_.push_back(std::move(d));
  }
  if (vertex_map) *vertex_map = std::move(vm);
  return out;
}

DecoratedGraph DecoratedGraph::base_change(int b) const {
  if (b < 1) throw input_error("base change needs b >= 1");
  if (b == 1) return *this;
  DecoratedGraph out = *this;
  for (int e : edge_ids()) {
    int u = edges_[e].u, v = edges_[e].v;
    out.remove_edge(e);
    int prev = u;
    for (int i = 0; i + 1 < b; ++i) {
      int w = out.add_vertex(0);
      out.add_edge(prev, w);
      prev = w;
    }
    out.add_edge(prev, v);
  }
  return out;
}

int DecoratedGraph::blow_up_marking(int marking) {
  int v = leg_vertex(marking);
  int w = add_vertex(0);
  add_edge(v, w);
  move_leg(marking, w);
  return w;
}

std::string render_graph(const DecoratedGraph& g,
                         const std::map<int, long>* multiplicities) {
  std::ostringstream os;
  for (int v : g.vertices()) {
    os << "  [" << v << "] g=" << g.genus_of(v);
    if (multiplicities && multiplicities->count(v))
      os << " d=" << multiplicities->at(v);
    std::vector<std::string> notes;
    for (const auto& [mark, vert] : g.legs())
      if (vert == v)
        notes.push_back(mark == kAuxMarking ? std::string("p1-bar")
                                            : "p" + std::to_string(mark));
    for (int e : g.edges_at(v)) {
      const auto& ed = g.edge(e);
      int other = ed.u == v ? ed.v : ed.u;
      if (ed.u == v && ed.v == v)
        notes.push_back("self-node");
      else if (other >= v)
        notes.push_back("node->" + std::to_string(other));
    }
    for (auto [s, slot] : g.slots_at(v)) {
      const auto& sp = g.singular(s);
      std::string t = sp.type.str() + "#" + std::to_string(s) + ".b" +
                      std::to_string(slot);
      if (std::find(sp.special.begin(), sp.special.end(), slot) !=
          sp.special.end())
        t += "*";
      if (sp.dangling) t += " dangling";
      notes.push_back(t);
    }
    if (!notes.empty()) {
      os << "  --";
      for (const auto& n : notes) os << " " << n;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace genus2
