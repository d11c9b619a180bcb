#include "genus2/ade.hpp"

namespace genus2 {

AdeTag AdeTag::parse(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'A' && s[0] != 'D' && s[0] != 'a' && s[0] != 'd'))
    throw input_error("ADE tag must look like A4 or D5: " + s);
  AdeTag t;
  t.family = static_cast<char>(std::toupper(s[0]));
  try {
    t.index = std::stoi(s.substr(1));
  } catch (...) {
    throw input_error("ADE tag must look like A4 or D5: " + s);
  }
  if (t.family == 'A' && t.index < 1)
    throw input_error("A_k requires k >= 1");
  if (t.family == 'D' && t.index < 4)
    throw input_error("D_k requires k >= 4");
  return t;
}

std::vector<std::vector<int>> dynkin_diagram(AdeTag tag) {
  int k = tag.index;
  std::vector<std::vector<int>> adj(k, std::vector<int>(k, 0));
  auto link = [&](int a, int b) { adj[a][b] = adj[b][a] = 1; };
  if (tag.family == 'A') {
    for (int i = 0; i + 1 < k; ++i) link(i, i + 1);
  } else {
    // Path 0-1-...-(k-3), prongs k-2 and k-1 both on vertex k-3.
    for (int i = 0; i + 1 < k - 2; ++i) link(i, i + 1);
    link(k - 3, k - 2);
    link(k - 3, k - 1);
  }
  return adj;
}

namespace {

/// Backtracking induced-subgraph embedding of pattern into host.
bool extend(const std::vector<std::vector<int>>& pat,
            const std::vector<std::vector<int>>& host, std::vector<int>& map,
            std::vector<bool>& used, size_t next) {
  if (next == pat.size()) return true;
  for (size_t h = 0; h < host.size(); ++h) {
    if (used[h]) continue;
    bool ok = true;
    for (size_t p = 0; p < next; ++p) {
      if (pat[next][p] != host[h][map[p]]) { ok = false; break; }
    }
    if (!ok) continue;
    used[h] = true;
    map[next] = static_cast<int>(h);
    if (extend(pat, host, map, used, next + 1)) return true;
    used[h] = false;
  }
  return false;
}

}  // namespace

bool ade_adjacency(AdeTag a, AdeTag b) {
  if (a.index > b.index) return false;
  auto pat = dynkin_diagram(a);
  auto host = dynkin_diagram(b);
  std::vector<int> map(pat.size(), -1);
  std::vector<bool> used(host.size(), false);
  return extend(pat, host, map, used, 0);
}

}  // namespace genus2
