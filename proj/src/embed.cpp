#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>
#include <boost/property_map/property_map.hpp>
#include <set>

#include "planekern/plane_graph.hpp"

namespace pk {

namespace {

using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                     boost::property<boost::vertex_index_t, int>,
                                     boost::property<boost::edge_index_t, int>>;
using BEdge = boost::graph_traits<BGraph>::edge_descriptor;

void check_simple(int n, const std::vector<std::pair<int, int>>& edges) {
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw GraphError("embed: endpoint out of range");
    if (a == b) throw GraphError("embed: self-loop in input");
    if (!seen.insert(std::minmax(a, b)).second) throw GraphError("embed: parallel edge in input");
  }
}

BGraph to_boost(int n, const std::vector<std::pair<int, int>>& edges) {
  BGraph bg(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [e, ok] = boost::add_edge(edges[i].first, edges[i].second, bg);
    (void)ok;
    boost::put(boost::edge_index, bg, e, static_cast<int>(i));
  }
  return bg;
}

}  // namespace

bool is_planar(int n, const std::vector<std::pair<int, int>>& edges) {
  std::set<std::pair<int, int>> uniq;
  std::vector<std::pair<int, int>> simple;
  for (auto [a, b] : edges)
    if (a != b && uniq.insert(std::minmax(a, b)).second) simple.push_back({a, b});
  BGraph bg = to_boost(n, simple);
  return boost::boyer_myrvold_planarity_test(bg);
}

std::optional<PlaneGraph> embed(int n, const std::vector<std::pair<int, int>>& edges,
                                const std::vector<Id>* vids, const std::vector<Id>* eids) {
  check_simple(n, edges);
  BGraph bg = to_boost(n, edges);
  std::vector<std::vector<BEdge>> emb(n);
  auto pmap = boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg));
  if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                           boost::boyer_myrvold_params::embedding = pmap))
    return std::nullopt;
  std::vector<Id> vv(n);
  for (int v = 0; v < n; ++v) vv[v] = vids ? (*vids)[v] : v;
  std::vector<EdgeInput> ein;
  for (std::size_t i = 0; i < edges.size(); ++i)
    ein.push_back({edges[i].first, edges[i].second, eids ? (*eids)[i] : static_cast<Id>(i)});
  std::vector<std::vector<int>> rot(n);
  for (int v = 0; v < n; ++v)
    for (const BEdge& be : emb[v]) {
      int e = boost::get(boost::edge_index, bg, be);
      rot[v].push_back(ein[e].u == v ? 2 * e : 2 * e + 1);
    }
  // build_plane re-validates the rotation system through Euler counts.
  return build_plane(vv, ein, rot, -1);
}

}  // namespace pk
