#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pk {

using Id = std::int64_t;

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plane multigraph stored as a rotation system.
//
// Vertices and edges are dense indices; vid/eid hold identifiers that stay
// stable across surgery. Edge e owns half-edges 2e (eu -> ev) and 2e+1.
// nxt/prv give the counter-clockwise / clockwise successor around the origin.
// The face of a half-edge is the face on its left; walking a face means
// h -> fnext(h).
//
// Disconnected graphs are allowed. A face may then be bounded by several
// half-edge cycles (one per component touching it) and may contain isolated
// vertices; cycle_face records which face each cycle belongs to.
struct PlaneGraph {
  std::vector<Id> vid;
  std::vector<Id> eid;
  std::vector<int> org;
  std::vector<int> nxt;
  std::vector<int> prv;
  std::vector<int> vhe;  // some half-edge leaving v, -1 when isolated

  std::vector<int> hface;
  std::vector<int> iso_face;  // face holding v when v is isolated, else -1
  std::vector<std::vector<int>> cycles;
  std::vector<int> cycle_face;
  int nfaces = 0;
  int outer = -1;

  int n() const { return static_cast<int>(vid.size()); }
  int m() const { return static_cast<int>(eid.size()); }
  static int twin(int h) { return h ^ 1; }
  int head(int h) const { return org[h ^ 1]; }
  int fnext(int h) const { return prv[h ^ 1]; }
  int eu(int e) const { return org[2 * e]; }
  int ev(int e) const { return org[2 * e + 1]; }
  int degree(int v) const;
  // Half-edges leaving v in counter-clockwise order, starting at vhe[v].
  std::vector<int> rotation(int v) const;
  std::vector<int> neighbors(int v) const;
  // Vertices appearing on face f (each once, ascending).
  std::vector<int> face_vertices(int f) const;
  // Number of edge traversals of the face walk; bridges count twice.
  int face_length(int f) const;
  std::vector<std::vector<int>> adjacency() const;  // simple, deduplicated
  int vertex_index(Id id) const;                      // -1 when absent
  int edge_index(Id id) const;
  Id max_vid() const;
  Id max_eid() const;
};

// One closed walk per boundary component of the face.
struct FaceWalk {
  int face = -1;
  std::vector<std::vector<int>> walks;  // vertex sequences, cyclic
  std::vector<std::vector<int>> half_edges;
  int length = 0;
};

struct EdgeInput {
  int u, v;
  Id id;
};

// Build from an explicit rotation system. rot[v] lists half-edges leaving v in
// counter-clockwise order (half-edge 2e leaves edges[e].u). outer_he selects
// the outer face (-1: longest walk). Components are placed side by side.
PlaneGraph build_plane(const std::vector<Id>& vids, const std::vector<EdgeInput>& edges,
                       const std::vector<std::vector<int>>& rot, int outer_he = -1);
PlaneGraph build_plane(const std::vector<Id>& vids, const std::vector<EdgeInput>& edges,
                       const std::vector<std::vector<int>>& rot, const std::vector<int>& outer_hes);

// One half-edge per component on the outer face (smallest index first).
std::vector<int> outer_half_edges(const PlaneGraph& g);

// Re-derive the face structure of a connected or side-by-side graph from its
// rotation system. Each listed half-edge fixes the outer cycle of its
// component; other components use their longest cycle.
void assign_faces(PlaneGraph& g, const std::vector<int>& outer_hes);
inline void assign_faces(PlaneGraph& g, int outer_he) {
  assign_faces(g, outer_he >= 0 ? std::vector<int>{outer_he} : std::vector<int>{});
}

// Empty string when every structural invariant holds, otherwise a description.
std::string check_plane(const PlaneGraph& g);

// Euler characteristic check per component plus face sums; thrown on failure.
void require_plane(const PlaneGraph& g, const char* where);

bool is_connected(const PlaneGraph& g);
std::vector<int> components(const PlaneGraph& g, int* count);

// Planar embedding of a simple abstract graph; nullopt if it is not planar.
std::optional<PlaneGraph> embed(int n, const std::vector<std::pair<int, int>>& edges,
                                const std::vector<Id>* vids = nullptr,
                                const std::vector<Id>* eids = nullptr);
bool is_planar(int n, const std::vector<std::pair<int, int>>& edges);

FaceWalk boundary_walk(const PlaneGraph& g, int f);

// Largest face by walk length, ties to the lowest index.
int longest_face(const PlaneGraph& g);
PlaneGraph with_outer_face(const PlaneGraph& g, int f);

// Radial and overlay graphs. Vertices 0..n-1 are the original vertices, vertex
// n+f stands for face f. Radial edge ids start above g.max_eid().
struct Overlay {
  PlaneGraph graph;
  int n_orig = 0;
  std::vector<int> corner_he;  // per overlay edge: source half-edge of the corner, -1 for original edges
  std::vector<int> orig_edge;  // per overlay edge: original edge index or -1
  bool is_face(int v) const { return v >= n_orig; }
};
Overlay radial_graph(const PlaneGraph& g);
Overlay overlay_graph(const PlaneGraph& g);

// Minimum number of face hops between u and v; -1 when unreachable.
int radial_distance(const PlaneGraph& g, int u, int v);
std::vector<int> radial_distances(const PlaneGraph& g, int src);

// Outerplanarity layers (1-based index per vertex).
std::vector<int> outerplanarity_layers(const PlaneGraph& g);

struct LayerTree {
  std::vector<int> parent;                // -1 for the root
  std::vector<std::vector<int>> children;
  std::vector<std::vector<int>> kappa;    // node -> vertices
  std::vector<int> idx;                   // node -> layer index (1-based)
  std::vector<int> node_of;               // vertex -> node
  std::vector<std::pair<int, int>> edges; // contracted graph edges (simple)
  int root = -1;
  int size() const { return static_cast<int>(kappa.size()); }
};
LayerTree layer_tree(const PlaneGraph& g);

// Cut g open along the tree whose edge indices are given.
struct CutOpen {
  PlaneGraph opened;
  std::vector<int> vmap;  // opened vertex -> source vertex
  std::vector<int> emap;  // opened edge -> source edge
  std::vector<int> boundary;  // opened vertices on the outer cycle, in walk order
};
CutOpen cut_open(const PlaneGraph& g, const std::vector<int>& tree_edges);

// Surgery. Result maps: new index -> old index (vertices, edges).
struct Surgery {
  PlaneGraph graph;
  std::vector<int> vmap;
  std::vector<int> emap;
  std::vector<int> fmap;  // old face -> new face containing it
};
// Induced subgraph on the vertices not in `removed`; faces merge as in the plane.
Surgery remove_vertices(const PlaneGraph& g, const std::vector<int>& removed);
Surgery remove_edges(const PlaneGraph& g, const std::vector<int>& removed);
// Contract the given edges; loops and parallel edges are discarded. vmap maps
// each new vertex to one representative; group gives old vertex -> new vertex.
struct Contraction {
  PlaneGraph graph;
  std::vector<int> group;
  std::vector<std::vector<int>> members;
  std::vector<int> emap;
  std::vector<int> fmap;
};
Contraction contract_edges(const PlaneGraph& g, const std::vector<int>& edges);
// Subgraph formed by the kept edges; vertices left isolated are dropped.
Surgery keep_edges(const PlaneGraph& g, const std::vector<char>& keep);
// Drop parallel copies (keeps the lowest-index edge of every bundle).
Surgery simplify(const PlaneGraph& g);
// Insert a fresh degree-2 vertex on edge e; the new vertex is index n.
PlaneGraph subdivide_edge(const PlaneGraph& g, int e, Id new_vid = -1, Id new_eid = -1);
// Replace each listed edge (index, c) by a path through c fresh vertices.
// Existing indices are kept; edge e becomes the piece at eu(e). New vertices
// and edges are appended with ids above the current maxima.
struct Subdivision {
  PlaneGraph graph;
  std::vector<int> origin;  // new edge -> edge of the input it lies on
};
Subdivision subdivide_edges(const PlaneGraph& g, const std::vector<std::pair<int, int>>& counts);

// Shared helper for surgery: finalize a graph whose half-edges inherit faces
// from `old`. old_he[h] is the half-edge of `old` whose left side h inherits;
// face_root maps faces of `old` to merged classes. old_iso[v] gives an old
// face for vertices that end up isolated. Returns old face -> new face.
std::vector<int> inherit_faces(PlaneGraph& g, const PlaneGraph& old, const std::vector<int>& old_he,
                   const std::vector<int>& face_root, const std::vector<int>& old_iso);

}  // namespace pk
