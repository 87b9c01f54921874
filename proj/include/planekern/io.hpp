#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planekern/plane_graph.hpp"

namespace pk {

// A plane graph plus the optional annotations of the text format. Vertex
// lists hold dense indices into g.
struct Instance {
  PlaneGraph g;
  std::optional<std::vector<int>> partA;
  std::optional<std::vector<int>> terminals;
  std::optional<int> k;
  std::optional<std::vector<int>> forbidden;
  bool embedded_from_edge_list = false;
};

// "plangraph v1":
//   plangraph v1
//   v <id>
//   e <id> <u-id> <v-id>
//   rot <v-id> <edge-id> ...      counter-clockwise; a loop is not allowed
//   outer <edge-id> <+|->         one per component with edges; + is u->v
//   partA <v-id> ...
//   terminals <v-id> ...
//   param k <int>
//   forbidden <v-id> ...
// Lines starting with '#' and blank lines are ignored. Input that does not
// start with the header is read as an edge list ("u v" per line, or DIMACS
// "p edge n m" / "e u v") and embedded.
Instance parse_instance(const std::string& text);
Instance read_instance_file(const std::string& path);
std::string serialize_instance(const Instance& inst);
void write_file(const std::string& path, const std::string& text);

}  // namespace pk
