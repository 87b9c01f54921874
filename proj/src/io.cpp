#include "planekern/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace pk {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw GraphError("line " + std::to_string(line) + ": " + msg);
}

Id to_id(const std::string& tok, int line) {
  try {
    std::size_t pos = 0;
    long long x = std::stoll(tok, &pos);
    if (pos != tok.size()) fail(line, "bad integer '" + tok + "'");
    return x;
  } catch (const std::logic_error&) {
    fail(line, "bad integer '" + tok + "'");
  }
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

bool skip_line(const std::vector<std::string>& tok) { return tok.empty() || tok[0][0] == '#'; }

Instance parse_edge_list(const std::vector<std::string>& lines) {
  std::set<Id> ids;
  std::vector<std::pair<Id, Id>> raw;
  std::vector<int> raw_line;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    int ln = static_cast<int>(i) + 1;
    auto tok = split(lines[i]);
    if (skip_line(tok) || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (tok.size() != 4) fail(ln, "expected 'p edge <n> <m>'");
      Id n = to_id(tok[2], ln);
      for (Id v = 1; v <= n; ++v) ids.insert(v);
      continue;
    }
    if (tok[0] == "e") tok.erase(tok.begin());
    if (tok.size() != 2) fail(ln, "expected an edge 'u v'");
    Id a = to_id(tok[0], ln), b = to_id(tok[1], ln);
    if (a == b) fail(ln, "self-loop");
    ids.insert(a);
    ids.insert(b);
    raw.push_back({a, b});
    raw_line.push_back(ln);
  }
  std::vector<Id> vids(ids.begin(), ids.end());
  std::map<Id, int> idx;
  for (std::size_t i = 0; i < vids.size(); ++i) idx[vids[i]] = static_cast<int>(i);
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : raw) {
    auto key = std::minmax(idx[a], idx[b]);
    if (seen.insert(key).second) edges.push_back({idx[a], idx[b]});
  }
  auto g = embed(static_cast<int>(vids.size()), edges, &vids);
  if (!g) throw GraphError("edge list is not planar");
  Instance inst;
  inst.g = std::move(*g);
  inst.embedded_from_edge_list = true;
  return inst;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string l;
    while (std::getline(is, l)) lines.push_back(l);
  }
  std::size_t first = 0;
  while (first < lines.size() && skip_line(split(lines[first]))) ++first;
  if (first == lines.size() || split(lines[first]) != std::vector<std::string>{"plangraph", "v1"})
    return parse_edge_list(lines);

  std::vector<Id> vids;
  std::unordered_map<Id, int> vidx, eidx;
  std::vector<EdgeInput> edges;
  std::vector<std::vector<int>> rot;
  std::vector<char> has_rot;
  std::vector<int> outer;
  Instance inst;
  auto vertex = [&](const std::string& tok, int ln) {
    Id id = to_id(tok, ln);
    auto it = vidx.find(id);
    if (it == vidx.end()) fail(ln, "unknown vertex " + tok);
    return it->second;
  };
  auto vertex_list = [&](const std::vector<std::string>& tok, int ln) {
    std::vector<int> out;
    std::set<int> seen;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      int v = vertex(tok[i], ln);
      if (!seen.insert(v).second) fail(ln, "vertex " + tok[i] + " listed twice");
      out.push_back(v);
    }
    return out;
  };
  for (std::size_t i = first + 1; i < lines.size(); ++i) {
    int ln = static_cast<int>(i) + 1;
    auto tok = split(lines[i]);
    if (skip_line(tok)) continue;
    const std::string& kw = tok[0];
    if (kw == "v") {
      if (tok.size() != 2) fail(ln, "expected 'v <id>'");
      if (!edges.empty()) fail(ln, "vertex after edges");
      Id id = to_id(tok[1], ln);
      if (vidx.count(id)) fail(ln, "duplicate vertex id " + tok[1]);
      vidx[id] = static_cast<int>(vids.size());
      vids.push_back(id);
      rot.emplace_back();
      has_rot.push_back(0);
    } else if (kw == "e") {
      if (tok.size() != 4) fail(ln, "expected 'e <id> <u> <v>'");
      Id id = to_id(tok[1], ln);
      if (eidx.count(id)) fail(ln, "duplicate edge id " + tok[1]);
      int a = vertex(tok[2], ln), b = vertex(tok[3], ln);
      if (a == b) fail(ln, "self-loop on edge " + tok[1]);
      eidx[id] = static_cast<int>(edges.size());
      edges.push_back({a, b, id});
    } else if (kw == "rot") {
      if (tok.size() < 2) fail(ln, "expected 'rot <v> <edges...>'");
      int v = vertex(tok[1], ln);
      if (has_rot[v]) fail(ln, "second rot line for vertex " + tok[1]);
      has_rot[v] = 1;
      for (std::size_t j = 2; j < tok.size(); ++j) {
        Id id = to_id(tok[j], ln);
        auto it = eidx.find(id);
        if (it == eidx.end()) fail(ln, "rot of vertex " + tok[1] + " names unknown edge " + tok[j]);
        int e = it->second;
        if (edges[e].u == v)
          rot[v].push_back(2 * e);
        else if (edges[e].v == v)
          rot[v].push_back(2 * e + 1);
        else
          fail(ln, "rot of vertex " + tok[1] + " names edge " + tok[j] + " which is not incident to it");
      }
    } else if (kw == "outer") {
      if (tok.size() != 3 || (tok[2] != "+" && tok[2] != "-")) fail(ln, "expected 'outer <edge> <+|->'");
      auto it = eidx.find(to_id(tok[1], ln));
      if (it == eidx.end()) fail(ln, "outer names unknown edge " + tok[1]);
      outer.push_back(2 * it->second + (tok[2] == "-" ? 1 : 0));
    } else if (kw == "partA") {
      inst.partA = vertex_list(tok, ln);
    } else if (kw == "terminals") {
      inst.terminals = vertex_list(tok, ln);
    } else if (kw == "forbidden") {
      inst.forbidden = vertex_list(tok, ln);
    } else if (kw == "param") {
      if (tok.size() != 3 || tok[1] != "k") fail(ln, "expected 'param k <int>'");
      inst.k = static_cast<int>(to_id(tok[2], ln));
    } else {
      fail(ln, "unknown keyword '" + kw + "'");
    }
  }
  // every edge end must be listed exactly once
  std::vector<int> cnt(2 * edges.size(), 0);
  for (std::size_t v = 0; v < rot.size(); ++v)
    for (int h : rot[v]) ++cnt[h];
  for (std::size_t h = 0; h < cnt.size(); ++h)
    if (cnt[h] != 1) {
      const auto& e = edges[h / 2];
      Id at = vids[h & 1 ? e.v : e.u];
      throw GraphError("rotation of vertex " + std::to_string(at) + (cnt[h] ? " lists edge " : " misses edge ") +
                       std::to_string(e.id) + (cnt[h] ? " twice" : ""));
    }
  inst.g = build_plane(vids, edges, rot, outer);
  if (outer.empty() && inst.g.nfaces > 1) throw GraphError("missing outer face for a multi-face input");
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize_instance(const Instance& inst) {
  const PlaneGraph& g = inst.g;
  std::ostringstream os;
  os << "plangraph v1\n";
  for (int v = 0; v < g.n(); ++v) os << "v " << g.vid[v] << "\n";
  for (int e = 0; e < g.m(); ++e) os << "e " << g.eid[e] << " " << g.vid[g.eu(e)] << " " << g.vid[g.ev(e)] << "\n";
  for (int v = 0; v < g.n(); ++v) {
    if (g.vhe[v] < 0) continue;
    os << "rot " << g.vid[v];
    for (int h : g.rotation(v)) os << " " << g.eid[h / 2];
    os << "\n";
  }
  for (int h : outer_half_edges(g)) os << "outer " << g.eid[h / 2] << " " << (h & 1 ? "-" : "+") << "\n";
  auto list = [&](const char* kw, const std::optional<std::vector<int>>& xs) {
    if (!xs) return;
    os << kw;
    for (int v : *xs) os << " " << g.vid[v];
    os << "\n";
  };
  list("partA", inst.partA);
  list("terminals", inst.terminals);
  if (inst.k) os << "param k " << *inst.k << "\n";
  list("forbidden", inst.forbidden);
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path);
  out << text;
}

}  // namespace pk
