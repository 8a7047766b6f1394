#include "eposa/lgraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace eposa {

int LabelledGraph::add_vertex(const std::string& name, bool terminal) {
  if (name.empty() || name.find_first_of(" \t#") != std::string::npos)
    throw ValidationError("bad vertex name '" + name + "'");
  if (by_name_.count(name)) throw ValidationError("duplicate vertex '" + name + "'");
  int id = (int)names_.size();
  names_.push_back(name);
  by_name_[name] = id;
  terminal_.push_back(terminal ? 1 : 0);
  adj_.emplace_back();
  return id;
}

int LabelledGraph::add_edge(int u, int v, const GroupElement& label) {
  if (u < 0 || u >= vertex_count() || v < 0 || v >= vertex_count())
    throw ValidationError("edge endpoint out of range");
  if (u == v) throw ValidationError("loops are not allowed (at '" + names_[u] + "')");
  if (label.size() != spec_.moduli.size())
    throw ValidationError("edge label arity does not match group");
  for (const auto& [w, eid] : adj_[u])
    if (w == v && edges_[eid].label == label)
      throw ValidationError("parallel edges '" + names_[u] + "'-'" + names_[v] +
                            "' must carry distinct labels");
  int id = (int)edges_.size();
  edges_.push_back(Edge{id, u, v, label});
  adj_[u].push_back({v, id});
  adj_[v].push_back({u, id});
  return id;
}

int LabelledGraph::vertex_id(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw ValidationError("unknown vertex '" + name + "'");
  return it->second;
}

std::vector<int> LabelledGraph::terminals() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (terminal_[v]) out.push_back(v);
  return out;
}

const Edge& LabelledGraph::edge(int id) const {
  if (id < 0 || id >= (int)edges_.size())
    throw ValidationError("unknown edge id " + std::to_string(id));
  return edges_[id];
}

GroupElement gamma_length(const LabelledGraph& g, const std::vector<int>& edge_ids) {
  GroupElement total = zero(g.spec());
  for (int id : edge_ids) total = add(g.spec(), total, g.edge(id).label);
  return total;
}

ApPath make_appath(const LabelledGraph& g, const std::vector<int>& vertices,
                   const std::vector<int>& edge_ids) {
  if (edge_ids.empty()) throw ValidationError("an A-path needs at least one edge");
  if (vertices.size() != edge_ids.size() + 1)
    throw ValidationError("A-path has " + std::to_string(vertices.size()) + " vertices but " +
                          std::to_string(edge_ids.size()) + " edges");
  std::set<int> seen;
  for (int v : vertices) {
    if (v < 0 || v >= g.vertex_count()) throw ValidationError("A-path vertex out of range");
    if (!seen.insert(v).second)
      throw ValidationError("A-path repeats vertex '" + g.vertex_name(v) + "'");
  }
  if (!g.is_terminal(vertices.front()) || !g.is_terminal(vertices.back()))
    throw ValidationError("A-path endpoints must be terminals");
  for (size_t i = 1; i + 1 < vertices.size(); ++i)
    if (g.is_terminal(vertices[i]))
      throw ValidationError("A-path passes through terminal '" + g.vertex_name(vertices[i]) + "'");
  for (size_t i = 0; i < edge_ids.size(); ++i) {
    const Edge& e = g.edge(edge_ids[i]);
    int a = vertices[i], b = vertices[i + 1];
    if (!((e.u == a && e.v == b) || (e.u == b && e.v == a)))
      throw ValidationError("A-path edge " + std::to_string(e.id) +
                            " does not join consecutive vertices");
  }
  return ApPath{vertices, edge_ids, gamma_length(g, edge_ids)};
}

LabelledGraph shift(const LabelledGraph& g, int v, const GroupElement& delta) {
  if (v < 0 || v >= g.vertex_count()) throw ValidationError("unknown vertex for shift");
  if (!is_zero(add(g.spec(), delta, delta)))
    throw ValidationError("shift requires 2*delta = 0, got delta = " +
                          format_element(g.spec(), delta));
  LabelledGraph out(g.spec());
  for (int w = 0; w < g.vertex_count(); ++w) out.add_vertex(g.vertex_name(w), g.is_terminal(w));
  for (const Edge& e : g.edges()) {
    GroupElement label = e.label;
    if (e.u == v || e.v == v) label = add(g.spec(), label, delta);
    out.add_edge(e.u, e.v, label);
  }
  return out;
}

bool is_allowable(const LabelledGraph& g, const ApPath& p, const LambdaSet& lambda) {
  if (lambda.spec != g.spec())
    throw ValidationError("lambda set is over " + format_group_spec(lambda.spec) +
                          " but graph is over " + format_group_spec(g.spec()));
  return lambda.contains(p.gamma);
}

namespace {

[[noreturn]] void syntax_error(int line_no, const std::string& msg) {
  throw ValidationError("line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

LabelledGraph parse_lgraph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_group = false;
  GroupSpec spec;
  std::vector<LabelledGraph> built;  // delayed construction until group line
  std::vector<std::tuple<int, std::string, std::string, std::string>> pending_edges;

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;  // blank or comment-only
    if (kw == "group") {
      if (have_group) syntax_error(line_no, "duplicate group line");
      std::string gs;
      if (!(ls >> gs)) syntax_error(line_no, "group line needs a spec like Z6");
      try {
        spec = parse_group_spec(gs);
      } catch (const ValidationError& e) {
        syntax_error(line_no, e.what());
      }
      have_group = true;
      built.emplace_back(spec);
    } else if (kw == "vertex") {
      if (!have_group) syntax_error(line_no, "vertex before group line");
      std::string name, flag;
      if (!(ls >> name)) syntax_error(line_no, "vertex line needs a name");
      bool terminal = false;
      if (ls >> flag) {
        if (flag != "A") syntax_error(line_no, "unknown vertex flag '" + flag + "'");
        terminal = true;
      }
      try {
        built.back().add_vertex(name, terminal);
      } catch (const ValidationError& e) {
        syntax_error(line_no, e.what());
      }
    } else if (kw == "edge") {
      if (!have_group) syntax_error(line_no, "edge before group line");
      std::string a, b, lit;
      if (!(ls >> a >> b >> lit)) syntax_error(line_no, "edge line needs: edge u w label");
      pending_edges.emplace_back(line_no, a, b, lit);
    } else {
      syntax_error(line_no, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_group) throw ValidationError("missing group line");
  LabelledGraph& g = built.back();
  for (const auto& [ln, a, b, lit] : pending_edges) {
    try {
      g.add_edge(g.vertex_id(a), g.vertex_id(b), parse_element(spec, lit));
    } catch (const ValidationError& e) {
      syntax_error(ln, e.what());
    }
  }
  return std::move(g);
}

std::string serialize_lgraph(const LabelledGraph& g) {
  std::string out = "group " + format_group_spec(g.spec()) + "\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    out += "vertex " + g.vertex_name(v);
    if (g.is_terminal(v)) out += " A";
    out += '\n';
  }
  for (const Edge& e : g.edges())
    out += "edge " + g.vertex_name(e.u) + " " + g.vertex_name(e.v) + " " +
           format_element(g.spec(), e.label) + "\n";
  return out;
}

std::string lgraph_to_dot(const LabelledGraph& g, const std::string& name) {
  std::string out = "graph " + name + " {\n  node [shape=circle];\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    out += "  \"" + g.vertex_name(v) + "\"";
    if (g.is_terminal(v)) out += " [style=filled, fillcolor=black, fontcolor=white]";
    out += ";\n";
  }
  for (const Edge& e : g.edges())
    out += "  \"" + g.vertex_name(e.u) + "\" -- \"" + g.vertex_name(e.v) + "\" [label=\"" +
           format_element(g.spec(), e.label) + "\"];\n";
  out += "}\n";
  return out;
}

}  // namespace eposa
