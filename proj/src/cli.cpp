#include "eposa/cli.hpp"

#include "eposa/encode.hpp"
#include "eposa/obstruct.hpp"
#include "eposa/paths.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace eposa {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

// Comma-split that leaves tuple literals like "(1,0)" intact.
std::vector<std::string> split_elems(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += ch;
  }
  out.push_back(cur);
  std::vector<std::string> res;
  for (auto& t : out) {
    std::string w = trimmed(t);
    if (!w.empty()) res.push_back(w);
  }
  return res;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  std::vector<std::string> res;
  for (auto& t : out) {
    std::string w = trimmed(t);
    if (!w.empty()) res.push_back(w);
  }
  return res;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad " + what + " '" + s + "'");
  }
}

LambdaSet parse_lambda_arg(const GroupSpec& spec, const std::string& s) {
  std::vector<GroupElement> xs;
  for (const std::string& t : split_elems(s)) xs.push_back(parse_element(spec, t));
  return make_lambda(spec, xs);
}

ordered_json lambda_json(const LambdaSet& lam) {
  ordered_json a = ordered_json::array();
  for (const auto& x : lam.elements) a.push_back(format_element(lam.spec, x));
  return a;
}

ordered_json path_names(const LabelledGraph& g, const ApPath& p) {
  ordered_json a = ordered_json::array();
  for (int v : p.vertices) a.push_back(g.vertex_name(v));
  return a;
}

ordered_json vertex_names(const LabelledGraph& g, const std::vector<int>& vs) {
  ordered_json a = ordered_json::array();
  for (int v : vs) a.push_back(g.vertex_name(v));
  return a;
}

std::string scalar_str(const ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

bool scalar_array(const ordered_json& a) {
  for (const auto& v : a)
    if (v.is_structured()) return false;
  return true;
}

// Flat "dotted.key: values" rendering; arrays of scalars on one line.
void print_text(std::ostream& os, const ordered_json& j, const std::string& key) {
  if (j.is_object()) {
    for (const auto& it : j.items())
      print_text(os, it.value(), key.empty() ? it.key() : key + "." + it.key());
  } else if (j.is_array()) {
    if (scalar_array(j)) {
      os << key << ":";
      for (const auto& v : j) os << ' ' << scalar_str(v);
      os << '\n';
    } else {
      int i = 0;
      for (const auto& v : j) print_text(os, v, key + "[" + std::to_string(i++) + "]");
    }
  } else {
    os << key << ": " << scalar_str(j) << '\n';
  }
}

void emit(const ordered_json& rep, const std::string& format, const std::string& out_path,
          std::ostream& out) {
  std::ostringstream buf;
  if (format == "json")
    buf << rep.dump(2) << '\n';
  else
    print_text(buf, rep, "");
  if (out_path.empty())
    out << buf.str();
  else
    write_file(out_path, buf.str());
}

std::string csv_field(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

// ---------------------------------------------------------------- verbs

struct EpcOpts {
  std::string group, lambda, format = "text", out_path;
};

int verb_epc(const EpcOpts& o, std::ostream& out) {
  GroupSpec spec = parse_group_spec(o.group);
  LambdaSet lam = parse_lambda_arg(spec, o.lambda);
  EpVerdict v1 = check_ep1(spec, lam), v2 = check_ep2(spec, lam);
  EpcVerdict ve = check_epc(spec, lam);

  ordered_json rep;
  rep["group"] = format_group_spec(spec);
  rep["lambda"] = lambda_json(lam);
  auto axiom = [&](const EpVerdict& v) {
    ordered_json a;
    a["holds"] = v.holds;
    if (v.witness) {
      ordered_json w = ordered_json::array();
      for (const auto& x : *v.witness) w.push_back(format_element(spec, x));
      a["witness"] = w;
    }
    return a;
  };
  rep["ep1"] = axiom(v1);
  rep["ep2"] = axiom(v2);
  rep["satisfies"] = ve.satisfies;
  if (!ve.satisfies) rep["failed_axiom"] = ve.failed_axiom;
  emit(rep, o.format, o.out_path, out);
  return 0;
}

struct ClassifyOpts {
  int max_order = 8;
  bool allow_large = false;
  std::string format = "text", out_path;
};

int verb_classify(const ClassifyOpts& o, std::ostream& out, std::ostream& err) {
  if (o.max_order < 1) throw ValidationError("max order must be >= 1");
  if (o.max_order > 12 && !o.allow_large)
    throw ValidationError("max order " + std::to_string(o.max_order) +
                          " exceeds the guard of 12; pass --allow-large to override");

  std::ostringstream csv;
  csv << "group,lambda,satisfies,failed_axiom,witness,singleton_check\n";
  long long rows = 0, satisfied = 0, singleton_rows = 0, mismatches = 0;
  for (const GroupSpec& spec : enumerate_abelian_groups(o.max_order)) {
    std::vector<GroupElement> elems = elements_of(spec);
    int n = (int)elems.size();
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<GroupElement> chosen;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) chosen.push_back(elems[i]);
      LambdaSet lam = make_lambda(spec, chosen);
      EpcVerdict ve = check_epc(spec, lam);

      std::string lam_str, wit_str, check_str;
      for (size_t i = 0; i < chosen.size(); ++i)
        lam_str += (i ? " " : "") + format_element(spec, chosen[i]);
      if (ve.witness)
        for (size_t i = 0; i < ve.witness->size(); ++i)
          wit_str += (i ? " " : "") + format_element(spec, (*ve.witness)[i]);
      if (chosen.size() == 1) {
        ++singleton_rows;
        bool expect = singleton_family_verdict(spec, chosen[0]);
        if (expect != ve.satisfies) {
          check_str = "mismatch";
          ++mismatches;
        } else {
          check_str = "ok";
        }
      }
      csv << csv_field(format_group_spec(spec)) << ',' << csv_field(lam_str) << ','
          << (ve.satisfies ? "true" : "false") << ',' << ve.failed_axiom << ','
          << csv_field(wit_str) << ',' << check_str << '\n';
      ++rows;
      if (ve.satisfies) ++satisfied;
    }
  }

  ordered_json summary;
  summary["max_order"] = o.max_order;
  summary["rows"] = rows;
  summary["satisfied"] = satisfied;
  summary["failed"] = rows - satisfied;
  summary["singleton_rows"] = singleton_rows;
  summary["singleton_mismatches"] = mismatches;
  if (o.out_path.empty()) {
    out << csv.str();
    if (o.format == "json")
      err << summary.dump(2) << '\n';
    else
      print_text(err, summary, "");
  } else {
    write_file(o.out_path, csv.str());
    emit(summary, o.format, "", out);
  }
  return 0;
}

struct GenOpts {
  std::string group, lambda, fig;
  int k = 2, n = 0, slack = 0;
  std::string ea, eb, ec, out_path;
};

int verb_gen(const GenOpts& o, std::ostream& out) {
  GroupSpec spec = parse_group_spec(o.group);
  LambdaSet lam = parse_lambda_arg(spec, o.lambda);
  if (o.k < 1) throw ValidationError("k must be >= 1");

  RibbonedWall r;
  if (o.fig == "params") {
    auto p = find_obstruction_params(spec, lam);
    if (!p)
      throw ValidationError("the EP condition holds for this Lambda; no obstruction parameters");
    r = gen_from_params(*p, o.k, lam, o.slack);
  } else {
    GroupElement a, b, c;
    if (!o.ea.empty() || !o.eb.empty() || !o.ec.empty()) {
      if (o.ea.empty() || o.eb.empty() || o.ec.empty())
        throw ValidationError("--a, --b and --c must be given together");
      a = parse_element(spec, o.ea);
      b = parse_element(spec, o.eb);
      c = parse_element(spec, o.ec);
    } else {
      EpVerdict v = o.fig == "1a" ? check_ep1(spec, lam) : check_ep2(spec, lam);
      if (v.holds)
        throw ValidationError(std::string(o.fig == "1a" ? "(EP1)" : "(EP2)") +
                              " holds for this Lambda; give --a/--b/--c explicitly");
      a = (*v.witness)[0];
      b = (*v.witness)[1];
      c = (*v.witness)[2];
    }
    int n = o.n > 0 ? o.n : (o.fig == "1a" ? 2 * o.k : 2 * o.k - 1);
    r = o.fig == "1a" ? gen_fig1a(spec, a, b, c, n, lam) : gen_fig1b(spec, a, b, c, n, lam);
  }

  std::string text = serialize_ribboned(r);
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_file(o.out_path, text);
    out << "wrote " << o.out_path << " (vertices=" << r.graph.vertex_count()
        << ", edges=" << r.graph.edge_count() << ", k=" << r.k << ", bars=" << r.m() << ")\n";
  }
  return 0;
}

struct VerifyOpts {
  std::string file, lambda, format = "text", out_path;
};

int verb_verify(const VerifyOpts& o, std::ostream& out) {
  RibbonedWall r = parse_ribboned(read_file(o.file));
  LambdaSet lam = parse_lambda_arg(r.graph.spec(), o.lambda);
  ConditionFlags f = check_conditions(r, lam);

  ordered_json rep;
  rep["file"] = o.file;
  rep["group"] = format_group_spec(r.graph.spec());
  rep["k"] = r.k;
  rep["bars"] = r.m();
  rep["q_mode"] = r.q_mode == QMode::equal ? "equal" : "disjoint";
  rep["wall"] = {{"columns", r.wall.c}, {"rows", r.wall.r}};
  ordered_json flags;
  flags["a1"] = f.a1;
  flags["a2"] = f.a2;
  flags["a3"] = f.a3;
  flags["a4"] = f.a4;
  flags["a5"] = f.a5;
  flags["a6"] = f.a6;
  flags["a7"] = f.a7;
  rep["flags"] = flags;
  rep["irreducible"] = f.irreducible;
  rep["obstruction"] = f.obstruction;
  emit(rep, o.format, o.out_path, out);
  return 0;
}

struct SolveOpts {
  std::string graph, lambda, mode = "integral";
  int cap = kDefaultPathCap;
  std::string format = "text", out_path;
};

int verb_solve(const SolveOpts& o, std::ostream& out) {
  std::string text = read_file(o.graph);
  ordered_json rep;
  rep["file"] = o.graph;
  rep["mode"] = o.mode;

  if (text.find("#!ribbon") != std::string::npos) {
    RibbonedWall r = parse_ribboned(text);
    LambdaSet lam = parse_lambda_arg(r.graph.spec(), o.lambda);
    WallSolveResult res = solve_ribboned(r, lam, o.mode == "cover");
    rep["engine"] = "ribbon";
    rep["nu_lower"] = res.nu_lower;
    rep["nu_upper"] = res.nu_upper;
    rep["raw_lower"] = res.raw_lower;
    rep["raw_upper"] = res.raw_upper;
    rep["nu_half_lower"] =
        res.raw_lower % 2 == 0 ? std::to_string(res.raw_lower / 2)
                               : std::to_string(res.raw_lower) + "/2";
    if (res.tau >= 0) rep["tau"] = res.tau;
    if (o.mode == "half") {
      ordered_json ps = ordered_json::array();
      for (const auto& p : res.half_packing) ps.push_back(path_names(r.graph, p));
      rep["paths"] = ps;
    } else if (o.mode == "cover") {
      rep["vertices"] = vertex_names(r.graph, res.cover);
    } else {
      ordered_json ps = ordered_json::array();
      for (const auto& p : res.packing) ps.push_back(path_names(r.graph, p));
      rep["paths"] = ps;
    }
  } else {
    LabelledGraph g = parse_lgraph(text);
    LambdaSet lam = parse_lambda_arg(g.spec(), o.lambda);
    rep["engine"] = "enumeration";
    if (o.mode == "cover") {
      CoverResult cr = min_cover(g, lam, o.cap);
      rep["tau"] = (int)cr.vertices.size();
      rep["vertices"] = vertex_names(g, cr.vertices);
      rep["verified"] = cr.verified;
    } else {
      PackingMode pm = o.mode == "half" ? PackingMode::half_integral : PackingMode::integral;
      PackingResult pr = max_packing(g, lam, pm, o.cap);
      if (o.mode == "half") {
        rep["raw"] = (int)pr.paths.size();
        rep["nu_half"] = pr.paths.size() % 2 == 0
                             ? std::to_string(pr.paths.size() / 2)
                             : std::to_string(pr.paths.size()) + "/2";
      } else {
        rep["nu"] = (int)pr.paths.size();
      }
      ordered_json ps = ordered_json::array();
      for (const auto& p : pr.paths) ps.push_back(path_names(g, p));
      rep["paths"] = ps;
    }
  }
  emit(rep, o.format, o.out_path, out);
  return 0;
}

struct EncodeOpts {
  std::string kind, in_path, out_path, map_path;
  std::string a, b, lambda, sets, parts, hedges, residues;
  int m = 0;
};

std::vector<int> names_to_ids(const LabelledGraph& g, const std::string& csv) {
  std::vector<int> ids;
  for (const std::string& name : split_on(csv, ',')) ids.push_back(g.vertex_id(name));
  return ids;
}

int verb_encode(const EncodeOpts& o, std::ostream& out) {
  LabelledGraph g = parse_lgraph(read_file(o.in_path));
  Encoding enc;
  if (o.kind == "mod") {
    if (o.m < 1) throw ValidationError("--m must be >= 1 for kind mod");
    std::vector<int> residues;
    for (const std::string& t : split_on(o.residues, ','))
      residues.push_back(parse_int(t, "residue"));
    enc = encode_modular(g, o.m, residues);
  } else if (o.kind == "edges") {
    std::vector<std::vector<int>> fsets;
    for (const std::string& set : split_on(o.sets, ';')) {
      std::vector<int> ids;
      for (const std::string& t : split_on(set, ',')) ids.push_back(parse_int(t, "edge id"));
      fsets.push_back(std::move(ids));
    }
    enc = encode_edge_sets(g, fsets);
  } else if (o.kind == "vertices") {
    std::vector<std::vector<int>> usets;
    for (const std::string& set : split_on(o.sets, ';')) usets.push_back(names_to_ids(g, set));
    enc = encode_vertex_sets(g, usets);
  } else if (o.kind == "ab" || o.kind == "weak-ab") {
    LambdaSet lam = parse_lambda_arg(g.spec(), o.lambda);
    std::vector<int> A = names_to_ids(g, o.a), B = names_to_ids(g, o.b);
    enc = o.kind == "ab" ? encode_ab_paths(g, A, B, lam) : encode_weak_ab(g, A, B, lam);
  } else {  // hfeasible
    std::vector<std::vector<int>> parts;
    for (const std::string& part : split_on(o.parts, ';')) parts.push_back(names_to_ids(g, part));
    std::vector<HEdge> hedges;
    for (const std::string& he : split_on(o.hedges, ';')) {
      size_t colon = he.find(':');
      if (colon == std::string::npos)
        throw ValidationError("pattern edge '" + he + "' needs the form i-j:g|g|...");
      std::vector<std::string> ij = split_on(he.substr(0, colon), '-');
      if (ij.size() != 2) throw ValidationError("pattern edge '" + he + "' needs two part indices");
      std::vector<GroupElement> es;
      for (const std::string& lit : split_on(he.substr(colon + 1), '|'))
        es.push_back(parse_element(g.spec(), lit));
      hedges.push_back(
          {parse_int(ij[0], "part index"), parse_int(ij[1], "part index"),
           make_lambda(g.spec(), es)});
    }
    enc = encode_h_feasible(g, parts, hedges);
  }

  write_file(o.out_path, serialize_lgraph(enc.target));
  if (!o.map_path.empty()) {
    ordered_json m;
    m["constraint"] = enc.constraint;
    m["source_group"] = format_group_spec(enc.source.spec());
    m["target_group"] = format_group_spec(enc.target.spec());
    m["lambda_target"] = lambda_json(enc.lambda_target);
    m["vertex_map"] = enc.vertex_map;
    m["edge_map"] = enc.edge_map;
    write_file(o.map_path, m.dump(2) + "\n");
  }
  out << "encoded " << o.kind << ": " << g.vertex_count() << " vertices / " << g.edge_count()
      << " edges -> " << enc.target.vertex_count() << " / " << enc.target.edge_count() << "\n";
  return 0;
}

struct DotOpts {
  std::string graph, name, out_path;
};

int verb_export_dot(const DotOpts& o, std::ostream& out) {
  std::string text = read_file(o.graph);
  std::string dot;
  if (text.find("#!ribbon") != std::string::npos) {
    RibbonedWall r = parse_ribboned(text);
    dot = ribboned_to_dot(r, o.name.empty() ? "R" : o.name);
  } else {
    dot = lgraph_to_dot(parse_lgraph(text), o.name.empty() ? "G" : o.name);
  }
  if (o.out_path.empty())
    out << dot;
  else
    write_file(o.out_path, dot);
  return 0;
}

struct PipelineOpts {
  std::string group, lambda;
  int k = 2;
  std::string format = "text", out_dir, out_path;
};

int verb_pipeline(const PipelineOpts& o, std::ostream& out) {
  GroupSpec spec = parse_group_spec(o.group);
  LambdaSet lam = parse_lambda_arg(spec, o.lambda);
  if (o.k < 1) throw ValidationError("k must be >= 1");

  ordered_json rep;
  rep["group"] = format_group_spec(spec);
  rep["lambda"] = lambda_json(lam);
  rep["k"] = o.k;
  EpcVerdict ve = check_epc(spec, lam);
  rep["epc"] = {{"satisfies", ve.satisfies}};
  if (!ve.satisfies) rep["epc"]["failed_axiom"] = ve.failed_axiom;

  std::optional<ObstructionParams> p;
  std::string kind;
  if (!ve.satisfies) {
    p = find_obstruction_params(spec, lam);
    kind = "obstruction";
  } else {
    p = find_irreducible_params(spec, lam);
    kind = "irreducible";
  }
  if (!p) {
    if (lam.empty()) {
      rep["note"] = "no allowable paths possible";
      rep["nu"] = 0;
      rep["tau"] = 0;
    } else {
      rep["note"] = "no counterexample parameters found";
    }
    emit(rep, o.format, o.out_path, out);
    return 0;
  }

  ordered_json pj;
  pj["m"] = p->m;
  ordered_json gs = ordered_json::array(), ks = ordered_json::array();
  for (const auto& x : p->g) gs.push_back(format_element(spec, x));
  for (BarKind kd : p->kinds) ks.push_back(bar_kind_name(kd));
  pj["g"] = gs;
  pj["kinds"] = ks;
  pj["h1"] = format_element(spec, p->h1);
  pj["h2"] = format_element(spec, p->h2);
  pj["q_mode"] = p->q_mode == QMode::equal ? "equal" : "disjoint";
  rep["params"] = pj;

  RibbonedWall r = gen_from_params(*p, o.k, lam);
  ConditionFlags f = check_conditions(r, lam);
  rep["instance"] = {{"kind", kind},
                     {"vertices", r.graph.vertex_count()},
                     {"edges", r.graph.edge_count()},
                     {"wall_columns", r.wall.c},
                     {"wall_rows", r.wall.r},
                     {"irreducible", f.irreducible},
                     {"obstruction", f.obstruction}};

  WallSolveResult s = solve_ribboned(r, lam, true);
  ordered_json d;
  d["nu_lower"] = s.nu_lower;
  d["nu_upper"] = s.nu_upper;
  d["raw_lower"] = s.raw_lower;
  d["raw_upper"] = s.raw_upper;
  d["nu_half_lower"] = s.raw_lower % 2 == 0 ? std::to_string(s.raw_lower / 2)
                                            : std::to_string(s.raw_lower) + "/2";
  d["tau"] = s.tau;
  rep["duality"] = d;

  if (!o.out_dir.empty()) {
    std::filesystem::create_directories(o.out_dir);
    std::string glg = (std::filesystem::path(o.out_dir) / "instance.glg").string();
    std::string dot = (std::filesystem::path(o.out_dir) / "instance.dot").string();
    write_file(glg, serialize_ribboned(r));
    write_file(dot, ribboned_to_dot(r));
    rep["files"] = {glg, dot};
  }
  emit(rep, o.format, o.out_path, out);
  return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"group-labelled A-path packing and covering toolkit"};
  app.require_subcommand(1);

  EpcOpts epc;
  CLI::App* c_epc = app.add_subcommand("epc", "EP-condition verdict for (group, Lambda)");
  c_epc->add_option("--group", epc.group, "group literal, e.g. Z6 or Z2*Z4")->required();
  c_epc->add_option("--lambda", epc.lambda, "comma-separated element literals");
  c_epc->add_option("--format", epc.format)->check(CLI::IsMember({"text", "json"}));
  c_epc->add_option("--out", epc.out_path, "write the report to a file");

  ClassifyOpts cls;
  CLI::App* c_cls = app.add_subcommand("classify", "exhaustive EPC sweep, CSV report");
  c_cls->add_option("--max-order", cls.max_order, "largest group order to sweep");
  c_cls->add_flag("--allow-large", cls.allow_large, "lift the order-12 guard");
  c_cls->add_option("--format", cls.format)->check(CLI::IsMember({"text", "json"}));
  c_cls->add_option("--out", cls.out_path, "CSV path (summary then goes to stdout)");

  GenOpts gen;
  CLI::App* c_gen = app.add_subcommand("gen-obstruction", "build a ribboned-wall instance");
  c_gen->add_option("--group", gen.group)->required();
  c_gen->add_option("--lambda", gen.lambda)->required();
  c_gen->add_option("--fig", gen.fig, "construction: 1a, 1b, or params")
      ->required()
      ->check(CLI::IsMember({"1a", "1b", "params"}));
  c_gen->add_option("--k", gen.k, "target packing parameter");
  c_gen->add_option("--n", gen.n, "explicit unit count for the figure shapes");
  c_gen->add_option("--a", gen.ea, "element literal; default from the failing axiom witness");
  c_gen->add_option("--b", gen.eb);
  c_gen->add_option("--c", gen.ec);
  c_gen->add_option("--slack", gen.slack, "extra wall order for params instances");
  c_gen->add_option("--out", gen.out_path, "instance file (stdout when absent)");

  VerifyOpts ver;
  CLI::App* c_ver = app.add_subcommand("verify-obstruction", "re-check instance condition flags");
  c_ver->add_option("file", ver.file, "instance file")->required();
  c_ver->add_option("--lambda", ver.lambda)->required();
  c_ver->add_option("--format", ver.format)->check(CLI::IsMember({"text", "json"}));
  c_ver->add_option("--out", ver.out_path);

  SolveOpts sol;
  CLI::App* c_sol = app.add_subcommand("solve", "packing / half-packing / cover");
  c_sol->add_option("--graph", sol.graph, "graph or instance file")->required();
  c_sol->add_option("--lambda", sol.lambda)->required();
  c_sol->add_option("--mode", sol.mode)->check(CLI::IsMember({"integral", "half", "cover"}));
  c_sol->add_option("--cap", sol.cap, "path enumeration cap");
  c_sol->add_option("--format", sol.format)->check(CLI::IsMember({"text", "json"}));
  c_sol->add_option("--out", sol.out_path);

  EncodeOpts enc;
  CLI::App* c_enc = app.add_subcommand("encode", "constraint rewrites between graph files");
  c_enc->add_option("--kind", enc.kind)
      ->required()
      ->check(CLI::IsMember({"ab", "weak-ab", "edges", "vertices", "hfeasible", "mod"}));
  c_enc->add_option("--in", enc.in_path)->required();
  c_enc->add_option("--out", enc.out_path)->required();
  c_enc->add_option("--map", enc.map_path, "write the correspondence tables as JSON");
  c_enc->add_option("--a", enc.a, "comma-separated vertex names (ab kinds)");
  c_enc->add_option("--b", enc.b);
  c_enc->add_option("--lambda", enc.lambda, "source-group elements (ab kinds)");
  c_enc->add_option("--sets", enc.sets, "semicolon-separated sets (edges: ids, vertices: names)");
  c_enc->add_option("--parts", enc.parts, "semicolon-separated terminal name lists");
  c_enc->add_option("--hedges", enc.hedges, "pattern edges i-j:g|g;...");
  c_enc->add_option("--m", enc.m, "length modulus (mod kind)");
  c_enc->add_option("--residues", enc.residues, "comma-separated residues (mod kind)");

  DotOpts dot;
  CLI::App* c_dot = app.add_subcommand("export-dot", "DOT rendering of a graph or instance");
  c_dot->add_option("--graph", dot.graph)->required();
  c_dot->add_option("--name", dot.name, "DOT graph name");
  c_dot->add_option("--out", dot.out_path);

  PipelineOpts pipe;
  CLI::App* c_pipe = app.add_subcommand("pipeline", "EPC -> parameters -> instance -> duality");
  c_pipe->add_option("--group", pipe.group)->required();
  c_pipe->add_option("--lambda", pipe.lambda);
  c_pipe->add_option("--k", pipe.k);
  c_pipe->add_option("--format", pipe.format)->check(CLI::IsMember({"text", "json"}));
  c_pipe->add_option("--out-dir", pipe.out_dir, "directory for instance.glg / instance.dot");
  c_pipe->add_option("--out", pipe.out_path, "write the report to a file");

  std::vector<const char*> argv;
  argv.push_back("eposa");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse((int)argv.size(), argv.data());
    if (c_epc->parsed()) return verb_epc(epc, out);
    if (c_cls->parsed()) return verb_classify(cls, out, err);
    if (c_gen->parsed()) return verb_gen(gen, out);
    if (c_ver->parsed()) return verb_verify(ver, out);
    if (c_sol->parsed()) return verb_solve(sol, out);
    if (c_enc->parsed()) return verb_encode(enc, out);
    if (c_dot->parsed()) return verb_export_dot(dot, out);
    if (c_pipe->parsed()) return verb_pipeline(pipe, out);
    return 1;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const ExplosionError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_run(args, std::cout, std::cerr);
}

}  // namespace eposa
