#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tc/twisted.hpp"

namespace tc {

using json = nlohmann::ordered_json;

// ---- automorphism file format ----
//
//   aut <name> on <groupname>
//   image <gen> = <word>      (one line per generator)
struct AutFile {
  std::string name;
  std::string group_name;
  std::vector<PcElement> images;
};

inline AutFile load_automorphism(const std::string& text, const PcRef& g) {
  std::istringstream is(text);
  std::string line;
  AutFile out;
  int lineno = 0;
  bool header = false;
  std::vector<bool> seen(g->ngens(), false);
  out.images.assign(g->ngens(), g->identity());
  while (std::getline(is, line)) {
    ++lineno;
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (!header) {
      std::string on;
      if (kw != "aut" || !(ls >> out.name >> on >> out.group_name) || on != "on")
        throw ParseError("line " + std::to_string(lineno) + ": expected 'aut <name> on <group>'");
      if (out.group_name != g->name)
        throw ParseError("automorphism is declared on '" + out.group_name +
                         "' but the group is '" + g->name + "'");
      header = true;
      continue;
    }
    if (kw != "image")
      throw ParseError("line " + std::to_string(lineno) + ": expected 'image <gen> = <word>'");
    std::string gen, eq;
    if (!(ls >> gen >> eq) || eq != "=")
      throw ParseError("line " + std::to_string(lineno) + ": expected 'image <gen> = <word>'");
    std::string rest;
    std::getline(ls, rest);
    int gi = g->gen_index(gen);
    if (seen[gi])
      throw ParseError("line " + std::to_string(lineno) + ": duplicate image for '" + gen + "'");
    seen[gi] = true;
    out.images[gi] = g->evaluate(g->parse_word(rest));
  }
  if (!header) throw ParseError("missing 'aut' header line");
  for (int i = 0; i < g->ngens(); ++i)
    if (!seen[i]) throw ParseError("missing image for generator '" + g->gen_names[i] + "'");
  return out;
}

inline std::string save_automorphism(const std::string& name, const PcRef& g,
                                     const std::vector<PcElement>& images) {
  std::ostringstream os;
  os << "aut " << name << " on " << g->name << "\n";
  for (int i = 0; i < g->ngens(); ++i)
    os << "image " << g->gen_names[i] << " = " << g->print(images[i]) << "\n";
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write file '" + path + "'");
  f << content;
}

// ---- structured reports ----
//
// One document per invocation: command, group, aut, result
// ("finite"/"infinite"), count (decimal string), representatives (word
// list), witness, seed. Counts are strings so arbitrarily large values
// survive re-parsing.

inline json witness_json(const PcRef& g, const InfinityWitness& w) {
  json j;
  j["kind"] = w.kind == InfinityWitness::Kind::degenerate_lattice ? "degenerate_lattice"
                                                                  : "fixed_on_factor";
  j["layer"] = w.layer;
  json vec = json::array();
  for (const Int& v : w.vector) vec.push_back(v.str());
  j["vector"] = vec;
  if (!w.element.empty()) j["element"] = w.element;
  (void)g;
  return j;
}

inline json reidemeister_json(const std::string& command, const std::string& group,
                              const std::string& aut, const PcRef& g,
                              const ReidemeisterResult& r, bool include_reps) {
  json j;
  j["command"] = command;
  j["group"] = group;
  j["aut"] = aut;
  j["result"] = r.finite ? "finite" : "infinite";
  if (r.finite) {
    j["count"] = r.count.str();
    if (include_reps) {
      json reps = json::array();
      for (const auto& c : r.classes) reps.push_back(g->print(c.representative));
      j["representatives"] = reps;
    }
  } else {
    j["witness"] = witness_json(g, r.witness);
  }
  return j;
}

inline std::string witness_text(const InfinityWitness& w) {
  std::ostringstream os;
  if (w.kind == InfinityWitness::Kind::degenerate_lattice) {
    os << "layer " << w.layer << ", kernel witness (";
    for (std::size_t i = 0; i < w.vector.size(); ++i) os << (i ? " " : "") << w.vector[i];
    os << ")";
  } else {
    os << "fixed vector on upper central factor " << w.layer;
    if (!w.element.empty()) os << ": " << w.element;
  }
  return os.str();
}

}  // namespace tc
