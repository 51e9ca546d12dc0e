// tc: twisted conjugacy in finitely generated nilpotent groups.
//
// Subcommands: check, freenil, aut-check, reidemeister, fix, decide,
// rinf, rinf-formanek, spectrum, oracle. Exit codes: 0 success, 1
// mathematically not applicable, 2 input errors.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "tc/freenil.hpp"
#include "tc/io.hpp"
#include "tc/oracle.hpp"
#include "tc/spectrum.hpp"
#include "tc/twisted.hpp"

using namespace tc;

namespace {

struct InputError {
  std::string msg;
};
struct MathError {
  std::string msg;
};

PcRef load_group_file(const std::string& path) {
  try {
    return load_presentation(read_file(path));
  } catch (const ParseError& e) {
    throw InputError{e.what()};
  } catch (const NotNilpotent& e) {
    throw InputError{e.what()};
  } catch (const InconsistentPresentation& e) {
    throw InputError{e.what()};
  }
}

struct LoadedAut {
  std::string name;
  GroupMap map;
};

LoadedAut load_aut_file(const std::string& path, const PcRef& g) {
  AutFile af;
  try {
    af = load_automorphism(read_file(path), g);
  } catch (const ParseError& e) {
    throw InputError{e.what()};
  } catch (const UnknownGenerator& e) {
    throw InputError{e.what()};
  }
  try {
    return {af.name, check_map(g, af.images, MapRequirement::automorphism)};
  } catch (const RelationViolated& e) {
    throw MathError{std::string("map is not an endomorphism: ") + e.what()};
  } catch (const NotBijective& e) {
    throw MathError{std::string("map is not an automorphism: ") + e.what()};
  }
}

PcElement parse_element(const PcRef& g, const std::string& word) {
  try {
    return g->evaluate(g->parse_word(word));
  } catch (const Error& e) {
    throw InputError{e.what()};
  }
}

int run(int argc, char** argv) {
  CLI::App app{"twisted conjugacy and Reidemeister numbers for nilpotent pc groups"};
  app.require_subcommand(1);

  // ---- check ----
  std::string check_file;
  auto* c_check = app.add_subcommand("check", "verify a presentation file");
  c_check->add_option("file", check_file, "pc presentation file")->required();

  // ---- freenil ----
  int fn_r = 0, fn_c = 0;
  std::string fn_out;
  std::size_t fn_bound = 80;
  auto* c_freenil = app.add_subcommand("freenil", "construct the free nilpotent group N_{r,c}");
  c_freenil->add_option("r", fn_r, "rank (>= 1)")->required();
  c_freenil->add_option("c", fn_c, "class (>= 1)")->required();
  c_freenil->add_option("-o,--output", fn_out, "output file (stdout otherwise)");
  c_freenil->add_option("--max-hirsch", fn_bound, "size guard on the Hall basis");

  // ---- aut-check ----
  std::string ac_group, ac_aut;
  auto* c_autcheck = app.add_subcommand("aut-check", "verify an automorphism file");
  c_autcheck->add_option("group", ac_group)->required();
  c_autcheck->add_option("aut", ac_aut)->required();

  // ---- reidemeister ----
  std::string rd_group, rd_aut;
  bool rd_reps = false, rd_json = false;
  auto* c_rd = app.add_subcommand("reidemeister", "compute R(phi) with class representatives");
  c_rd->add_option("group", rd_group)->required();
  c_rd->add_option("aut", rd_aut)->required();
  c_rd->add_flag("--reps", rd_reps, "print class representatives");
  c_rd->add_flag("--json", rd_json, "structured output");

  // ---- fix ----
  std::string fx_group, fx_aut;
  bool fx_json = false;
  auto* c_fix = app.add_subcommand("fix", "generators of the fixed subgroup");
  c_fix->add_option("group", fx_group)->required();
  c_fix->add_option("aut", fx_aut)->required();
  c_fix->add_flag("--json", fx_json);

  // ---- decide ----
  std::string dc_group, dc_aut, dc_g, dc_f;
  bool dc_json = false;
  auto* c_decide = app.add_subcommand("decide", "twisted-conjugacy decision with witness");
  c_decide->add_option("group", dc_group)->required();
  c_decide->add_option("aut", dc_aut)->required();
  c_decide->add_option("g", dc_g, "first element (word)")->required();
  c_decide->add_option("f", dc_f, "second element (word)")->required();
  c_decide->add_flag("--json", dc_json);

  // ---- rinf ----
  std::string ri_group, ri_aut;
  bool ri_json = false;
  auto* c_rinf = app.add_subcommand("rinf", "upper-central infinity certificate");
  c_rinf->add_option("group", ri_group)->required();
  c_rinf->add_option("aut", ri_aut)->required();
  c_rinf->add_flag("--json", ri_json);

  // ---- rinf-formanek ----
  int rf_r = 0, rf_c = 0;
  bool rf_json = false;
  auto* c_rf = app.add_subcommand("rinf-formanek", "Formanek / R-infinity predicates for N_{r,c}");
  c_rf->add_option("r", rf_r)->required();
  c_rf->add_option("c", rf_c)->required();
  c_rf->add_flag("--json", rf_json);

  // ---- spectrum ----
  std::string sp_group;
  int sp_samples = 0;
  std::uint64_t sp_seed = 0;
  bool sp_json = false;
  auto* c_sp = app.add_subcommand("spectrum", "sampled Reidemeister spectrum");
  c_sp->add_option("group", sp_group)->required();
  c_sp->add_option("--samples", sp_samples, "number of sampled automorphisms")->required();
  c_sp->add_option("--seed", sp_seed, "random seed (mandatory for reproducibility)")->required();
  c_sp->add_flag("--json", sp_json);

  // ---- oracle ----
  std::string or_group, or_aut;
  bool or_json = false;
  Int or_bound = 10000;
  auto* c_or = app.add_subcommand("oracle", "brute-force comparison on a finite group");
  c_or->add_option("group", or_group)->required();
  c_or->add_option("aut", or_aut)->required();
  c_or->add_flag("--json", or_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_check) {
      PcRef g = load_group_file(check_file);
      std::cout << "ok: consistent nilpotent presentation '" << g->name << "' with "
                << g->ngens() << " generators, Hirsch length " << g->hirsch_length()
                << ", class bound " << g->max_weight() << "\n";
      return 0;
    }

    if (*c_freenil) {
      PcRef g;
      try {
        g = build_free_nilpotent(fn_r, fn_c, fn_bound);
      } catch (const TooLarge& e) {
        throw MathError{e.what()};
      }
      std::string text = g->save();
      if (fn_out.empty()) {
        std::cout << text;
      } else {
        write_file(fn_out, text);
        std::cout << "wrote " << g->name << " (" << g->ngens() << " generators) to " << fn_out
                  << "\n";
      }
      return 0;
    }

    if (*c_autcheck) {
      PcRef g = load_group_file(ac_group);
      AutFile af;
      try {
        af = load_automorphism(read_file(ac_aut), g);
      } catch (const ParseError& e) {
        throw InputError{e.what()};
      }
      try {
        check_map(g, af.images, MapRequirement::automorphism);
        std::cout << "automorphism: '" << af.name << "' on '" << g->name << "'\n";
        return 0;
      } catch (const RelationViolated& e) {
        throw MathError{std::string("not an endomorphism: ") + e.what()};
      } catch (const NotBijective&) {
        throw MathError{"endomorphism but not an automorphism (abelianization not bijective)"};
      }
    }

    if (*c_rd) {
      PcRef g = load_group_file(rd_group);
      LoadedAut aut = load_aut_file(rd_aut, g);
      ReidemeisterResult r = reidemeister(g, aut.map);
      if (rd_json) {
        std::cout << reidemeister_json("reidemeister", g->name, aut.name, g, r, rd_reps).dump(2)
                  << "\n";
      } else if (r.finite) {
        std::cout << "R = " << r.count << "\n";
        if (rd_reps)
          for (const auto& c : r.classes) std::cout << "  rep " << g->print(c.representative)
                                                    << "\n";
      } else {
        std::cout << "R = infinite (" << witness_text(r.witness) << ")\n";
      }
      return 0;
    }

    if (*c_fix) {
      PcRef g = load_group_file(fx_group);
      LoadedAut aut = load_aut_file(fx_aut, g);
      Subgroup f = fix_subgroup(g, aut.map);
      if (fx_json) {
        json j;
        j["command"] = "fix";
        j["group"] = g->name;
        j["aut"] = aut.name;
        json gens = json::array();
        for (const auto& x : f.seq) gens.push_back(g->print(x));
        j["generators"] = gens;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "Fix has " << f.seq.size() << " sequence generators:\n";
        for (const auto& x : f.seq) std::cout << "  " << g->print(x) << "\n";
      }
      return 0;
    }

    if (*c_decide) {
      PcRef g = load_group_file(dc_group);
      LoadedAut aut = load_aut_file(dc_aut, g);
      PcElement ge = parse_element(g, dc_g);
      PcElement fe = parse_element(g, dc_f);
      auto w = decide(g, aut.map, ge, fe);
      if (dc_json) {
        json j;
        j["command"] = "decide";
        j["group"] = g->name;
        j["aut"] = aut.name;
        j["g"] = g->print(ge);
        j["f"] = g->print(fe);
        j["result"] = w ? "equivalent" : "not-equivalent";
        if (w) j["witness"] = g->print(*w);
        std::cout << j.dump(2) << "\n";
      } else if (w) {
        std::cout << "equivalent: witness x = " << g->print(*w) << "\n";
      } else {
        std::cout << "not equivalent\n";
      }
      return 0;
    }

    if (*c_rinf) {
      PcRef g = load_group_file(ri_group);
      LoadedAut aut = load_aut_file(ri_aut, g);
      std::optional<InfinityWitness> w;
      try {
        w = infinity_witness_uc(g, aut.map);
      } catch (const TorsionPresent& e) {
        throw MathError{e.what()};
      }
      if (ri_json) {
        json j;
        j["command"] = "rinf";
        j["group"] = g->name;
        j["aut"] = aut.name;
        j["result"] = w ? "infinite" : "no-witness";
        if (w) j["witness"] = witness_json(g, *w);
        std::cout << j.dump(2) << "\n";
      } else if (w) {
        std::cout << "R = infinite (" << witness_text(*w) << ")\n";
      } else {
        std::cout << "no upper-central witness (R may be finite or infinite)\n";
      }
      return 0;
    }

    if (*c_rf) {
      bool fman, t2;
      try {
        fman = formanek_fixed(rf_r, rf_c);
        t2 = theorem2_rinf(rf_r, rf_c);
      } catch (const Error& e) {
        throw InputError{e.what()};
      }
      if (rf_json) {
        json j;
        j["command"] = "rinf-formanek";
        j["r"] = rf_r;
        j["c"] = rf_c;
        j["formanek_fixed"] = fman;
        j["theorem2_rinf"] = t2;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "N_{" << rf_r << "," << rf_c << "}: formanek_fixed = "
                  << (fman ? "true" : "false") << ", theorem2_rinf = " << (t2 ? "true" : "false")
                  << "\n";
      }
      return 0;
    }

    if (*c_sp) {
      PcRef g = load_group_file(sp_group);
      SpectrumResult res;
      try {
        res = spectrum_sample(g, sp_samples, sp_seed);
      } catch (const Error& e) {
        throw MathError{e.what()};
      }
      if (sp_json) {
        json j;
        j["command"] = "spectrum";
        j["group"] = g->name;
        j["seed"] = sp_seed;
        j["samples"] = sp_samples;
        json ms = json::object();
        for (const auto& [k, v] : res.multiset) ms[k] = v;
        j["multiset"] = ms;
        json samples = json::array();
        for (const auto& s : res.samples) {
          json e;
          e["images"] = s.image_words;
          e["r"] = s.r.str();
          samples.push_back(e);
        }
        j["sampled"] = samples;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "spectrum sample of " << sp_samples << " automorphisms (seed " << sp_seed
                  << "):\n";
        for (const auto& [k, v] : res.multiset)
          std::cout << "  R = " << k << "  x" << v << "\n";
      }
      return 0;
    }

    if (*c_or) {
      PcRef g = load_group_file(or_group);
      LoadedAut aut = load_aut_file(or_aut, g);
      FiniteGroupTable table;
      try {
        table = FiniteGroupTable::build(g, or_bound);
      } catch (const TooLarge& e) {
        throw MathError{e.what()};
      }
      BruteForceResult bf = brute_force_reidemeister(table, aut.map);
      ReidemeisterResult r = reidemeister(g, aut.map);
      bool match = r.finite && r.count == bf.count;
      if (or_json) {
        json j;
        j["command"] = "oracle";
        j["group"] = g->name;
        j["aut"] = aut.name;
        j["brute_force_count"] = bf.count.str();
        j["algorithm_count"] = r.finite ? r.count.str() : "infinite";
        j["match"] = match;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "brute force: " << bf.count << " classes\n";
        std::cout << "algorithm:   " << (r.finite ? r.count.str() : "infinite") << " classes\n";
        std::cout << (match ? "MATCH\n" : "MISMATCH\n");
      }
      return match ? 0 : 1;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.msg << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "not applicable: " << e.msg << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
