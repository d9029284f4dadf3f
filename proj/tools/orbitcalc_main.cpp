#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "orbitcalc/batch.hpp"
#include "orbitcalc/groupexpr.hpp"
#include "orbitcalc/orbit.hpp"
#include "orbitcalc/polysym.hpp"
#include "orbitcalc/reebmodel.hpp"
#include "orbitcalc/seqcalc.hpp"
#include "orbitcalc/wreath.hpp"

using namespace orbitcalc;

namespace {

// Stable error-code registry (documented in README):
//   0 ok; 1 domain error (code on stderr); 2 usage/parse error
struct CliError {
  std::string code;
  std::string message;
};

int fail(const CliError& e) {
  std::cerr << e.code << ": " << e.message << "\n";
  return 1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{"E_IO", "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

CliError map_error(const std::exception& e) {
  if (dynamic_cast<const gx::FamilyError*>(&e)) return {"E_FAMILY", e.what()};
  if (dynamic_cast<const gx::ParseError*>(&e)) return {"E_PARSE", e.what()};
  if (dynamic_cast<const sq::BuildError*>(&e)) return {"E_BUILD", e.what()};
  if (dynamic_cast<const poly::SquareFreeError*>(&e))
    return {"E_SQUAREFREE", e.what()};
  if (dynamic_cast<const poly::PolyParseError*>(&e)) return {"E_PARSE", e.what()};
  if (dynamic_cast<const reeb::AmbiguousSymmetry*>(&e))
    return {"E_AMBIGUOUS_SYMMETRY", e.what()};
  if (dynamic_cast<const reeb::ModelError*>(&e)) return {"E_MODEL", e.what()};
  if (dynamic_cast<const engine::UnsupportedSurface*>(&e))
    return {"E_UNSUPPORTED_SURFACE", e.what()};
  if (dynamic_cast<const engine::EmptyXOnDisk*>(&e))
    return {"E_EMPTY_X", e.what()};
  if (dynamic_cast<const engine::UnannotatedTorusSymmetry*>(&e))
    return {"E_UNANNOTATED_TORUS", e.what()};
  if (dynamic_cast<const engine::NotExceptional*>(&e))
    return {"E_NOT_EXCEPTIONAL", e.what()};
  if (dynamic_cast<const engine::InternalInvariantError*>(&e))
    return {"E_INTERNAL", e.what()};
  if (dynamic_cast<const wr::ShapeError*>(&e)) return {"E_SHAPE", e.what()};
  if (dynamic_cast<const wr::SectionError*>(&e)) return {"E_SECTION", e.what()};
  if (dynamic_cast<const wr::SubgroupError*>(&e)) return {"E_SUBGROUP", e.what()};
  if (dynamic_cast<const wr::TableError*>(&e)) return {"E_TABLE", e.what()};
  return {"E_INTERNAL", e.what()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitcalc: deformation invariants of functions on surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable JSON output");
  bool as_text = false;
  app.add_flag("--text", as_text, "human-readable output (default)");

  // classify-poly
  auto* cp = app.add_subcommand("classify-poly",
                                "classify a homogeneous polynomial and its symmetry");
  std::string poly_text;
  cp->add_option("poly", poly_text, "polynomial, e.g. \"x^4+y^4\"")->required();

  // group
  auto* gc = app.add_subcommand("group", "evaluate group-expression invariants");
  std::string group_text;
  gc->add_option("expr", group_text, "expression, e.g. \"Z x (1 wr[3] Z)\"")
      ->required();
  bool g_beta1 = false, g_center = false, g_ab = false, g_order = false,
       g_torsionfree = false, g_normalize = false;
  std::string g_family;
  gc->add_flag("--beta1", g_beta1, "number of Z symbols in the canonical word");
  gc->add_flag("--center", g_center, "center rank");
  gc->add_flag("--ab", g_ab, "abelianization");
  gc->add_flag("--order", g_order, "group order");
  gc->add_flag("--torsion-free", g_torsionfree, "torsion-freeness");
  gc->add_flag("--normalize", g_normalize, "normal form only");
  gc->add_option("--family", g_family, "membership test: ccZ|ccB|clsBt|ccP|clsGt|ccBprime");

  // seq
  auto* sc = app.add_subcommand("seq", "build and inspect short exact sequences");
  std::string seq_script;
  sc->add_option("build", seq_script, "build script, e.g. \"wr(z(3),2)\"")
      ->required();
  std::string s_family;
  sc->add_option("--family", s_family, "membership test: ZZI|ssZBtPt|ssZBP|gssZBP");

  // enumerate
  auto* en = app.add_subcommand("enumerate", "list a family of groups");
  std::string en_family;
  int en_depth = 2;
  long en_param = 2;
  bool en_report = false;
  en->add_option("family", en_family, "ccZ|ccB|clsBt|ccP|clsGt|ccBprime")->required();
  en->add_option("--depth", en_depth, "maximum constructor nesting");
  en->add_option("--param", en_param, "maximum wreath/cyclic parameter");
  en->add_flag("--report", en_report, "include beta1/center/order columns");

  // orbit
  auto* oc = app.add_subcommand("orbit", "compute the orbit invariants of a model");
  std::string model_path, x_sel = "boundary";
  bool with_trace = false;
  oc->add_option("--in", model_path, "model JSON file")->required();
  oc->add_option("--X", x_sel, "boundary|empty");
  oc->add_flag("--trace", with_trace, "include the applied-rule trace");
  bool loose_levels = false;
  oc->add_flag("--loose-levels", loose_levels,
               "exclude level values from branch comparison");

  // dot
  auto* dc = app.add_subcommand("dot", "export a model graph to DOT");
  std::string dot_path;
  bool dot_enhanced = false;
  dc->add_option("--in", dot_path, "model JSON file")->required();
  dc->add_flag("--enhanced", dot_enhanced, "attach framing edges at degenerate extremes");

  // validate
  auto* vc = app.add_subcommand("validate", "run the model diagnostics");
  std::string val_path;
  vc->add_option("--in", val_path, "model JSON file")->required();

  // wreath: finite tables and element arithmetic
  auto* wc = app.add_subcommand("wreath",
                                "inspect a finite group table and its wreath products");
  std::string table_path;
  long wr_m = 0;
  long long wr_scan = 0;
  wc->add_option("--table", table_path,
                 "CSV multiplication table (header = names, body = products)")
      ->required();
  wc->add_option("--wr", wr_m, "also report on G wr[m] Z");
  wc->add_option("--scan", wr_scan, "axiom-scan this many random triples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cp) {
      auto g = poly::parse_poly(poly_text);
      auto cls = poly::classify(g);
      poly::LinStab st{};
      std::string sym_err;
      bool have_sym = g.d >= 2;
      if (have_sym) st = poly::symmetry_index(g);
      if (as_json) {
        std::cout << "{\"poly\":\"" << json_escape(poly::to_string(g))
                  << "\",\"degree\":" << g.d << ",\"type\":\""
                  << poly::crit_type_name(cls.type) << "\",\"p\":" << cls.counts.p
                  << ",\"q\":" << cls.counts.q << ",\"rays\":" << cls.rays;
        if (have_sym) {
          std::cout << ",\"rotation\":\"" << (st.so2 ? "SO(2)" : "Z_" + std::to_string(st.m))
                    << "\",\"dihedral\":" << (st.dihedral ? "true" : "false")
                    << ",\"framing_orbit\":" << st.framing_orbit;
        }
        std::cout << "}\n";
      } else {
        std::cout << "polynomial: " << poly::to_string(g) << "\n";
        std::cout << "degree:     " << g.d << "\n";
        std::cout << "type:       " << poly::crit_type_name(cls.type) << " (p="
                  << cls.counts.p << ", q=" << cls.counts.q << ")\n";
        if (have_sym) {
          std::cout << "rotations:  "
                    << (st.so2 ? "SO(2)" : "cyclic of order " + std::to_string(st.m))
                    << "\n";
          std::cout << "dihedral:   " << (st.dihedral ? "yes" : "no") << "\n";
          if (!st.so2)
            std::cout << "framing:    generic orbit of " << st.framing_orbit
                      << " tangent vectors\n";
        }
      }
      return 0;
    }

    if (*gc) {
      auto e = gx::parse(group_text);
      bool any = g_beta1 || g_center || g_ab || g_order || g_torsionfree ||
                 !g_family.empty();
      if (as_json) {
        std::cout << "{\"normal_form\":\"" << json_escape(gx::to_string(e)) << "\"";
        if (g_beta1 || !any) std::cout << ",\"beta1\":" << gx::beta1(e);
        if (g_center || !any) std::cout << ",\"center_rank\":" << gx::center_rank(e);
        if (g_ab || !any)
          std::cout << ",\"abelianization\":\""
                    << json_escape(gx::to_string(gx::abelianization(e))) << "\"";
        if (g_order || !any) {
          auto o = gx::order(e);
          std::cout << ",\"order\":"
                    << (o.finite ? "\"" + o.value.str() + "\"" : "\"infinite\"");
        }
        if (g_torsionfree || !any)
          std::cout << ",\"torsion_free\":"
                    << (gx::is_torsion_free(e) ? "true" : "false");
        if (!g_family.empty())
          std::cout << ",\"in_" << g_family << "\":"
                    << (gx::in_family(e, gx::family_from_name(g_family)) ? "true" : "false");
        std::cout << "}\n";
        return 0;
      }
      std::cout << "normal form: " << gx::to_string(e) << "\n";
      if (g_normalize && !any) return 0;
      auto show_all = !any && !g_normalize;
      try {
        if (g_beta1 || show_all) std::cout << "beta1:       " << gx::beta1(e) << "\n";
        if (g_center || show_all)
          std::cout << "center rank: " << gx::center_rank(e) << "\n";
        if (g_ab || show_all)
          std::cout << "abelianized: " << gx::to_string(gx::abelianization(e)) << "\n";
      } catch (const gx::FamilyError& fe) {
        if (g_beta1 || g_center || g_ab) throw;
        std::cout << "beta1:       n/a (" << fe.what() << ")\n";
      }
      if (g_order || show_all) {
        auto o = gx::order(e);
        std::cout << "order:       " << (o.finite ? o.value.str() : "infinite") << "\n";
      }
      if (g_torsionfree || show_all)
        std::cout << "torsion-free: " << (gx::is_torsion_free(e) ? "yes" : "no") << "\n";
      if (!g_family.empty())
        std::cout << "in " << g_family << ": "
                  << (gx::in_family(e, gx::family_from_name(g_family)) ? "yes" : "no")
                  << "\n";
      return 0;
    }

    if (*sc) {
      auto s = sq::parse_build(seq_script);
      if (as_json) {
        std::cout << sq::to_json(s) << "\n";
        return 0;
      }
      std::cout << sq::to_string(s) << "\n";
      std::cout << "nearly crystallographic: "
                << (sq::is_nearly_crystallographic(s) ? "yes" : "no") << "\n";
      std::cout << "nearly Bieberbach:       "
                << (sq::is_nearly_bieberbach(s) ? "yes" : "no") << "\n";
      if (!s_family.empty())
        std::cout << "in " << s_family << ": "
                  << (sq::seq_in_family(s, sq::seq_family_from_name(s_family))
                          ? "yes"
                          : "no")
                  << "\n";
      else
        for (auto f : {sq::SeqFamily::ZZI, sq::SeqFamily::ssZBtPt,
                       sq::SeqFamily::ssZBP, sq::SeqFamily::gssZBP})
          std::cout << "in " << sq::seq_family_name(f) << ": "
                    << (sq::seq_in_family(s, f) ? "yes" : "no") << "\n";
      return 0;
    }

    if (*en) {
      auto fam = gx::family_from_name(en_family);
      auto all = gx::enumerate_family(fam, en_depth, en_param);
      if (as_json) {
        std::cout << "[";
        for (size_t i = 0; i < all.size(); ++i) {
          if (i) std::cout << ",";
          std::cout << "\"" << json_escape(gx::to_string(all[i])) << "\"";
        }
        std::cout << "]\n";
        return 0;
      }
      for (auto& e : all) {
        std::cout << gx::to_string(e);
        if (en_report) {
          auto o = gx::order(e);
          std::cout << "\t|G|=" << (o.finite ? o.value.str() : "inf");
          try {
            std::cout << "\tbeta1=" << gx::beta1(e);
          } catch (const gx::FamilyError&) {
            std::cout << "\tbeta1=n/a";
          }
        }
        std::cout << "\n";
      }
      std::cout << "# " << all.size() << " groups\n";
      return 0;
    }

    if (*oc) {
      auto model = reeb::load_model(slurp(model_path));
      if (loose_levels) model.strict_levels = false;
      engine::XSel xs;
      if (x_sel == "boundary") xs = engine::XSel::Boundary;
      else if (x_sel == "empty") xs = engine::XSel::Empty;
      else throw CliError{"E_USAGE", "--X must be boundary or empty"};
      engine::OrbitResult r;
      try {
        r = engine::compute(model, xs);
      } catch (const engine::ValidationFailed& vf) {
        for (auto& d : vf.diags)
          std::cerr << d.code << " at " << d.where << ": " << d.message << "\n";
        return 1;
      }
      if (!with_trace) r.trace.clear();
      if (as_json) {
        std::cout << engine::result_to_json(r) << "\n";
      } else {
        std::cout << "sequence: " << sq::to_string(r.seq) << "\n";
        std::cout << "pi1(orbit): " << gx::to_string(r.pi1) << "\n";
        std::cout << "betti1: " << r.betti1 << "\n";
        std::cout << "stabilizer_id: "
                  << (r.homotopy.stabilizer == engine::StabHomotopy::Circle
                          ? "circle"
                          : "contractible")
                  << "\n";
        std::cout << "diffid factor: "
                  << (r.homotopy.diffid == engine::DiffFactor::Point
                          ? "point"
                          : r.homotopy.diffid == engine::DiffFactor::Circle
                                ? "circle"
                                : "torus")
                  << "\n";
        if (r.homotopy.torus_rank)
          std::cout << "orbit ~ DiffId x T^" << *r.homotopy.torus_rank << "\n";
        if (r.seq_closed && !sq::build_equal(*r.seq_closed, r.seq))
          std::cout << "closed-surface row: " << sq::to_string(*r.seq_closed) << "\n";
        if (r.pi0_stab_full)
          std::cout << "pi0 S(f,dM): " << gx::to_string(*r.pi0_stab_full) << "\n";
        if (!r.exceptional.empty())
          std::cout << "exceptional type: " << r.exceptional << " (orbit ~ "
                    << r.orbit_type << ")\n";
        for (auto& t : r.trace) std::cout << "  . " << t << "\n";
      }
      return 0;
    }

    if (*dc) {
      auto model = reeb::load_model(slurp(dot_path));
      std::cout << reeb::to_dot(model, dot_enhanced);
      return 0;
    }

    if (*wc) {
      auto g = wr::load_table_csv(slurp(table_path));
      long zc = 0, dc = 0;
      for (int i = 0; i < g->size(); ++i) {
        if (g->center_mask()[i]) ++zc;
        if (g->derived_mask()[i]) ++dc;
      }
      std::cout << "elements: " << g->size() << "\n";
      std::cout << "center size: " << zc << "\n";
      std::cout << "derived subgroup size: " << dc << "\n";
      std::cout << "abelianization size: " << g->abelian_coset_count() << "\n";
      if (wr_m >= 1) {
        auto shape = wr::shape_wr_z(wr::shape_base(g), wr_m);
        auto gars = wr::garside(shape)[0];
        std::cout << "Garside element of G wr[" << wr_m
                  << "] Z: " << wr::to_string(shape, gars) << " (central: "
                  << (wr::is_central(shape, gars) ? "yes" : "no") << ")\n";
        if (wr_scan > 0) {
          auto st = batch::axiom_scan(shape, wr_scan, 1, 25);
          std::cout << "axiom scan over " << wr_scan
                    << " triples: " << st.total() << " violations\n";
          if (st.total()) return 1;
        }
      }
      return 0;
    }

    if (*vc) {
      auto model = reeb::load_model(slurp(val_path));
      auto diags = reeb::validate(model);
      if (as_json) {
        std::cout << "[";
        for (size_t i = 0; i < diags.size(); ++i) {
          if (i) std::cout << ",";
          std::cout << "{\"code\":\"" << diags[i].code << "\",\"where\":\""
                    << json_escape(diags[i].where) << "\",\"message\":\""
                    << json_escape(diags[i].message) << "\"}";
        }
        std::cout << "]\n";
      } else {
        for (auto& d : diags)
          std::cout << d.code << " at " << d.where << ": " << d.message << "\n";
        std::cout << (diags.empty() ? "ok\n" : "");
      }
      return diags.empty() ? 0 : 1;
    }
  } catch (const CliError& e) {
    return fail(e);
  } catch (const std::exception& e) {
    return fail(map_error(e));
  }
  return 2;
}
