#include "smallorb/report.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "smallorb/cohomology.hpp"
#include "smallorb/document.hpp"
#include "smallorb/homology.hpp"
#include "smallorb/pi1orb.hpp"
#include "smallorb/quotient.hpp"

namespace smallorb {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex << x;
  return os.str();
}

std::vector<Coefficient> coefficients_from(const std::string& spec) {
  if (spec == "Z") return {Coefficient::Z};
  if (spec == "Q") return {Coefficient::Q};
  if (spec == "Z2") return {Coefficient::Z2};
  if (spec == "all") return {Coefficient::Z, Coefficient::Q, Coefficient::Z2};
  throw std::invalid_argument("unknown coefficient ring '" + spec +
                              "' (expected Z, Q, Z2 or all)");
}

json profile_json(const HomologyProfile& prof) {
  json groups = json::array();
  for (const auto& g : prof.groups) {
    json item;
    item["free_rank"] = g.free_rank;
    json tors = json::array();
    for (const auto& d : g.invariant_factors) tors.push_back(d.str());
    item["invariant_factors"] = std::move(tors);
    item["display"] = g.to_string(prof.coeff);
    groups.push_back(std::move(item));
  }
  json out;
  out["coefficients"] = coefficient_name(prof.coeff);
  out["groups"] = std::move(groups);
  out["display"] = prof.to_string();
  return out;
}

json schar_json(const SCharFunction& f) {
  json rows = json::array();
  for (const auto& v : f.values) {
    json r = json::array();
    for (int b = 0; b < v.size(); ++b) r.push_back(v.get(b) ? 1 : 0);
    rows.push_back(std::move(r));
  }
  return rows;
}

json objective_json(const Objective& obj) {
  json o;
  if (obj.functional) {
    json r = json::array();
    for (const auto& q : *obj.functional) r.push_back(rational_to_string(q));
    o["functional"] = std::move(r);
  } else if (obj.vertex_order) {
    o["order"] = *obj.vertex_order;
  }
  return o;
}

struct TextSink {
  std::vector<std::string> lines;
  void add(const std::string& line) { lines.push_back(line); }
  std::string str() const {
    std::string out;
    for (const auto& l : lines) {
      out += l;
      out += '\n';
    }
    return out;
  }
};

struct Session {
  PolytopeDocument doc;
  FaceLattice lattice;
  json report;
  TextSink text;
  int exit_code = 0;

  void disagreement() { exit_code = std::max(exit_code, 2); }
};

/// The characteristic function a command works with: the document's when
/// present (validated), otherwise the lexicographically first one found.
SCharFunction resolve_schar(Session& s) {
  if (s.doc.schar) {
    ScharCheck chk = validate_schar(s.lattice, *s.doc.schar);
    if (!chk.ok)
      throw std::invalid_argument(
          "document characteristic function is invalid (vertex " +
          std::to_string(chk.vertex) + ", omitted facet " +
          std::to_string(chk.omitted_facet) + ")");
    s.report["schar"] = {{"source", "document"}, {"values", schar_json(*s.doc.schar)}};
    return *s.doc.schar;
  }
  ScharSearchResult found = search_schar(s.lattice, std::size_t(1));
  if (found.found.empty())
    throw std::invalid_argument(
        "no s-characteristic function exists for this polytope; nothing to compute");
  s.report["schar"] = {{"source", "search"}, {"values", schar_json(found.found[0])}};
  s.text.add("characteristic function: lexicographically first from search");
  return found.found[0];
}

PreparedObjective resolve_objective(Session& s, std::uint64_t seed) {
  PreparedObjective prep =
      prepare_objective(s.doc.polytope, s.lattice, s.doc.objective, seed);
  s.report["objective"] = objective_json(prep.objective);
  s.report["objective"]["source"] = s.doc.objective ? "document" : "random";
  s.report["objective"]["seed"] = seed;
  s.report["objective"]["attempts"] = prep.attempts;
  return prep;
}

std::string dims_to_string(const std::vector<long long>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ")";
  return os.str();
}

void cmd_validate(Session& s) {
  json res;
  res["polytope"] = "ok";
  s.text.add("polytope: ok (simple, antichain facets, connected skeleton)");
  bool all_ok = true;
  if (s.doc.schar) {
    ScharCheck chk = validate_schar(s.lattice, *s.doc.schar);
    res["schar"]["ok"] = chk.ok;
    if (!chk.ok) {
      res["schar"]["vertex"] = chk.vertex;
      res["schar"]["omitted_facet"] = chk.omitted_facet;
      s.text.add("schar: INVALID at vertex " + std::to_string(chk.vertex) +
                 " omitting facet " + std::to_string(chk.omitted_facet));
      all_ok = false;
    } else {
      s.text.add("schar: valid");
    }
  }
  if (s.doc.isotropy) {
    IsotropyCheck chk = validate_isotropy(s.lattice, *s.doc.isotropy);
    res["isotropy"]["ok"] = chk.ok;
    res["isotropy"]["loose_ok"] = chk.loose_ok;
    if (chk.ok) {
      s.text.add("isotropy: valid");
    } else if (chk.loose_ok) {
      res["isotropy"]["note"] = "passes only the looser omission range 1 < k < n";
      s.text.add("isotropy: INVALID strictly, but passes the looser reading (1 < k < n): " +
                 chk.first_violation);
      all_ok = false;
    } else {
      s.text.add("isotropy: INVALID: " + chk.first_violation);
      all_ok = false;
    }
    if (chk.ok) {
      SCharFunction reduced = mod2_reduction(*s.doc.isotropy, s.doc.polytope.n);
      bool mod2_ok = validate_schar(s.lattice, reduced).ok;
      res["isotropy"]["mod2_reduction_is_schar"] = mod2_ok;
    }
  }
  s.report["results"] = std::move(res);
  if (!all_ok && s.exit_code == 0) s.exit_code = 1;
}

void cmd_search(Session& s, const CommandOptions& opts) {
  ScharSearchResult r = search_schar(s.lattice, opts.limit);
  json res;
  res["found"] = json::array();
  for (const auto& f : r.found) res["found"].push_back(schar_json(f));
  res["count"] = r.found.size();
  res["nodes_visited"] = r.nodes_visited;
  res["pruned"] = r.pruned;
  res["candidate_space"] = r.candidate_space.str();
  res["exhausted"] = r.exhausted;
  s.report["results"] = std::move(res);
  s.text.add("search: " + std::to_string(r.found.size()) + " function(s); " +
             (r.exhausted ? "exhaustive" : "stopped at limit") + "; candidate space " +
             r.candidate_space.str() + ", nodes visited " +
             std::to_string(r.nodes_visited) + ", pruned " + std::to_string(r.pruned));
  size_t show = std::min<std::size_t>(r.found.size(), 5);
  for (size_t i = 0; i < show; ++i) {
    std::string line = "  theta[" + std::to_string(i) + "] =";
    for (const auto& v : r.found[i].values) line += " " + v.to_string();
    s.text.add(line);
  }
  if (r.found.size() > show)
    s.text.add("  ... (" + std::to_string(r.found.size() - show) + " more)");
}

void cmd_hvector(Session& s) {
  auto f = f_vector(s.lattice);
  auto h = h_vector(s.lattice);
  bool ds = true;
  for (size_t i = 0; i < h.size(); ++i) ds = ds && (h[i] == h[h.size() - 1 - i]);
  json res;
  res["f_vector"] = f;
  res["h_vector"] = h;
  res["dehn_sommerville"] = ds;
  res["face_count"] = s.lattice.face_count();
  s.report["results"] = std::move(res);
  s.text.add("f-vector: " + dims_to_string(f));
  s.text.add("h-vector: " + dims_to_string(h));
  s.text.add(std::string("Dehn-Sommerville h_i = h_{n-i}: ") + (ds ? "holds" : "BROKEN"));
  if (!ds) s.disagreement();
}

void cmd_homology(Session& s, const CommandOptions& opts, bool with_oracle) {
  SCharFunction schar = resolve_schar(s);
  PreparedObjective prep = resolve_objective(s, opts.seed);
  ChainComplexZ chain = build_chain_complex(s.lattice, prep.skeleton, prep.cells);
  auto h = h_vector(s.lattice);

  std::optional<DeltaComplex> oracle;
  if (with_oracle) oracle.emplace(build_quotient_complex(s.lattice, schar));

  json checks = json::array();
  for (Coefficient c : coefficients_from(opts.coeff)) {
    HomologyProfile thm = theorem_homology(h, s.doc.polytope.n, c);
    HomologyProfile cw = homology_from_chain(chain, c);
    json item;
    item["coefficients"] = coefficient_name(c);
    item["theorem"] = profile_json(thm);
    item["cw_snf"] = profile_json(cw);
    bool agree = (thm == cw);
    std::string oracle_text;
    if (oracle) {
      HomologyProfile orc = simplicial_homology(*oracle, c);
      item["oracle"] = profile_json(orc);
      agree = agree && (orc == thm);
      oracle_text = ", oracle " + orc.to_string();
    }
    item["verdict"] = agree ? "agree" : "disagree";
    s.text.add("H_*(X; " + coefficient_name(c) + "): theorem " + thm.to_string() +
               ", cw " + cw.to_string() + oracle_text + " -> " +
               (agree ? "agree" : "DISAGREE"));
    if (!agree) s.disagreement();
    checks.push_back(std::move(item));
  }
  s.report["results"]["homology"] = std::move(checks);
  s.report["results"]["euler_mod2"] = euler_mod2(h, s.doc.polytope.n);
  s.text.add("mod-2 Euler characteristic: " +
             std::to_string(euler_mod2(h, s.doc.polytope.n)));
}

void cmd_toric(Session& s, const CommandOptions& opts) {
  PreparedObjective prep = resolve_objective(s, opts.seed);
  ChainComplexZ chain = build_toric_chain_complex(s.lattice, prep.skeleton);
  auto h = h_vector(s.lattice);
  const int n = s.doc.polytope.n;
  HomologyProfile thm = theorem_toric_homology(h, n);
  HomologyProfile snf = homology_from_chain(chain, Coefficient::Z);
  bool agree = (thm == snf);
  long long chi = toric_euler_characteristic(h, n);
  json res;
  res["ranks"] = chain.ranks;
  res["theorem"] = profile_json(thm);
  res["cw_snf"] = profile_json(snf);
  res["euler_characteristic"] = chi;
  res["verdict"] = agree ? "agree" : "disagree";
  s.report["results"]["toric"] = std::move(res);
  s.text.add("toric cell ranks: " + dims_to_string(std::vector<long long>(
                                        chain.ranks.begin(), chain.ranks.end())));
  s.text.add("H_*(S(P,psi); Z): theorem " + thm.to_string() + ", cw " + snf.to_string() +
             " -> " + (agree ? "agree" : "DISAGREE"));
  s.text.add("toric Euler characteristic: " + std::to_string(chi));
  if (!agree) s.disagreement();
}

void cmd_oracle(Session& s, const CommandOptions& opts) {
  SCharFunction schar = resolve_schar(s);
  DeltaComplex d = build_quotient_complex(s.lattice, schar);
  json res;
  std::vector<long long> counts;
  for (int k = 0; k <= d.n; ++k) counts.push_back(d.simplex_count(k));
  res["simplex_counts"] = counts;
  res["orbifold_points"] = d.orbifold_point_count();
  res["euler_characteristic"] = d.euler_characteristic();
  json profs = json::array();
  for (Coefficient c : coefficients_from(opts.coeff)) {
    HomologyProfile prof = simplicial_homology(d, c);
    profs.push_back(profile_json(prof));
    s.text.add("H_*(X; " + coefficient_name(c) + ") = " + prof.to_string());
  }
  res["homology"] = std::move(profs);
  s.report["results"]["oracle"] = std::move(res);
  s.text.add("simplices by dimension: " + dims_to_string(counts));
  s.text.add("orbifold points: " + std::to_string(d.orbifold_point_count()) +
             ", Euler characteristic: " + std::to_string(d.euler_characteristic()));
}

void cmd_ring(Session& s, const CommandOptions& opts) {
  if (s.doc.polytope.n % 2 != 0)
    throw std::invalid_argument("ring: even dimension required");
  SCharFunction schar = resolve_schar(s);
  PreparedObjective prep = resolve_objective(s, opts.seed);
  RingCalculator calc(s.doc.polytope, s.lattice, schar, prep.skeleton);
  RingPresentation ring = calc.ring_presentation();
  GradedDimensions dims = calc.graded_dimensions(ring);
  auto pairing = calc.pairing_diagnostic();
  TransversalityReport trans =
      check_transversality_properties(s.lattice, prep.skeleton);

  json res;
  res["generator_count"] = ring.generator_count;
  res["generator_vertices"] = ring.generator_vertices;
  res["relation_monomials"] = ring.relation_monomials;
  json binoms = json::array();
  for (const auto& [a, b] : ring.relation_binomials) binoms.push_back({a, b});
  res["relation_binomials"] = std::move(binoms);
  res["implied_zero_above_degree"] = ring.implied_zero_above_degree;
  res["graded_dimensions"] = dims.dims;
  res["expected_dimensions"] = dims.expected;
  res["graded_match"] = dims.matches;
  res["pairing_nondegenerate"] = pairing.nondegenerate;
  if (!pairing.error.empty()) res["pairing_error"] = pairing.error;
  res["transversality"] = {{"ok", trans.ok()},
                           {"property1_failures", trans.property1_failures},
                           {"property2_failures", trans.property2_failures},
                           {"fhat_basis_failures", trans.fhat_basis_failures},
                           {"fhat_counterexamples", trans.fhat_counterexamples}};
  s.report["results"]["ring"] = std::move(res);

  s.text.add("ring: Q[w_1..w_" + std::to_string(ring.generator_count) + "]/I with " +
             std::to_string(ring.relation_monomials.size()) + " monomial and " +
             std::to_string(ring.relation_binomials.size()) + " binomial relations" +
             "; monomials of degree > " + std::to_string(ring.implied_zero_above_degree) +
             " implied zero by grading");
  s.text.add("graded dimensions: " + dims_to_string(dims.dims) + " expected " +
             dims_to_string(dims.expected) + (dims.matches ? " (match)" : " (MISMATCH)"));
  s.text.add(std::string("H^2 x H^{n-2} pairing nondegenerate: ") +
             (pairing.nondegenerate ? "yes" : "NO"));
  s.text.add(std::string("transversality properties: ") +
             (trans.ok() ? "all checks pass" : "FAILURES (see report)"));
  if (!trans.fhat_counterexamples.empty())
    s.text.add("  note: " + std::to_string(trans.fhat_counterexamples.size()) +
               " non-F-hat face(s) without an F-hat decomposition (recorded)");
  if (!dims.matches || !trans.ok()) s.disagreement();
}

void cmd_pi1orb(Session& s) {
  SCharFunction schar = resolve_schar(s);
  CoxeterPresentation cox = coxeter_presentation(s.lattice);
  XiMap xi = xi_map(cox, schar);
  KernelPresentation ker = kernel_presentation(cox, xi);

  bool images_zero = true;
  for (const auto& sg : ker.schreier_generators)
    images_zero = images_zero && xi.word_image(sg.word).is_zero();

  json res;
  res["coxeter"]["generators"] = cox.generator_count;
  json pairs = json::array();
  for (auto [i, j] : cox.commuting_pairs) pairs.push_back({i, j});
  res["coxeter"]["commuting_pairs"] = std::move(pairs);
  res["cosets"] = ker.coset_count;
  res["schreier_generator_count"] = ker.schreier_generators.size();
  res["rewritten_relator_count"] = ker.rewritten_relators.size();
  res["schreier_images_zero"] = images_zero;
  json gens = json::array();
  for (const auto& sg : ker.schreier_generators)
    gens.push_back({{"coset", sg.coset}, {"generator", sg.generator}, {"word", sg.word}});
  res["schreier_generators"] = std::move(gens);
  res["rewritten_relators"] = ker.rewritten_relators;
  s.report["results"]["pi1orb"] = std::move(res);

  s.text.add("Coxeter group: " + std::to_string(cox.generator_count) + " generators, " +
             std::to_string(cox.commuting_pairs.size()) + " commuting pairs");
  s.text.add("kernel of xi: index " + std::to_string(ker.coset_count) + ", " +
             std::to_string(ker.schreier_generators.size()) + " Schreier generators, " +
             std::to_string(ker.rewritten_relators.size()) + " rewritten relators");
  s.text.add(std::string("all Schreier generators map to 0 under xi: ") +
             (images_zero ? "yes" : "NO"));
  if (!images_zero) s.disagreement();
}

void cmd_crosscheck(Session& s, const CommandOptions& opts) {
  cmd_homology(s, opts, /*with_oracle=*/true);
}

}  // namespace

CommandResult run_command(const CommandOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  CommandResult result;
  json& report = result.report;
  report["command"] = opts.subcommand;
  report["format_version"] = 1;

  try {
    if (opts.subcommand == "generate") {
      PolytopeDocument doc = generate(opts.family, opts.params);
      std::string text = serialize_polytope(doc);
      report["results"]["document"] = json::parse(text);
      result.rendered = (opts.format == "json") ? report.dump(2) + "\n" : text;
      result.exit_code = 0;
      return result;
    }

    std::string text = opts.input_text;
    if (text.empty()) {
      if (opts.input_path.empty())
        throw std::invalid_argument("an input document is required");
      if (opts.input_path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
      } else {
        std::ifstream in(opts.input_path);
        if (!in) throw std::invalid_argument("cannot open input '" + opts.input_path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
      }
    }
    report["input"] = opts.input_path.empty() ? "<inline>" : opts.input_path;
    report["digest"] = "fnv1a:" + hex64(fnv1a(text));
    report["seed"] = opts.seed;

    Session s;
    s.doc = parse_polytope(text);
    s.lattice = build_face_lattice(s.doc.polytope);
    s.report = std::move(report);
    s.report["polytope"] = {{"name", s.doc.polytope.name},
                            {"dim", s.doc.polytope.n},
                            {"vertices", s.doc.polytope.vertex_count},
                            {"facets", s.doc.polytope.facets.size()}};
    s.text.add(opts.subcommand + " " + s.doc.polytope.name + " (dim " +
               std::to_string(s.doc.polytope.n) + ", " +
               std::to_string(s.doc.polytope.vertex_count) + " vertices, " +
               std::to_string(s.doc.polytope.facets.size()) + " facets)");

    if (opts.subcommand == "validate")
      cmd_validate(s);
    else if (opts.subcommand == "search")
      cmd_search(s, opts);
    else if (opts.subcommand == "hvector")
      cmd_hvector(s);
    else if (opts.subcommand == "homology")
      cmd_homology(s, opts, /*with_oracle=*/false);
    else if (opts.subcommand == "toric")
      cmd_toric(s, opts);
    else if (opts.subcommand == "ring")
      cmd_ring(s, opts);
    else if (opts.subcommand == "pi1orb")
      cmd_pi1orb(s);
    else if (opts.subcommand == "oracle")
      cmd_oracle(s, opts);
    else if (opts.subcommand == "crosscheck")
      cmd_crosscheck(s, opts);
    else
      throw std::invalid_argument("unknown subcommand '" + opts.subcommand + "'");

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    s.report["timing_ms"] = elapsed;
    s.text.add("elapsed: " + std::to_string(elapsed) + " ms");
    result.report = std::move(s.report);
    result.exit_code = s.exit_code;
    result.rendered =
        (opts.format == "json") ? result.report.dump(2) + "\n" : s.text.str();
    return result;
  } catch (const std::invalid_argument& e) {
    result.exit_code = 1;
    result.report["error"] = e.what();
    result.rendered = std::string("error: ") + e.what() + "\n";
    return result;
  } catch (const NonGenericObjective& e) {
    result.exit_code = 1;
    result.report["error"] = e.what();
    result.rendered = std::string("error: ") + e.what() + "\n";
    return result;
  }
}

}  // namespace smallorb
