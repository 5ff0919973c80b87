// relhyp: command-line front end. JSON reports on stdout, human summaries on stderr.
// Exit codes: 0 success, 1 computational error, 2 usage error.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "relhyp/automata.hpp"
#include "relhyp/cusp.hpp"
#include "relhyp/electric.hpp"
#include "relhyp/extension.hpp"
#include "relhyp/fftp.hpp"
#include "relhyp/homology.hpp"
#include "relhyp/hyp2.hpp"
#include "relhyp/presentation_io.hpp"

using namespace relhyp;
using json = nlohmann::ordered_json;

namespace {

constexpr char const* kVersion = "0.1.0";
constexpr int kSchema = 1;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string pres;
  std::size_t radius = 3;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  bool timing = false;
  // geodesics, electric-area
  std::string word;
  // fftp-automaton
  std::size_t delta = 2;
  std::string height = "length";
  std::int64_t c = 1;
  // electric-area
  std::size_t k = 2;
  std::size_t budget = 0;
  // bcp-scan, thinness
  std::size_t samples = 200;
  // cusp
  double psi = 3, omega = 1.0 / 3;
  std::size_t depth_cap = 6;
  std::string from, to;
  std::size_t from_depth = 0, to_depth = 0;
  bool export_complex = false;
  std::size_t clip = 0;
  // dehn-fill
  std::string matrix, fillings, convention = "skew", wishful;
  // cocycle-check
  std::string cocycle = "zero", cocycle_file;
  std::int64_t section_c = 0;  // 0: no maximizing section
};

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RelativePresentation load(Options const& o) {
  if (o.pres.empty()) throw usage_error("a presentation file is required");
  return parse_presentation(read_file(o.pres));
}

std::string rat(Rat const& x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

std::string integer(Int const& x) { return x.str(); }

json word_json(Alphabet const& A, Word const& w) { return A.format(w).empty() ? "1" : A.format(w); }

Word parse_word(Alphabet const& A, std::string const& text) { return text == "1" ? Word{} : A.parse(text); }

json presentation_json(RelativePresentation const& rp) {
  json fams = json::array();
  for (auto const& f : rp.families()) {
    json gens = json::array();
    for (Letter y : f.generators)
      if (y % 2 == 0) gens.push_back(rp.alphabet().name(y));
    fams.push_back({{"name", f.name}, {"generators", gens}});
  }
  json rels = json::array();
  for (auto const& r : rp.base().relators()) rels.push_back(rp.alphabet().format(r));
  json gens = json::array();
  for (Letter x = 0; x < rp.alphabet().size(); x += 2) gens.push_back(rp.alphabet().name(x));
  return {{"generators", gens}, {"relators", rels}, {"parabolic", fams}};
}

// ---- commands -------------------------------------------------------------

json cmd_ball(Options const& o, json& in) {
  auto rp = load(o);
  in["presentation"] = presentation_json(rp);
  in["radius"] = o.radius;
  GroupBall B(rp.base(), o.radius);
  json layers = json::array(), elements = json::array();
  for (std::size_t r = 0; r <= o.radius; ++r) layers.push_back(B.layer(r).size());
  for (Vertex v = 0; v < B.size(); ++v) elements.push_back({{"id", v}, {"word", word_json(B.alphabet(), B.word(v))}, {"distance", B.distance(v)}});
  std::cerr << "ball of radius " << o.radius << ": " << B.size() << " vertices\n";
  return {{"vertices", B.size()}, {"layers", layers}, {"elements", elements}};
}

json cmd_geodesics(Options const& o, json& in) {
  auto rp = load(o);
  in["presentation"] = presentation_json(rp);
  in["radius"] = o.radius;
  in["word"] = o.word;
  GroupBall B(rp.base(), o.radius);
  Word w = parse_word(B.alphabet(), o.word);
  auto v = B.locate(w);
  if (!v) throw out_of_ball("geodesics: '" + o.word + "' lies outside the ball of radius " + std::to_string(o.radius));
  json geos = json::array();
  for (auto const& g : geodesic_words(B, *v)) geos.push_back(word_json(B.alphabet(), g));
  bool geo = w.size() == B.distance(*v) && B.evaluate(w).has_value();
  std::cerr << o.word << ": distance " << B.distance(*v) << ", " << geos.size() << " geodesic words\n";
  return {{"element", word_json(B.alphabet(), B.word(*v))},
          {"distance", B.distance(*v)},
          {"is_geodesic", geo},
          {"geodesic_words", geos}};
}

json cmd_fftp(Options const& o, json& in) {
  auto rp = load(o);
  in["presentation"] = presentation_json(rp);
  in["radius"] = o.radius;
  in["delta"] = o.delta;
  in["height"] = o.height;
  HeightFunction H;
  if (o.height == "length") {
    H = negative_length();
  } else if (o.height == "electric") {
    if (rp.families().empty()) throw usage_error("--height electric needs a [parabolic] block");
    in["c"] = o.c;
    H = negative_electric_length(rp, o.c);
  } else {
    throw usage_error("--height must be 'length' or 'electric'");
  }
  GroupBall B(rp.base(), o.radius);
  auto M = build_fftp_automaton(B, o.delta, H, KernelRoute::automatic, 100000, o.threads);
  auto m = minimize(M.dfa);
  json table = json::array();
  for (State s = 0; s < m.states(); ++s) {
    json row = json::object();
    for (Letter x = 0; x < m.symbols(); ++x) row[B.alphabet().name(x)] = m.next(s, x);
    table.push_back({{"state", s}, {"accepting", m.accepting(s)}, {"next", row}});
  }
  std::cerr << "fftp automaton: " << M.dfa.states() << " states, " << live_state_count(m) << " live after minimizing\n";
  return {{"height", H.name},
          {"cap", M.cap},
          {"states", M.dfa.states()},
          {"minimized_states", m.states()},
          {"live_states", live_state_count(m)},
          {"prefix_closed", prefix_closed(M.dfa)},
          {"kernel_elements", M.kernel.n()},
          {"minimized", {{"initial", m.initial()}, {"transitions", table}}}};
}

json cmd_area(Options const& o, json& in) {
  auto rp = load(o);
  in["presentation"] = presentation_json(rp);
  in["radius"] = o.radius;
  in["word"] = o.word;
  in["k"] = o.k;
  std::size_t n_max = o.budget ? o.budget : 6;
  in["budget"] = n_max;
  GroupBall B(rp.base(), o.radius);
  ElectricBall eb(B, rp);
  Word w = parse_word(rp.alphabet(), o.word);
  auto ex = electric_area_exact(rp, w, n_max, &eb);
  auto up = electric_area_upper(eb, w, o.k);
  std::cerr << "electric area of " << o.word << ": exact " << (ex.area ? std::to_string(*ex.area) : "unknown")
            << ", upper " << up.bound << "\n";
  return {{"electric_length", electric_length(rp, w)},
          {"exact", ex.area ? json(*ex.area) : json(nullptr)},
          {"exact_nodes", ex.nodes},
          {"exact_reason", ex.reason},
          {"upper", up.bound},
          {"upper_reductions", up.reductions},
          {"upper_per_reduction", up.per_reduction},
          {"upper_terminal", up.terminal}};
}

json cmd_bcp(Options const& o, json& in) {
  auto rp = load(o);
  in["presentation"] = presentation_json(rp);
  in["radius"] = o.radius;
  in["samples"] = o.samples;
  GroupBall B(rp.base(), o.radius);
  ElectricBall eb(B, rp);
  auto r = bcp_scan(eb, o.samples, o.seed, 1.0, 0.0, o.threads);
  std::cerr << "bcp scan: " << r.pairs << " pairs, constant " << r.constant() << ", unresolved " << r.unresolved << "\n";
  return {{"pairs", r.pairs},
          {"max_entry_gap", r.max_entry_gap},
          {"max_exit_gap", r.max_exit_gap},
          {"max_unilateral_travel", r.max_unilateral_travel},
          {"constant", r.constant()},
          {"unresolved", r.unresolved}};
}

CuspParams cusp_params(Options const& o, json& in) {
  CuspParams p;
  p.psi = o.psi;
  p.omega = o.omega;
  p.depth_cap = o.depth_cap;
  p.validate();
  in["psi"] = o.psi;
  in["omega"] = o.omega;
  in["depth_cap"] = o.depth_cap;
  return p;
}

json complex_json(CuspComplex const& C) {
  json verts = json::array(), edges = json::array();
  for (std::size_t v = 0; v < C.size(); ++v) {
    if (!C.graph.alive(v)) continue;
    verts.push_back({{"id", v}, {"base", C.vertices[v].base}, {"depth", C.vertices[v].depth}});
    for (auto const& e : C.graph.edges(v))
      if (v < e.to) edges.push_back({{"u", v}, {"v", e.to}, {"length", e.length}});
  }
  return {{"vertices", verts}, {"edges", edges}};
}

// The cusp is built over the ball of H given by the presentation; vertex id = base * (N + 1) + depth.
std::size_t cusp_vertex(GroupBall const& H, CuspParams const& p, std::string const& w, std::size_t depth) {
  if (depth > p.depth_cap) throw range_error("depth " + std::to_string(depth) + " exceeds the depth cap");
  auto v = H.locate(parse_word(H.alphabet(), w));
  if (!v) throw out_of_ball("'" + w + "' lies outside the base ball");
  return *v * (p.depth_cap + 1) + depth;
}

bool is_integers(RelativePresentation const& rp) {
  return rp.alphabet().size() == 2 && rp.base().relators().empty();
}

json cmd_cusp_distance(Options const& o, json& in) {
  auto rp = load(o);
  in["presentation"] = presentation_json(rp);
  in["radius"] = o.radius;
  auto p = cusp_params(o, in);
  std::string from = o.from.empty() ? "1" : o.from, to = o.to.empty() ? "1" : o.to;
  in["from"] = {{"word", from}, {"depth", o.from_depth}};
  in["to"] = {{"word", to}, {"depth", o.to_depth}};
  GroupBall H(rp.base(), o.radius);
  auto C = build_cusp_complex(H, p);
  auto u = cusp_vertex(H, p, from, o.from_depth), v = cusp_vertex(H, p, to, o.to_depth);
  auto path = C.graph.shortest_path(u, v);
  json steps = json::array();
  for (auto x : path) steps.push_back({{"base", word_json(H.alphabet(), H.word(C.vertices[x].base))}, {"depth", C.depth(x)}});
  json out{{"dijkstra", dijkstra_distance(C, u, v)}, {"path", steps}};
  // the closed form describes a horizontal line, i.e. H = Z
  if (is_integers(rp)) {
    auto L = distance(H, C.vertices[u].base, C.vertices[v].base);
    if (L) {
      auto cf = geodesic_length_closed_form(static_cast<double>(*L), o.from_depth, o.to_depth, p);
      out["closed_form"] = {{"shadow_length", *L}, {"length", cf.length}, {"depth", cf.depth},
                            {"optimal_depth", optimal_depth(static_cast<double>(*L), p)}};
    }
  }
  if (o.export_complex) out["complex"] = complex_json(C);
  std::cerr << "cusp distance: " << out["dijkstra"].get<double>() << "\n";
  return out;
}

json cmd_thinness(Options const& o, json& in) {
  auto rp = load(o);
  in["presentation"] = presentation_json(rp);
  in["radius"] = o.radius;
  auto p = cusp_params(o, in);
  std::size_t samples = o.budget ? o.budget : 2000;
  in["budget"] = samples;
  GroupBall H(rp.base(), o.radius);
  auto C = build_cusp_complex(H, p);
  auto r = measure_thinness(C.graph, samples, o.seed, o.threads);
  double bound = delta_constant(p) + 2;
  std::cerr << "measured delta " << r.delta << " (lower bound) vs " << bound << " over " << r.triples << " triples\n";
  json out{{"delta", r.delta},
           {"triples", r.triples},
           {"exhaustive", r.exhaustive},
           {"worst_triple", {r.worst[0], r.worst[1], r.worst[2]}},
           {"delta_constant", delta_constant(p)},
           {"bound", bound},
           {"within_bound", r.delta <= bound}};
  if (o.export_complex) out["complex"] = complex_json(C);
  return out;
}

json cmd_clip_track(Options const& o, json& in) {
  auto rp = load(o);
  in["presentation"] = presentation_json(rp);
  in["radius"] = o.radius;
  auto p = cusp_params(o, in);
  in["clip"] = o.clip;
  if (o.clip > p.depth_cap) throw range_error("clip-track: --clip exceeds the depth cap");
  GroupBall H(rp.base(), o.radius);
  std::string from = o.from.empty() ? "1" : o.from;
  std::string to = o.to;
  if (to.empty()) to = word_json(H.alphabet(), H.word(H.layer(o.radius).front()));
  in["from"] = from;
  in["to"] = to;
  auto full = build_cusp_complex(H, p);
  auto clipped = clip(full, o.clip);
  auto u = cusp_vertex(H, p, from, 0), v = cusp_vertex(H, p, to, 0);
  auto alpha = full.graph.shortest_path(u, v);
  auto beta = clipped.graph.shortest_path(u, v);
  auto gamma = deepen_replace(full, beta, o.clip);
  double h = path_hausdorff(full, gamma, alpha);
  std::cerr << "clip " << o.clip << ": |beta| = " << clipped.graph.path_length(beta) << ", hausdorff(gamma, alpha) = " << h
            << "\n";
  return {{"alpha_length", full.graph.path_length(alpha)},
          {"beta_length", clipped.graph.path_length(beta)},
          {"gamma_length", full.graph.path_length(gamma)},
          {"gamma_vertices", gamma.size()},
          {"hausdorff", h},
          {"clipped_vertices", clipped.graph.alive_count()}};
}

json cmd_hyp2(Options const&, json&) {
  auto r = hyp2::run_sweeps();
  std::cerr << "hyp2 sweeps: " << (r.all() ? "pass" : "FAIL") << " over " << r.cases << " cases\n";
  return {{"pass", r.all()},
          {"cases", r.cases},
          {"right_triangle", r.right_triangle},
          {"ideal_midpoint", r.ideal_midpoint},
          {"isosceles", r.isosceles},
          {"projection", r.projection},
          {"worst_gap_margin", r.worst_gap_margin},
          {"worst_midpoint_margin", r.worst_midpoint_margin},
          {"worst_projection_error", r.worst_projection_error}};
}

Fillings parse_fillings(std::string const& text, std::size_t n) {
  Fillings f;
  std::stringstream ss(text);
  std::string item;
  std::size_t col = 1;
  while (std::getline(ss, item, ',')) {
    std::string t;
    for (char ch : item)
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t == "inf" || t == "-") {
      f.push_back(std::nullopt);
    } else {
      Rat r = parse_rational({t, 1, col});
      f.push_back(complete_filling(make_filling(numerator(r), denominator(r))));
    }
    col += item.size() + 1;
  }
  if (f.size() != n)
    throw usage_error("--fillings: expected " + std::to_string(n) + " entries, got " + std::to_string(f.size()));
  return f;
}

json matrix_json(Matrix<Rat> const& M) {
  json out = json::array();
  for (auto const& row : M) {
    json r = json::array();
    for (auto const& x : row) r.push_back(rat(x));
    out.push_back(r);
  }
  return out;
}

json cmd_dehn_fill(Options const& o, json& in) {
  if (o.matrix.empty()) throw usage_error("dehn-fill needs --matrix");
  LinkingConvention conv;
  if (o.convention == "skew")
    conv = LinkingConvention::skew;
  else if (o.convention == "symmetric")
    conv = LinkingConvention::symmetric;
  else
    throw usage_error("--convention must be 'skew' or 'symmetric'");
  auto K = LinkingMatrix(integer_matrix(parse_matrix(read_file(o.matrix))), conv);
  in["matrix"] = matrix_json(to_rational(K.k));
  in["convention"] = to_string(conv);
  json out;
  Fillings f;
  if (!o.wishful.empty()) {
    if (!o.fillings.empty()) throw usage_error("--wishful and --fillings are exclusive");
    Rat t = parse_rational({o.wishful, 1, 1});
    in["wishful"] = rat(t);
    auto w = wishful_fillings(K, t);
    json coeffs = json::array();
    for (auto const& c : w.coefficients) coeffs.push_back(rat(c));
    out["wishful"] = {{"coefficients", coeffs}, {"min_norm", integer(w.min_norm)}};
    for (auto const& x : w.fillings) f.push_back(complete_filling(x));
  } else {
    if (o.fillings.empty()) throw usage_error("dehn-fill needs --fillings or --wishful");
    f = parse_fillings(o.fillings, K.n());
  }
  json fj = json::array();
  for (auto const& x : f)
    fj.push_back(x ? json{{"u", integer(x->u)}, {"v", integer(x->v)}, {"p", integer(x->pq->first)}, {"q", integer(x->pq->second)}}
                   : json(nullptr));
  in["fillings"] = fj;
  auto B = filling_matrix(K, f);
  auto cert = filling_nullity_certificate(B.B);
  auto h = h1_presentation(K, f);
  json torsion = json::array();
  for (auto const& t : h.torsion) torsion.push_back(integer(t));
  std::cerr << "filling nullity " << cert.nullity << ", rank H1 >= " << h.rank_lower_bound << ", m = " << h.m
            << (h.inequality_holds ? " (inequality holds)" : " (inequality FAILS)") << "\n";
  out["filling_matrix"] = {{"rows", B.rows}, {"integer_rows", B.integer_rows}, {"B", matrix_json(B.B)}};
  out["certificate"] = {{"nullity", cert.nullity}, {"alpha", matrix_json(cert.alpha)}};
  out["h1"] = {{"rank_lower_bound", h.rank_lower_bound},
               {"torsion", torsion},
               {"m", h.m},
               {"nullity", h.nullity},
               {"inequality_holds", h.inequality_holds}};
  return out;
}

json cmd_cocycle_check(Options const& o, json& in) {
  auto rp = load(o);
  in["presentation"] = presentation_json(rp);
  in["radius"] = o.radius;
  in["cocycle"] = o.cocycle;
  GroupBall B(rp.base(), o.radius);
  auto T = product_table(B, o.threads);
  Cocycle s;
  if (o.cocycle == "zero") {
    s = zero_cocycle(T);
  } else if (o.cocycle == "heisenberg") {
    if (B.alphabet().size() != 4) throw usage_error("--cocycle heisenberg needs two generators");
    s = heisenberg_cocycle(B, T);
  } else if (o.cocycle == "length") {
    std::vector<std::int64_t> rho;
    for (Vertex v = 0; v < B.size(); ++v) rho.push_back(static_cast<std::int64_t>(B.distance(v)));
    s = section_to_cocycle(rho, T).sigma;
  } else if (o.cocycle == "file") {
    if (o.cocycle_file.empty()) throw usage_error("--cocycle file needs --cocycle-file");
    in["cocycle_file"] = o.cocycle_file;
    s = parse_cocycle(read_file(o.cocycle_file), B, T);
  } else {
    throw usage_error("--cocycle must be zero, heisenberg, length or file");
  }
  auto c = cocycle_check(s, T, o.threads);
  auto cb = is_coboundary(s, B, T);
  auto wb = weakly_bounded_report(s, B);
  json spreads = json::array();
  for (auto const& sp : wb.spreads) spreads.push_back({{"letter", B.alphabet().name(sp.letter)}, {"right", sp.right}, {"left", sp.left}});
  json out{{"cocycle_identity", c.ok},
           {"triples", c.triples},
           {"witness", c.witness ? json{word_json(B.alphabet(), B.word((*c.witness)[0])),
                                        word_json(B.alphabet(), B.word((*c.witness)[1])),
                                        word_json(B.alphabet(), B.word((*c.witness)[2]))}
                                 : json(nullptr)},
           {"coboundary", cb.coboundary},
           {"coboundary_integral", cb.integral},
           {"max_abs", s.max_abs()},
           {"weakly_bounded", {{"spreads", spreads}, {"constant", wb.constant}, {"verdict", wb.verdict}}}};
  if (o.section_c > 0) {
    if (rp.families().empty()) throw usage_error("--c needs a [parabolic] block");
    in["c"] = o.section_c;
    ExtensionModel E(B, T, s);
    std::size_t cap = 2 * o.radius;
    auto S = maximizing_section(E, rp, o.section_c, cap);
    json sec{{"cap", cap}, {"T", S.T}, {"K", S.K}, {"precondition_ok", S.precondition_ok}, {"stable", S.stable}};
    if (S.stable) {
      auto w = weakly_bounded_report(E, S, T);
      if (w.section_bound)
        sec["section_bound"] = {{"max_abs", w.section_bound->max_abs}, {"pairs", w.section_bound->pairs}, {"ok", w.section_bound->ok}};
    }
    out["maximizing_section"] = sec;
  }
  std::cerr << "cocycle " << o.cocycle << ": identity " << (c.ok ? "holds" : "FAILS") << " on " << c.triples
            << " triples, coboundary " << (cb.coboundary ? "yes" : "no") << ", spread " << wb.constant << "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relhyp: computations on relatively hyperbolic groups"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool needs_pres) {
    if (needs_pres) sub->add_option("presentation", o.pres, "presentation file")->required();
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--threads", o.threads, "worker cap")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", o.timing, "add wall-clock timing to the report");
  };
  auto cusp = [&](CLI::App* sub) {
    sub->add_option("--psi", o.psi, "horizontal shrink factor");
    sub->add_option("--omega", o.omega, "vertical scale");
    sub->add_option("--depth-cap", o.depth_cap, "truncation depth N");
    sub->add_flag("--export-complex", o.export_complex, "include the complex in the report");
  };

  std::map<std::string, std::function<json(Options const&, json&)>> handlers;
  auto add = [&](char const* name, char const* help, auto fn) {
    handlers[name] = fn;
    return app.add_subcommand(name, help);
  };

  auto* ball = add("ball", "enumerate a ball of the Cayley graph", cmd_ball);
  common(ball, true);
  ball->add_option("--radius", o.radius, "ball radius")->required();

  auto* geo = add("geodesics", "distance and geodesic words for an element", cmd_geodesics);
  common(geo, true);
  geo->add_option("--radius", o.radius, "ball radius");
  geo->add_option("--word", o.word, "word ('1' for the identity)")->required();

  auto* fftp = add("fftp-automaton", "build the falsification-by-fellow-traveler automaton", cmd_fftp);
  common(fftp, true);
  fftp->add_option("--radius", o.radius, "ball radius");
  fftp->add_option("--delta", o.delta, "fellow-travel constant");
  fftp->add_option("--height", o.height, "length | electric");
  fftp->add_option("--c", o.c, "electric length weight");

  auto* area = add("electric-area", "exact and upper electric area of a trivial word", cmd_area);
  common(area, true);
  area->add_option("--radius", o.radius, "ball radius");
  area->add_option("--word", o.word, "trivial word")->required();
  area->add_option("--k", o.k, "locality for the upper bound");
  area->add_option("--budget", o.budget, "largest area tried by the exact search (default 6)");

  auto* bcp = add("bcp-scan", "bounded coset penetration scan over random endpoint pairs", cmd_bcp);
  common(bcp, true);
  bcp->add_option("--radius", o.radius, "ball radius");
  bcp->add_option("--samples", o.samples, "endpoint pairs");

  auto* cd = add("cusp-distance", "distance in the cusp complex over a ball of H", cmd_cusp_distance);
  common(cd, true);
  cd->add_option("--radius", o.radius, "base ball radius");
  cusp(cd);
  cd->add_option("--from", o.from, "start word");
  cd->add_option("--to", o.to, "end word");
  cd->add_option("--from-depth", o.from_depth, "start depth");
  cd->add_option("--to-depth", o.to_depth, "end depth");

  auto* thin = add("thinness", "sampled thin-triangle constant of the cusp complex", cmd_thinness);
  common(thin, true);
  thin->add_option("--radius", o.radius, "base ball radius");
  cusp(thin);
  thin->add_option("--budget", o.budget, "sampled triples (default 2000)");

  auto* ct = add("clip-track", "geodesic in the clipped complex against the full geodesic", cmd_clip_track);
  common(ct, true);
  ct->add_option("--radius", o.radius, "base ball radius");
  cusp(ct);
  ct->add_option("--clip", o.clip, "clip depth n")->required();
  ct->add_option("--from", o.from, "start word");
  ct->add_option("--to", o.to, "end word (default: first element of the outer layer)");

  auto* h2 = add("hyp2-check", "upper half-plane sweeps", cmd_hyp2);
  common(h2, false);

  auto* df = add("dehn-fill", "filling matrix, nullity certificate and H1 of a filling", cmd_dehn_fill);
  common(df, false);
  df->add_option("--matrix", o.matrix, "linking matrix file");
  df->add_option("--fillings", o.fillings, "comma separated u/v or inf per component");
  df->add_option("--convention", o.convention, "skew | symmetric");
  df->add_option("--wishful", o.wishful, "growth factor t for wishful fillings");

  auto* cc = add("cocycle-check", "cocycle identity, coboundary test and spreads on a ball", cmd_cocycle_check);
  common(cc, true);
  cc->add_option("--radius", o.radius, "ball radius");
  cc->add_option("--cocycle", o.cocycle, "zero | heisenberg | length | file");
  cc->add_option("--cocycle-file", o.cocycle_file, "triples 'g h value'");
  cc->add_option("--c", o.section_c, "maximizing-section weight (needs a [parabolic] block)");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  std::string name = sub->get_name();

  json report;
  report["tool"] = "relhyp";
  report["version"] = kVersion;
  report["schema"] = kSchema;
  report["command"] = name;
  json in = json::object();
  if (o.threads != 1) in["threads"] = o.threads;
  auto t0 = std::chrono::steady_clock::now();
  try {
    json results = handlers.at(name)(o, in);
    report["inputs"] = in;
    report["seed"] = o.seed;
    report["results"] = results;
  } catch (usage_error const& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (relhyp::error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (o.timing)
    report["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  std::cout << report.dump(2) << "\n";
  return 0;
}
