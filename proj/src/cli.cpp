#include "pcalc/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "pcalc/error.hpp"
#include "pcalc/io.hpp"
#include "pcalc/random.hpp"

namespace pcalc {

namespace {

struct Outcome {
  int code = 0;
  std::string text;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw ParseError("cannot write '" + path + "'");
    o << data;
    if (!o.flush()) throw ParseError("cannot write '" + path + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw ParseError("cannot write '" + path + "'");
}

Json load(const std::string& path) {
  if (path.empty()) throw ParseError("--in is required");
  return parse_json(read_file(path));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<GaussRational> parse_point(const std::string& s) {
  std::vector<GaussRational> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_scalar(part));
  return out;
}

Assignment coordinate_assignment(const TablePtr& t, const std::string& point) {
  const auto values = parse_point(point);
  if (values.size() != t->num_coordinates())
    throw ParseError("--point needs " + std::to_string(t->num_coordinates()) + " values");
  Assignment a;
  for (std::size_t k = 0; k < values.size(); ++k) a[t->name(k)] = values[k];
  return a;
}

Assignment parameter_assignment(const std::string& text) {
  Assignment a;
  if (text.empty()) return a;
  for (const auto& part : split(text, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ParseError("--params expects name=value pairs");
    a[part.substr(0, eq)] = parse_scalar(part.substr(eq + 1));
  }
  return a;
}

std::string line(const std::string& s) { return s + "\n"; }

std::string exponent_text(const TablePtr& t, const Exponents& e) {
  if (e.empty()) return "0";
  return Polynomial::monomial(t, e).str();
}

}  // namespace

int run_selftest(std::uint64_t seed, int cases, std::ostream& out) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  std::uniform_int_distribution<int> deg(0, 3);
  const RandomShape shape{2, 2, 3, true};
  std::map<std::string, int> failures{{"supercommutativity", 0}, {"antisymmetry", 0}, {"leibniz", 0},
                                      {"jacobi", 0}, {"bv", 0}, {"d_squared", 0}};
  auto sign = [](int e) { return GaussRational(e % 2 == 0 ? 1 : -1); };
  for (int c = 0; c < cases; ++c) {
    TablePtr t = make_table(dim(rng));
    const int n = static_cast<int>(t->num_coordinates());
    auto draw = [&] { return random_multivector(t, std::min(deg(rng), n), rng, shape); };
    const Multivector A = draw(), B = draw(), C = draw();
    const int a = A.degree(), b = B.degree(), cd = C.degree();
    auto same = [](const Multivector& x, const Multivector& y) { return (x - y).is_zero(); };
    if (!same(wedge(A, B), sign(a * b) * wedge(B, A))) ++failures["supercommutativity"];
    if (!same(schouten(A, B), -(sign((a - 1) * (b - 1)) * schouten(B, A)))) ++failures["antisymmetry"];
    if (!same(schouten(A, wedge(B, C)), wedge(schouten(A, B), C) + sign((a - 1) * b) * wedge(B, schouten(A, C))))
      ++failures["leibniz"];
    const Multivector j = sign((a - 1) * (cd - 1)) * schouten(A, schouten(B, C)) +
                          sign((b - 1) * (a - 1)) * schouten(B, schouten(C, A)) +
                          sign((cd - 1) * (b - 1)) * schouten(C, schouten(A, B));
    if (!j.is_zero()) ++failures["jacobi"];
    const Multivector bv = curl(wedge(A, B)) - sign(b) * wedge(curl(A), B) - wedge(A, curl(B));
    if (!same(bv, sign(b) * schouten(A, B))) ++failures["bv"];
    const auto f = random_polynomial(t, rng, shape);
    if (!exterior_derivative(exterior_derivative(differential(f))).is_zero()) ++failures["d_squared"];
  }
  int total = 0;
  out << "seed: " << seed << "\n";
  for (const auto& [name, f] : failures) {
    out << name << ": " << (cases - f) << "/" << cases << "\n";
    total += f;
  }
  return total;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Poisson calculus"};
  app.name("pcalc");
  app.require_subcommand(0, 1);

  bool selftest = false;
  std::uint64_t seed = 0;
  int cases = 50;
  auto* seed_opt = app.add_option("--seed", seed, "Seed for --selftest (fallback: POISSON_SEED)");
  app.add_flag("--selftest", selftest, "Run the randomised algebra-law checks");
  app.add_option("--cases", cases, "Cases per law for --selftest")->check(CLI::PositiveNumber);

  std::string in, out_path, with, f_text, g_text, point, params, unit_text, emit, t_text = "0", family_path;
  int two_k = 0, coordinate = 0, chart = 0, from_chart = 0, dim = 0, k = 0, symbolic = 0, r = 3;
  TrackOptions topt;
  double jet_tol = 1e-6;

  std::map<std::string, std::function<Outcome()>> handlers;
  auto verb = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--out", out_path, "Write the result here instead of standard output");
    return sub;
  };
  auto with_in = [&](CLI::App* sub) { sub->add_option("--in", in, "Input document")->required(); return sub; };

  // parse
  with_in(verb("parse", "Read a document and print it canonically"));
  handlers["parse"] = [&] {
    const Json doc = load(in);
    const std::string kind = document_kind(doc);
    if (kind == "multivector") {
      if (doc.contains("integrable")) return Outcome{0, canonical_dump(to_json(poisson_from_json(doc)))};
      return Outcome{0, canonical_dump(to_json(multivector_from_json(doc)))};
    }
    if (kind == "form") return Outcome{0, canonical_dump(to_json(form_from_json(doc)))};
    if (kind == "diagonal") return Outcome{0, canonical_dump(to_json(diagonal_from_json(doc)))};
    if (kind == "family") return Outcome{0, canonical_dump(to_json(family_from_json(doc)))};
    throw ParseError("unknown document kind '" + kind + "'");
  };

  auto* sch = with_in(verb("schouten", "Schouten bracket [A, B]"));
  sch->add_option("--with", with, "Second multivector document")->required();
  handlers["schouten"] = [&] {
    const Multivector a = multivector_from_json(load(in));
    const Multivector b = rebind(multivector_from_json(load(with)), a.table());
    return Outcome{0, canonical_dump(to_json(schouten(a, b)))};
  };

  with_in(verb("jacobi", "Print [Pi, Pi]; exit 1 unless it vanishes"));
  handlers["jacobi"] = [&] {
    PoissonStructure pi = poisson_from_json(load(in));
    const Multivector j = jacobi_check(pi);
    if (j.is_zero()) return Outcome{0, line("0")};
    return Outcome{1, canonical_dump(to_json(j))};
  };

  auto* cu = with_in(verb("curl", "Curl for the volume form u dx1^...^dxn"));
  cu->add_option("--unit", unit_text, "Polynomial u (default 1)");
  handlers["curl"] = [&] {
    const Multivector a = multivector_from_json(load(in));
    if (unit_text.empty()) return Outcome{0, canonical_dump(to_json(curl(a)))};
    const CurlResult c = curl(a, parse_polynomial(unit_text, a.table()));
    Json doc{{"polynomial_part", to_json(c.polynomial_part)},
             {"correction", to_json(c.correction)},
             {"unit", c.unit.str()}};
    return Outcome{0, canonical_dump(doc)};
  };

  auto* br = with_in(verb("bracket", "Poisson bracket {f, g}"));
  br->add_option("--f", f_text)->required();
  br->add_option("--g", g_text)->required();
  handlers["bracket"] = [&] {
    const PoissonStructure pi = poisson_from_json(load(in));
    const Polynomial f = parse_polynomial(f_text, pi.table()), g = parse_polynomial(g_text, pi.table());
    return Outcome{0, line(poisson_bracket(pi, f, g).str())};
  };

  auto* ham = with_in(verb("hamiltonian", "Hamiltonian vector field of f"));
  ham->add_option("--f", f_text)->required();
  handlers["hamiltonian"] = [&] {
    const PoissonStructure pi = poisson_from_json(load(in));
    return Outcome{0, canonical_dump(to_json(hamiltonian(pi, parse_polynomial(f_text, pi.table()))))};
  };

  auto* deg = with_in(verb("degeneracy", "Generators of the degeneracy ideal I_2k"));
  deg->add_option("--two-k", two_k, "Even index 2k")->required();
  handlers["degeneracy"] = [&] {
    const PoissonStructure pi = poisson_from_json(load(in));
    const DegeneracyIdeal ideal = degeneracy_ideal(pi, two_k);
    Json gens = Json::array();
    for (const auto& g : ideal.generators) gens.push_back(g.str());
    Json doc{{"two_k", two_k}, {"generators", gens}, {"monomial_gcd", exponent_text(pi.table(), ideal.monomial_gcd())}};
    return Outcome{0, canonical_dump(doc)};
  };

  auto* rk = with_in(verb("rank", "Rank of Pi at an exact point"));
  rk->add_option("--point", point, "Comma-separated exact coordinates")->required();
  rk->add_option("--params", params, "name=value,... for parameters");
  handlers["rank"] = [&] {
    const PoissonStructure pi = poisson_from_json(load(in));
    return Outcome{0, line(std::to_string(
                          rank_at(pi, coordinate_assignment(pi.table(), point), parameter_assignment(params))))};
  };

  auto* rs = with_in(verb("restrict", "Restrict to the hyperplane x_i = 0"));
  rs->add_option("--coordinate", coordinate, "1-based coordinate index")->required();
  handlers["restrict"] = [&] {
    const PoissonStructure pi = poisson_from_json(load(in));
    if (coordinate < 1 || static_cast<std::size_t>(coordinate) > pi.dimension())
      throw ParseError("--coordinate out of range");
    return Outcome{0, canonical_dump(to_json(restrict_hyperplane(pi, static_cast<std::size_t>(coordinate - 1))))};
  };

  auto* inv = with_in(verb("invariant", "Is {f = 0} a Poisson hypersurface? exit 1 if not"));
  inv->add_option("--f", f_text)->required();
  handlers["invariant"] = [&] {
    const PoissonStructure pi = poisson_from_json(load(in));
    const bool ok = invariant_hypersurface(pi, parse_polynomial(f_text, pi.table()));
    return Outcome{ok ? 0 : 1, line(ok ? "true" : "false")};
  };

  auto* ch = with_in(verb("chart", "Move Pi between affine charts of projective space"));
  ch->add_option("--chart", chart, "Target chart")->required();
  ch->add_option("--from", from_chart, "Source chart (default 0)");
  handlers["chart"] = [&] {
    const PoissonStructure pi = poisson_from_json(load(in));
    if (chart < 0 || from_chart < 0) throw ParseError("chart indices are non-negative");
    return Outcome{0, canonical_dump(to_json(chart_transition(pi, static_cast<std::size_t>(from_chart),
                                                              static_cast<std::size_t>(chart))))};
  };

  auto* dg = verb("diagonal", "Diagonal Poisson structure of a spec");
  dg->add_option("--in", in, "Diagonal spec document");
  dg->add_option("--symbolic", symbolic, "Use symbolic lambda on N coordinates");
  auto spec_of = [&] {
    if (symbolic > 0) {
      if (symbolic > 32) throw ParseError("--symbolic out of range");
      return DiagonalSpec::symbolic(static_cast<std::size_t>(symbolic));
    }
    return diagonal_from_json(load(in));
  };
  handlers["diagonal"] = [&] { return Outcome{0, canonical_dump(to_json(make_diagonal(spec_of())))}; };

  auto* pf = verb("pfaffian", "Pfaffian of the lambda matrix");
  pf->add_option("--in", in, "Diagonal spec document");
  pf->add_option("--symbolic", symbolic, "Use symbolic lambda on N coordinates");
  handlers["pfaffian"] = [&] { return Outcome{0, line(pfaffian(lambda_matrix(spec_of())).str())}; };

  auto* mu = verb("mu", "Curl eigenvalues mu_i");
  mu->add_option("--in", in, "Diagonal spec document");
  mu->add_option("--symbolic", symbolic, "Use symbolic lambda on N coordinates");
  handlers["mu"] = [&] {
    const DiagonalSpec spec = spec_of();
    Json list = Json::array();
    Polynomial sum(spec.table());
    for (const auto& m : curl_eigenvalues(spec)) {
      list.push_back(m.str());
      sum += m;
    }
    return Outcome{0, canonical_dump(Json{{"mu", list}, {"sum", sum.str()}})};
  };

  auto* lf = verb("logform", "Annihilating log 1-form (odd n)");
  lf->add_option("--in", in, "Diagonal spec document");
  lf->add_option("--symbolic", symbolic, "Use symbolic lambda on N coordinates");
  handlers["logform"] = [&] {
    const LogForm form = log_annihilator(spec_of());
    Json res = Json::array();
    for (const auto& x : form.residues) res.push_back(x.str());
    Json doc{{"residues", res},
             {"residue_at_infinity", form.residue_at_infinity().str()},
             {"cleared", to_json(form.cleared())}};
    return Outcome{0, canonical_dump(doc)};
  };

  auto* rg = verb("rigidity", "Solve the hyperplane-invariance system on N coordinates");
  rg->add_option("--dim", dim, "N")->required()->check(CLI::Range(2, 12));
  rg->add_option("--emit-basis", emit, "Write the basis bivectors to FILE");
  handlers["rigidity"] = [&] {
    const RigiditySystem sys = diagonality_constraints(static_cast<std::size_t>(dim));
    const RigiditySolution sol = solve_rigidity(sys);
    std::string text = "unknowns: " + std::to_string(sys.unknowns.size()) + "\n" +
                       "constraints: " + std::to_string(sys.constraints.size()) + "\n" +
                       "dimension: " + std::to_string(sol.dimension()) + "\n" +
                       "diagonal: " + (sol.diagonal ? "true" : "false") + "\n";
    if (!sol.diagonal) text += "diagnostic: " + sol.diagnostic + "\n";
    if (!emit.empty()) {
      Json basis = Json::array();
      for (const auto& b : sol.bivectors) basis.push_back(to_json(b));
      write_file(emit, canonical_dump(basis));
    }
    return Outcome{sol.diagonal ? 0 : 1, text};
  };

  auto* sx = verb("simplex", "Monomials of degree k+1 with multiplicity k at the simplex vertices");
  sx->add_option("--k", k, "k >= 1")->required()->check(CLI::Range(1, 12));
  handlers["simplex"] = [&] {
    const MonomialSurvivors s = simplex_multiplicity_filter(static_cast<unsigned>(k));
    std::vector<std::string> names;
    for (int c = 0; c <= k; ++c) names.push_back("x" + std::to_string(c));
    TablePtr t = make_table(names);
    std::string text = "examined: " + std::to_string(s.examined) + "\n";
    for (const auto& e : s.survivors) text += "survivor: " + Polynomial::monomial(t, e).str() + "\n";
    const bool unique = s.survivors.size() == 1;
    text += std::string("unique: ") + (unique ? "true" : "false") + "\n";
    return Outcome{unique ? 0 : 1, text};
  };

  auto* tr = verb("track", "Track the degenerate singular point of a family");
  tr->add_option("--family", family_path, "Family document")->required();
  tr->add_option("--t", t_text, "Parameter value (exact or decimal, may be complex)");
  tr->add_option("--tol", topt.tolerance, "Newton residual tolerance");
  tr->add_option("--jet-tol", topt.jet_tolerance, "Jet vanishing tolerance");
  tr->add_option("--step", topt.initial_step, "Initial continuation step");
  tr->add_option("--min-step", topt.min_step, "Smallest continuation step");
  tr->add_option("--max-iter", topt.max_iterations, "Newton iterations per step");
  tr->add_option("--radius", topt.radius, "Largest admissible |t|");
  handlers["track"] = [&] {
    const DeformationFamily fam = family_from_json(load(family_path));
    const TrackResult res = track_degenerate_point(fam, parse_scalar(t_text).to_complex(), topt);
    return Outcome{res.certified(topt) ? 0 : 1, canonical_dump(to_json(res, topt))};
  };

  auto* jt = with_in(verb("jet", "Least jet order with a nonzero coefficient at a point"));
  jt->add_option("--point", point, "Comma-separated coordinates (exact or decimal)")->required();
  jt->add_option("--params", params, "name=value,... for parameters");
  jt->add_option("--r", r, "Highest order examined (<= 3)")->check(CLI::Range(0, 3));
  jt->add_option("--tol", jet_tol, "Vanishing tolerance");
  handlers["jet"] = [&] {
    const Multivector a = multivector_from_json(load(in));
    const auto& t = a.table();
    const auto coords = parse_point(point);
    if (coords.size() != t->num_coordinates())
      throw ParseError("--point needs " + std::to_string(t->num_coordinates()) + " values");
    std::vector<Complex> slots;
    for (const auto& c : coords) slots.push_back(c.to_complex());
    const Assignment p = parameter_assignment(params);
    for (const auto& name : t->parameters()) {
      auto it = p.find(name);
      if (it == p.end()) throw DomainError("unassigned variables: " + name);
      slots.push_back(it->second.to_complex());
    }
    const int order = jet_vanishing(a, slots, r, jet_tol);
    return Outcome{0, line(order > r ? ">=" + std::to_string(order) : std::to_string(order))};
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (selftest) {
      if (!app.get_subcommands().empty()) throw ParseError("--selftest takes no verb");
      const std::uint64_t s = seed_opt->count() ? seed : seed_from_env(1);
      std::ostringstream buf;
      const int failures = run_selftest(s, cases, buf);
      out << buf.str();
      return failures == 0 ? 0 : 1;
    }
    if (app.get_subcommands().empty()) {
      err << "error: a verb is required\n" << app.help();
      return 2;
    }
    const Outcome o = handlers.at(app.get_subcommands().front()->get_name())();
    if (out_path.empty()) out << o.text;
    else write_file(out_path, o.text);
    return o.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace pcalc
