#include "nemcone/curves.hpp"
#include "nemcone/fixtures.hpp"
#include "nemcone/io.hpp"
#include "nemcone/mg.hpp"
#include "nemcone/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace nemcone;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsage = 2;

// Invalid input or an unsupported request; exits with the usage code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 0;
  int m = 0;
  int g = 0;
  int l = 0;
  int curve = 0;
  std::string which;
  std::string target = "mg1";
  std::string rep = "rays";
  std::string format = "text";
  std::string map;
  std::string vector;
  std::string out;
  std::string fixtures;
  std::vector<std::string> sections;
  bool list = false;
  bool verbose = false;
};

// A cone together with the names of its coordinates.
struct NamedCone {
  std::string name;
  std::vector<std::string> basis;
  Cone cone;
};

Fixtures fixtures_from(const Options& o) {
  return load_fixtures(o.fixtures.empty() ? std::nullopt : std::optional<std::string>(o.fixtures));
}

MgTarget parse_target(const std::string& t) {
  if (t == "mg") return MgTarget::Mg;
  if (t == "mg1") return MgTarget::Mg1;
  throw UsageError("--target must be mg or mg1, got '" + t + "'");
}

SpaceId space_from(const Options& o) {
  if (o.n < 4) throw UsageError("n ≥ 4 required");
  if (o.m < 0 || o.m > o.n) throw UsageError("0 ≤ m ≤ n required");
  return make_space(o.n, o.m);
}

RatVector parse_vector(const std::string& text) {
  std::vector<Rational> entries;
  std::stringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      entries.push_back(parse_rational(tok));
    } catch (const std::exception&) {
      throw UsageError("cannot parse '" + tok + "' as a rational");
    }
  }
  if (entries.empty()) throw UsageError("--vector is empty");
  return make_vector(entries);
}

std::vector<std::string> m21_basis() { return {"Δirr", "Δ1", "W"}; }

void refuse_large_m(const SpaceId& s) {
  if (s.m >= 3 && !(s.n == 5 && s.m == 3))
    throw UsageError("unsupported for " + to_string(s) +
                     ": for n ≥ 6 and m ≥ 3 the boundary divisors generate a proper subcone of the "
                     "effective cone, so no cone is computed");
}

NamedCone build_cone(const Options& o, const Fixtures& fx) {
  const std::string& w = o.which;
  if (w == "eff" || w == "nem" || w == "nef-fixture") {
    const SpaceId s = space_from(o);
    refuse_large_m(s);
    if (s.m > 3) throw UsageError("m ≤ 3 required");
    std::vector<std::string> basis = basis_names(s);
    if (w == "eff") return {"Eff(" + to_string(s) + ")", basis, eff_cone(s)};
    if (w == "nef-fixture") {
      try {
        return {"Nef(" + to_string(s) + ")", basis, Cone::from_rays(picard_number(s), fx.nef_rays(s.n, s.m))};
      } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
      }
    }
    if (s.m >= 2)
      throw UsageError("unsupported for " + to_string(s) +
                       ": Nem(X_{n,2}) is only known to lie in the simplicial cone on the classes "
                       "b_i, b*_j excluding b_2");
    return {"Nem(" + to_string(s) + ")", basis, nem_hrep(s)};
  }
  if (w == "hyperelliptic") {
    if (o.g < 2) throw UsageError("--g ≥ 2 required");
    const SpaceId s = make_space(2 * o.g + 2, 0);
    return {"hyperelliptic pullback cone on " + to_string(s), basis_names(s), hyperelliptic_pullback_cone(o.g)};
  }
  if (w == "mg1") {
    if (o.g < 2) throw UsageError("--g ≥ 2 required");
    const MgTarget t = parse_target(o.target);
    Mg1Report r = mg1_inequality_family(o.g, o.n, t);
    std::vector<std::string> basis = mg_basis_names(r.space);
    return {"pushed Nem inequalities on " + to_string(r.space), basis, r.cone};
  }
  if (w.rfind("m21-", 0) == 0) {
    M21Cones c = m21_cones(fx.nef_rays(7, 1));
    if (w == "m21-eff") return {"Eff(M_{2,1})", m21_basis(), c.eff};
    if (w == "m21-push-nem") return {"p_*Nem(X_{7,1})", m21_basis(), c.push_nem};
    if (w == "m21-push-nef") return {"p_*Nef(X_{7,1})", m21_basis(), c.push_nef};
    if (w == "m21-nef") return {"Nef(M_{2,1})", m21_basis(), c.nef};
  }
  throw UsageError("unknown cone '" + w +
                   "'; expected eff, nem, nef-fixture, hyperelliptic, mg1, m21-eff, m21-push-nem, "
                   "m21-push-nef or m21-nef");
}

// Completes the representation asked for.
Cone with_rep(Cone c, const std::string& rep) {
  if (rep == "rays") {
    if (!c.vrep) return hrep_to_vrep(c);
    // Generators may be redundant; keep the extremal ones.
    Cone v;
    v.ambient_dim = c.ambient_dim;
    v.vrep = c.vrep;
    c.vrep = vrep_to_hrep(v).vrep;
    return c;
  }
  if (rep == "hrep") return c.hrep ? c : vrep_to_hrep(c);
  throw UsageError("--rep must be hrep or rays, got '" + rep + "'");
}

std::string render_rows(const std::vector<RatVector>& rows) {
  std::string out;
  for (const auto& r : rows) out += "  " + format_vector(primitive(r)) + "\n";
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (size_t k = 0; k < v.size(); ++k) out += (k ? " " : "") + v[k];
  return out;
}

std::string render_cone(const NamedCone& nc, const std::string& rep, const std::string& format) {
  Cone c = with_rep(nc.cone, rep);
  const bool h = rep == "hrep";
  if (format == "porta") return porta_write(c, h ? PortaRep::hrep : PortaRep::vrep);
  if (format == "json") {
    Cone only;
    only.ambient_dim = c.ambient_dim;
    if (h) only.hrep = c.hrep;
    else only.vrep = c.vrep;
    return dump(cone_to_json(only));
  }
  if (format == "latex") {
    if (h) {
      std::vector<RatVector> rows;
      for (const auto& r : c.hrep->inequalities) rows.push_back(primitive(r));
      return latex_inequalities(rows, nc.basis);
    }
    return latex_rays(c.vrep->rays, nc.basis);
  }
  if (format != "text") throw UsageError("unknown format '" + format + "'; expected text, porta, json or latex");
  std::string out = nc.name + "\nbasis: " + join(nc.basis) + "\n";
  if (h) {
    out += "inequalities (" + std::to_string(c.hrep->inequalities.size()) + "), each row · x ≥ 0:\n";
    out += render_rows(c.hrep->inequalities);
    if (!c.hrep->equations.empty()) out += "equations:\n" + render_rows(c.hrep->equations);
  } else {
    out += "rays (" + std::to_string(c.vrep->rays.size()) + "):\n" + render_rows(c.vrep->rays);
    if (!c.vrep->lineality.empty()) out += "lineality:\n" + render_rows(c.vrep->lineality);
  }
  return out;
}

std::string render_certificate(const Cone& c, const Certificate& cert) {
  std::ostringstream out;
  out << "certificate: " << to_string(cert.kind) << "\n";
  if (cert.kind == CertificateKind::non_membership) {
    out << "  separating functional " << format_vector(cert.functional) << "\n";
    return out.str();
  }
  for (const auto& [i, q] : cert.coefficients)
    out << "  " << to_string(q) << " · " << format_vector(c.vrep->rays[i]) << "\n";
  for (const auto& [i, q] : cert.line_coefficients)
    out << "  " << to_string(q) << " · line " << format_vector(c.vrep->lineality[i]) << "\n";
  return out.str();
}

int run_space(const Options& o) {
  const SpaceId s = space_from(o);
  const auto labels = enumerate_boundaries(s);
  std::cout << to_string(s) << "\n";
  std::cout << "boundaries: " << labels.size() << "\n";
  std::cout << "Picard number: " << picard_number(s) << "\n";
  if (s.m > 3 || (s.m == 3 && s.n < 5)) {
    std::cout << "no ordered basis is fixed for this space\n";
    return kPass;
  }
  BasisSpec b = relations_and_basis(s);
  std::cout << "basis:";
  for (size_t k = 0; k < b.ordered_basis.size(); ++k)
    std::cout << " " << b.basis_names[k] << "=" << label_name(b.ordered_basis[k]);
  std::cout << "\nrelations (" << b.relations.size() << "):\n";
  for (const auto& rel : b.relations) {
    std::string line;
    for (Index k = 0; k < rel.size(); ++k) {
      if (rel(k) == 0) continue;
      line += (line.empty() ? (rel(k) < 0 ? "-" : "") : (rel(k) < 0 ? " - " : " + "));
      Rational a = abs(rel(k));
      if (a != 1) line += to_string(a) + "·";
      line += label_name(b.labels[static_cast<size_t>(k)]);
    }
    std::cout << "  " << line << " = 0\n";
  }
  return kPass;
}

int run_cone(const Options& o) {
  Fixtures fx = fixtures_from(o);
  std::cout << render_cone(build_cone(o, fx), o.rep, o.format);
  return kPass;
}

int run_member(const Options& o) {
  Fixtures fx = fixtures_from(o);
  NamedCone nc = build_cone(o, fx);
  const RatVector v = parse_vector(o.vector);
  if (v.size() != nc.cone.ambient_dim)
    throw UsageError("--vector has " + std::to_string(v.size()) + " entries, expected " +
                     std::to_string(nc.cone.ambient_dim));
  Cone c = canonical(with_rep(nc.cone, "rays"));
  Certificate cert = contains(c, v);
  const bool ok = verify_certificate(c, v, cert);
  std::cout << format_vector(v) << (cert.is_member() ? " lies in " : " does not lie in ") << nc.name << "\n";
  std::cout << render_certificate(c, cert);
  std::cout << "certificate verified: " << (ok ? "yes" : "no") << "\n";
  if (!ok) return kCheckFailure;
  return cert.is_member() ? kPass : kCheckFailure;
}

int run_push(const Options& o) {
  LinearMap map;
  std::optional<SpaceId> source;
  if (o.map == "q" || o.map == "r" || o.map == "s" || o.map == "pi_star") {
    AttachMapSpec spec;
    spec.kind = o.map == "q" ? AttachMapSpec::Kind::q
                : o.map == "r" ? AttachMapSpec::Kind::r
                : o.map == "s" ? AttachMapSpec::Kind::s
                               : AttachMapSpec::Kind::pi_star;
    spec.l = o.l;
    spec.n = o.n;
    spec.m = o.m;
    validate(spec);
    map = attach_pushforward(spec);
  } else if (o.map == "hyperelliptic") {
    map = hyperelliptic_pushforward(o.g);
    source = make_space(2 * o.g + 2, 0);
  } else if (o.map == "pointed") {
    map = pointed_pushforward(o.g, o.n, parse_target(o.target));
    source = make_space(2 * o.n + 3, 1);
  } else if (o.map == "m21") {
    map = m21_pushforward();
  } else {
    throw UsageError("unknown map '" + o.map + "'; expected q, r, s, pi_star, hyperelliptic, pointed or m21");
  }
  if (o.format == "json" && o.vector.empty() && o.curve == 0) {
    std::cout << dump(map_to_json(map));
    return kPass;
  }
  RatVector v;
  if (o.curve != 0) {
    if (!source) throw UsageError("--curve is available for the hyperelliptic and pointed maps");
    v = curve_Ck(*source, o.curve).coords;
  } else if (!o.vector.empty()) {
    v = parse_vector(o.vector);
  } else {
    std::cout << map.source << " -> " << map.target << "\n";
    for (Index r = 0; r < map.matrix.rows(); ++r) {
      std::cout << "  " << map.target_basis[static_cast<size_t>(r)] << ":";
      for (Index c = 0; c < map.matrix.cols(); ++c) std::cout << " " << to_string(map.matrix(r, c));
      std::cout << "\n";
    }
    return kPass;
  }
  if (v.size() != map.matrix.cols())
    throw UsageError("input has " + std::to_string(v.size()) + " entries, the map expects " +
                     std::to_string(map.matrix.cols()));
  const RatVector image = map.apply(v);
  if (o.format == "json") {
    Json j;
    j["map"] = map_to_json(map);
    Json in = Json::array(), outv = Json::array();
    for (Index k = 0; k < v.size(); ++k) in.push_back(to_string(v(k)));
    for (Index k = 0; k < image.size(); ++k) outv.push_back(to_string(image(k)));
    j["input"] = in;
    j["image"] = outv;
    std::cout << dump(j);
    return kPass;
  }
  std::cout << map.source << " -> " << map.target << "\n";
  std::cout << "input (" << join(map.source_basis) << "): " << format_vector(v) << "\n";
  std::cout << "image (" << join(map.target_basis) << "): " << format_vector(image) << "\n";
  return kPass;
}

int run_counterexample(const Options& o) {
  Fixtures fx = fixtures_from(o);
  const int n = o.n == 0 ? 6 : o.n;
  if (n < 6) throw UsageError("n ≥ 6 required");
  Counterexample ce = counterexample_Ftau(n, fx.sum("F_tau"));
  const SpaceId s = make_space(n, 3);
  std::cout << "F_tau pushed to " << to_string(s) << "\n";
  std::cout << "basis: " << join(basis_names(s)) << "\n";
  std::cout << "class: " << format_vector(ce.pushed.coords) << "\n";
  std::cout << (ce.certificate.is_member() ? "lies in" : "does not lie in")
            << " the cone generated by the " << ce.boundary_generators.size() << " boundary classes\n";
  if (!ce.certificate.is_member())
    std::cout << "separating functional: " << format_vector(ce.certificate.functional) << "\n";
  std::cout << "certificate verified: " << (ce.certificate_verified ? "yes" : "no") << "\n";
  return ce.certificate_verified ? kPass : kCheckFailure;
}

int run_verify_paper(const Options& o) {
  if (o.list) {
    for (const auto& c : criteria()) std::cout << c.id << " " << c.group << ": " << c.title << "\n";
    return kPass;
  }
  std::vector<std::string> filter;
  for (const auto& s : o.sections) {
    std::stringstream in(s);
    for (std::string tok; std::getline(in, tok, ',');)
      if (!tok.empty()) filter.push_back(tok);
  }
  std::vector<const Criterion*> selected;
  try {
    selected = select_criteria(filter);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Fixtures fx = fixtures_from(o);
  auto results = run_criteria(selected, fx);
  std::cout << format_report(results, o.verbose);
  size_t passed = 0;
  for (const auto& r : results) passed += r.passed() ? 1 : 0;
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  return passed == results.size() ? kPass : kCheckFailure;
}

int run_export(const Options& o) {
  if (o.format != "porta" && o.format != "json" && o.format != "latex")
    throw UsageError("unknown format '" + o.format + "'; expected porta, json or latex");
  Fixtures fx = fixtures_from(o);
  const std::string text = render_cone(build_cone(o, fx), o.rep, o.format);
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return kPass;
  }
  std::filesystem::path path(o.out);
  if (const char* dir = std::getenv("NEMCONE_OUTPUT_DIR"); dir && *dir && path.is_relative())
    path = std::filesystem::path(dir) / path;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  std::cout << "wrote " << path.string() << "\n";
  return kPass;
}

void add_space_options(CLI::App* app, Options& o) {
  app->add_option("--n", o.n, "number of marked points");
  app->add_option("--m", o.m, "number of distinguished points");
}

void add_cone_options(CLI::App* app, Options& o) {
  add_space_options(app, o);
  app->add_option("--which", o.which,
                  "eff, nem, nef-fixture, hyperelliptic, mg1, m21-eff, m21-push-nem, m21-push-nef or m21-nef")
      ->required();
  app->add_option("--g", o.g, "genus for hyperelliptic and mg1");
  app->add_option("--target", o.target, "mg or mg1");
  app->add_option("--rep", o.rep, "hrep or rays");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Eff, Nem and Nef cones of X_{n,m} and their images in M_g"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--fixtures", o.fixtures, "fixture file replacing the built-in data");

  auto* space = app.add_subcommand("space", "boundary count, Picard number, basis and relations");
  add_space_options(space, o);

  auto* cone = app.add_subcommand("cone", "print a cone");
  add_cone_options(cone, o);
  cone->add_option("--format", o.format, "text, porta, json or latex");

  auto* member = app.add_subcommand("member", "membership query with a certificate");
  add_cone_options(member, o);
  member->add_option("--vector", o.vector, "comma-separated rationals")->required();

  auto* push = app.add_subcommand("push", "apply a pushforward on dual coordinates");
  push->add_option("--map", o.map, "q, r, s, pi_star, hyperelliptic, pointed or m21")->required();
  add_space_options(push, o);
  push->add_option("--l", o.l, "size of the attached component");
  push->add_option("--g", o.g, "genus");
  push->add_option("--target", o.target, "mg or mg1");
  push->add_option("--vector", o.vector, "comma-separated rationals");
  push->add_option("--curve", o.curve, "push the curve C_k of the source space");
  push->add_option("--format", o.format, "text or json");

  auto* ce = app.add_subcommand("counterexample", "F_tau is not in the boundary cone of X_{n,3}");
  ce->add_option("--n", o.n, "number of marked points (default 6)");

  auto* verify = app.add_subcommand("verify-paper", "run the acceptance checks");
  verify->add_option("--sections", o.sections, "criterion groups or numbers, comma separated");
  verify->add_flag("--list", o.list, "list the criteria");
  verify->add_flag("--verbose", o.verbose, "show every check");

  auto* exp = app.add_subcommand("export", "write a cone as PORTA, JSON or LaTeX");
  add_cone_options(exp, o);
  exp->add_option("--format", o.format, "porta, json or latex")->required();
  exp->add_option("--out", o.out, "output file, relative to NEMCONE_OUTPUT_DIR when set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*space) return run_space(o);
    if (*cone) return run_cone(o);
    if (*member) return run_member(o);
    if (*push) return run_push(o);
    if (*ce) return run_counterexample(o);
    if (*verify) return run_verify_paper(o);
    if (*exp) return run_export(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailure;
  }
  return kUsage;
}
