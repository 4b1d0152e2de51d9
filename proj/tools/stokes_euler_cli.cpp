// stokes-euler: command-line front end for the verification pipeline.
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stokes_euler/stokes_euler.hpp"

namespace se = stokes_euler;
using se::json_io::Json;

namespace {

struct Args {
  std::string a = "1,1,1";
  std::string q;  // empty: balanced default
  std::uint64_t seed = 7;
  se::Tolerances tol;
  int depth = 12;
  unsigned threads = 1;
  std::string out;
  std::string format = "json";
  bool no_cache = false;
  std::string cache_dir = ".stokes-euler-cache";
  bool timings = false;
  bool perturb = false;
  bool thimbles = false;
  std::string matrix;
  std::string target;
  std::string moves;
  bool allow_reversal = false;
};

std::array<int, 3> parse_a(const std::string& s) {
  std::array<int, 3> a{};
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> a[0] >> c1 >> a[1] >> c2 >> a[2]) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof())
    se::fail(se::ErrorKind::InvalidArgument, "--a expects p,q,r (got \"" + s + "\")");
  return a;
}

se::Complex parse_q(const std::string& s) {
  double re = 0, im = 0;
  char c = 0;
  std::istringstream in(s);
  if (!(in >> re)) se::fail(se::ErrorKind::InvalidArgument, "--q expects re,im (got \"" + s + "\")");
  if (in >> c) {
    if (c != ',' || !(in >> im)) se::fail(se::ErrorKind::InvalidArgument, "--q expects re,im (got \"" + s + "\")");
  }
  return {re, im};
}

Json head(const std::string& command) { return Json{{"schema", se::report_schema}, {"command", command}, {"version", se::tool_version}}; }

se::Complex q_for(const Args& g, const se::OrbifoldType& A) { return g.q.empty() ? se::balanced_q(A) : parse_q(g.q); }

int emit(const Args& g, const Json& j, const std::string& text, int code, const std::map<std::string, std::string>& figs = {}) {
  se::emit_document(j, text, se::parse_format(g.format), g.out, figs);
  return code;
}

// Jacobian algebra and critical data at s, perturbing when asked and needed.
struct CriticalRun {
  se::UnfoldingPoint s;
  se::JacobianAlgebra alg;
  se::CriticalData cd;
  bool perturbed = false;
};

CriticalRun critical_run(const Args& g, const se::OrbifoldType& A, se::Complex q) {
  CriticalRun r;
  r.s = se::UnfoldingPoint::at_q(A, q);
  se::CriticalOptions opt;
  opt.collision_tol = g.tol.collision;
  r.alg = se::build_jacobian_algebra(A, r.s);
  try {
    r.cd = se::critical_data(A, r.s, r.alg, opt);
  } catch (const se::Error& e) {
    if (e.kind() != se::ErrorKind::DegeneratePoint || !g.perturb) throw;
    r.s = se::perturb_arms(A, r.s, g.seed);
    r.perturbed = true;
    r.alg = se::build_jacobian_algebra(A, r.s);
    r.cd = se::critical_data(A, r.s, r.alg, opt);
  }
  return r;
}

int cmd_euler(const Args& g) {
  const auto a = parse_a(g.a);
  const auto A = se::make_orbifold(a[0], a[1], a[2]);
  const auto e = se::canonical_collection_euler_matrix(A);
  Json j = head("euler");
  j["A"] = a;
  j["mu"] = A.mu;
  j["chi_A"] = A.chi.str();
  j["collection"] = e.collection.labels();
  j["chi"] = se::json_io::matrix_json(e.chi);
  std::string text = "A = " + A.label() + "  mu = " + std::to_string(A.mu) + "  chi_A = " + A.chi.str() + "\n";
  for (const auto& l : e.collection.labels()) text += "  " + l + "\n";
  text += "chi:\n" + se::indent(e.chi.to_text());
  return emit(g, j, text, se::ExitOk);
}

int cmd_jacobian(const Args& g) {
  const auto a = parse_a(g.a);
  const auto A = se::make_orbifold(a[0], a[1], a[2]);
  const auto q = q_for(g, A);
  const auto alg = se::build_jacobian_algebra(A, se::UnfoldingPoint::at_q(A, q));
  Json j = head("jacobian");
  j["A"] = a;
  j["q"] = se::json_io::complex_json(q);
  j["mu"] = A.mu;
  j["dim"] = alg.dim();
  std::vector<std::string> basis;
  for (const auto& m : alg.basis) basis.push_back(se::to_string(m));
  j["basis"] = basis;
  j["groebner_size"] = alg.groebner.size();
  const bool ok = alg.dim() == static_cast<std::size_t>(A.mu);
  j["dimension_matches_mu"] = ok;
  std::string text = "A = " + A.label() + "  dim = " + std::to_string(alg.dim()) + "  mu = " + std::to_string(A.mu) + (ok ? "" : "  MISMATCH") + "\nbasis:";
  for (const auto& b : basis) text += " " + b;
  return emit(g, j, text + "\n", ok ? se::ExitOk : se::ExitCheckFailed);
}

int cmd_critical(const Args& g) {
  const auto a = parse_a(g.a);
  const auto A = se::make_orbifold(a[0], a[1], a[2]);
  const auto q = q_for(g, A);
  const auto run = critical_run(g, A, q);
  const auto& cd = run.cd;
  Json j = head("critical");
  j["A"] = a;
  j["q"] = se::json_io::complex_json(q);
  j["perturbed"] = run.perturbed;
  j["values"] = se::json_io::complex_list(cd.values);
  j["direct_values"] = se::json_io::complex_list(cd.direct_values);
  Json pts = Json::array();
  for (const auto& p : cd.points) pts.push_back(se::json_io::complex_list({p.begin(), p.end()}));
  j["points"] = pts;
  j["hessians"] = se::json_io::complex_list(cd.hessians);
  j["gradient_residuals"] = cd.gradient_residuals;
  const double mismatch = se::detail::max_relative_mismatch(cd.values, cd.direct_values);
  j["value_mismatch"] = mismatch;
  j["walls"] = se::wall_structure(cd.values);
  const bool ok = mismatch <= g.tol.cross_check;
  std::string text = "A = " + A.label() + "  q = " + se::format_complex(q) + (run.perturbed ? "  (perturbed)" : "") + "\n";
  for (std::size_t i = 0; i < cd.size(); ++i) text += "  w" + std::to_string(i) + " = " + se::format_complex(cd.values[i]) + "\n";
  text += "eigenvalue vs Newton mismatch " + se::detail::sci(mismatch) + "\n";
  std::map<std::string, std::string> figs{{"constellation.svg", se::svg::constellation(cd.values)}};
  return emit(g, j, text, ok ? se::ExitOk : se::ExitCheckFailed, figs);
}

int cmd_stokes1d(const Args& g) {
  const auto a = parse_a(g.a);
  const auto A = se::make_orbifold(a[0], a[1], a[2]);
  const auto q = q_for(g, A);
  auto s = se::UnfoldingPoint::at_q(A, q);
  se::StokesOptions so;
  so.int_tol = g.tol.int_tol;
  so.collision_tol = g.tol.collision;
  so.quad.rel_tol = g.tol.quad_rel;
  bool perturbed = false;
  se::Mirror1D m = se::reduce_to_1d(A, s);
  try {
    se::critical_points_1d(m, so.collision_tol);
  } catch (const se::Error& e) {
    if (e.kind() != se::ErrorKind::DegenerateCritical || !g.perturb) throw;
    s = se::perturb_arms(A, s, g.seed);
    m = se::reduce_to_1d(A, s);
    perturbed = true;
  }
  const auto sr = se::stokes_numeric(m, so);
  const auto st = se::stokes_stability(m, sr, so);
  Json j = head("stokes1d");
  j["A"] = a;
  j["q"] = se::json_io::complex_json(q);
  j["perturbed"] = perturbed;
  j["S"] = se::json_io::matrix_json(sr.S);
  j["raw"] = se::json_io::matrix_json(sr.raw);
  j["values"] = se::json_io::complex_list(sr.values());
  j["phi"] = sr.phi;
  j["eps"] = sr.eps;
  j["u0"] = se::json_io::complex_json(sr.u0);
  j["theta_right"] = sr.theta_right;
  j["theta_left"] = sr.theta_left;
  j["residual"] = sr.residual;
  j["condition"] = sr.condition;
  j["max_int_distance"] = sr.max_int_distance;
  j["stable"] = st.stable;
  j["coxeter"] = se::json_io::coxeter_json(se::coxeter_invariants(sr.S));
  if (g.thimbles) {
    Json th = Json::array();
    for (const auto* fam : {&sr.right, &sr.left})
      for (const auto& t : *fam)
        th.push_back({{"index", t.index}, {"theta", t.theta}, {"lambda", t.lambda}, {"path", se::json_io::complex_list(t.path)}});
    j["thimbles"] = th;
  }
  const bool ok = st.stable && sr.residual <= g.tol.residual;
  std::string text = "A = " + A.label() + (perturbed ? "  (perturbed)" : "") + "  phi = " + std::to_string(sr.phi) + "\nS:\n" +
                     se::indent(sr.S.to_text()) + "residual " + se::detail::sci(sr.residual) + "  condition " +
                     se::detail::sci(sr.condition) + "  integer distance " + se::detail::sci(sr.max_int_distance) +
                     (st.stable ? "  stable" : "  NOT stable") + "\n";
  std::map<std::string, std::string> figs{{"constellation.svg", se::svg::constellation(sr.values(), &sr)},
                                          {"thimbles.svg", se::svg::thimbles(sr)}};
  return emit(g, j, text, ok ? se::ExitOk : se::ExitCheckFailed, figs);
}

se::IntMatrix source_matrix(const Args& g) {
  if (!g.matrix.empty()) return se::json_io::parse_matrix(g.matrix);
  const auto a = parse_a(g.a);
  return se::canonical_collection_euler_matrix(se::make_orbifold(a[0], a[1], a[2])).chi;
}

int cmd_lattice(const Args& g) {
  const auto S = source_matrix(g);
  if (!S.is_unit_upper_triangular()) se::fail(se::ErrorKind::InvalidArgument, "matrix must be unit upper triangular");
  const auto cox = se::coxeter_invariants(S);
  const auto lat = se::gram_from_stokes(S);
  bool invariant = true;
  for (const auto& seq : se::random_move_sequences(S.rows(), 20, g.seed))
    invariant = invariant && se::coxeter_invariants(se::apply_moves(S, seq)).char_poly == cox.char_poly;
  se::IntMatrix sym = S + S.transpose();
  bool diag = true;
  for (std::size_t i = 0; i < sym.rows(); ++i) diag = diag && sym(i, i) == 2;
  const bool det_one = se::determinant(S) == 1;
  const bool circle = cox.max_unit_circle_defect() <= g.tol.unit_circle;
  const bool round_trip = se::stokes_from_gram(lat.gram) == S;
  Json j = head("lattice");
  if (g.matrix.empty()) j["A"] = parse_a(g.a);
  j["S"] = se::json_io::matrix_json(S);
  j["intersection"] = se::json_io::matrix_json(lat.gram);
  j["coxeter"] = se::json_io::coxeter_json(cox);
  j["checks"] = {{"det_one", det_one},
                 {"diag_two", diag},
                 {"unit_circle", circle},
                 {"round_trip", round_trip},
                 {"coxeter_invariant_under_moves", invariant}};
  const bool ok = det_one && diag && round_trip && invariant;
  std::string text = "S:\n" + se::indent(S.to_text()) + "I = -(S + S^T):\n" + se::indent(lat.gram.to_text()) +
                     "Coxeter polynomial: " + cox.poly_text() + "  (unit-circle defect " + se::detail::sci(cox.max_unit_circle_defect()) + ")\n" +
                     "det 1: " + (det_one ? "yes" : "no") + "  diag 2: " + (diag ? "yes" : "no") + "  round trip: " +
                     (round_trip ? "yes" : "no") + "  move-invariant: " + (invariant ? "yes" : "no") + "\n";
  return emit(g, j, text, ok ? se::ExitOk : se::ExitCheckFailed);
}

int cmd_mutate(const Args& g) {
  const auto S = source_matrix(g);
  Json j = head("mutate");
  j["source"] = se::json_io::matrix_json(S);
  std::string text = "source:\n" + se::indent(S.to_text());
  int code = se::ExitOk;
  if (!g.moves.empty()) {
    const auto seq = se::MoveSequence::parse(g.moves);
    const auto R = se::apply_moves(S, seq);
    const bool kept = se::coxeter_invariants(R).char_poly == se::coxeter_invariants(S).char_poly;
    j["moves"] = seq.to_text();
    j["result"] = se::json_io::matrix_json(R);
    j["coxeter_preserved"] = kept;
    text += "after " + seq.to_text() + ":\n" + se::indent(R.to_text()) + (kept ? "" : "Coxeter polynomial CHANGED\n");
    if (!kept) code = se::ExitCheckFailed;
  }
  if (!g.target.empty()) {
    const auto T = se::json_io::parse_matrix(g.target);
    se::SearchOptions so;
    so.max_depth = g.depth;
    so.threads = g.threads;
    so.allow_reversal = g.allow_reversal;
    const auto res = se::equivalence_search(S, T, so);
    j["target"] = se::json_io::matrix_json(T);
    j["search"] = {{"status", se::to_string(res.status)}, {"moves", res.moves.to_text()}, {"depth", res.depth},
                   {"states", res.states}, {"note", res.note}};
    text += "search: " + se::to_string(res.status) + (res.found() ? " at depth " + std::to_string(res.depth) + ": " + res.moves.to_text() : " (" + res.note + ")") + "\n";
    if (res.status == se::SearchResult::Status::Inconclusive) code = std::max(code, static_cast<int>(se::ExitInconclusive));
    if (res.status == se::SearchResult::Status::InvariantMismatch) code = se::ExitCheckFailed;
  }
  return emit(g, j, text, code);
}

int cmd_verify(const Args& g) {
  const auto a = parse_a(g.a);
  se::VerifyOptions opt;
  if (!g.q.empty()) opt.q = parse_q(g.q);
  opt.seed = g.seed;
  opt.tol = g.tol;
  opt.depth = g.depth;
  opt.threads = g.threads;
  opt.timings = g.timings;
  const auto fmt = se::parse_format(g.format);

  // the key needs the effective q, which for the default depends on A
  se::Complex q{};
  try {
    q = opt.q ? *opt.q : se::balanced_q(se::make_orbifold(a[0], a[1], a[2]));
  } catch (const se::Error&) {
    q = opt.q.value_or(se::Complex{});
  }
  const se::FixtureCache cache(g.cache_dir);
  const std::string key = se::FixtureCache::key(a, q, g.seed, g.tol.profile() + "_d" + std::to_string(g.depth));
  // svg output wants the thimbles, which the cache does not keep
  const bool use_cache = !g.no_cache && !g.timings && fmt != se::Format::SvgBundle;
  if (use_cache)
    if (auto hit = cache.load(key)) {
      se::emit(*hit, fmt, g.out);
      return hit->exit_code;
    }
  se::VerifyArtifacts art;
  const auto r = se::run_verify(a, opt, &art);
  if (!g.no_cache) cache.store(key, r);
  se::emit(r, fmt, g.out, &art);
  if (r.error) std::cerr << "stokes-euler verify: stage " << r.error->stage << ": " << r.error->message << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stokes matrices of cusp polynomials against Euler matrices of orbifold projective lines"};
  app.require_subcommand(1);
  Args g;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--a", g.a, "isotropy orders p,q,r");
    sub->add_option("--q", g.q, "parameter q as re,im (default: balanced modulus, arg 0.3)");
    sub->add_option("--seed", g.seed, "seed for perturbations and random move words");
    sub->add_option("--out", g.out, "output file (json/text) or directory (svg-bundle); default stdout / .");
    sub->add_option("--format", g.format, "json | text | svg-bundle")->check(CLI::IsMember({"json", "text", "svg-bundle"}));
    sub->add_option("--tol-int", g.tol.int_tol, "max distance of Stokes entries to integers");
    sub->add_option("--tol-quad", g.tol.quad_rel, "relative quadrature tolerance");
    sub->add_option("--tol-collision", g.tol.collision, "relative critical-value collision threshold");
    sub->add_option("--tol-residual", g.tol.residual, "Stokes residual bound");
    sub->add_option("--tol-cross", g.tol.cross_check, "critical value cross-check bound");
    sub->add_option("--tol-circle", g.tol.unit_circle, "Coxeter eigenvalue unit-circle bound");
    sub->add_option("--depth", g.depth, "equivalence search depth");
    sub->add_option("--threads", g.threads, "search worker threads");
  };

  auto* euler = app.add_subcommand("euler", "Euler matrix of the canonical exceptional collection");
  auto* jacobian = app.add_subcommand("jacobian", "Jacobian algebra dimension and monomial basis");
  auto* critical = app.add_subcommand("critical", "critical points and values of the cusp polynomial");
  auto* stokes = app.add_subcommand("stokes1d", "numerical Stokes matrix (some a_i = 1)");
  auto* lattice = app.add_subcommand("lattice", "intersection form and Coxeter invariants");
  auto* mutate = app.add_subcommand("mutate", "apply braid/sign moves, or search for a connecting word");
  auto* verify = app.add_subcommand("verify", "full pipeline with checks");
  for (auto* s : {euler, jacobian, critical, stokes, lattice, mutate, verify}) common(s);
  for (auto* s : {critical, stokes}) s->add_flag("--perturb", g.perturb, "leave the bifurcation set with a seeded perturbation");
  stokes->add_flag("--thimbles", g.thimbles, "include thimble polylines in the JSON");
  for (auto* s : {lattice, mutate}) s->add_option("--matrix", g.matrix, "unit upper triangular matrix, e.g. \"1,2;0,1\"");
  mutate->add_option("--moves", g.moves, "move word, e.g. \"b1 s2 B1\"");
  mutate->add_option("--target", g.target, "search for a word from the source to this matrix");
  mutate->add_flag("--allow-reversal", g.allow_reversal, "also allow reversing the collection");
  verify->add_flag("--no-cache", g.no_cache, "bypass the fixture cache");
  verify->add_option("--cache-dir", g.cache_dir, "fixture cache directory");
  verify->add_flag("--timings", g.timings, "record stage timings (makes the report non-reproducible)");

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "euler") return cmd_euler(g);
    if (name == "jacobian") return cmd_jacobian(g);
    if (name == "critical") return cmd_critical(g);
    if (name == "stokes1d") return cmd_stokes1d(g);
    if (name == "lattice") return cmd_lattice(g);
    if (name == "mutate") return cmd_mutate(g);
    return cmd_verify(g);
  } catch (const se::Error& e) {
    const int code = se::exit_code_for(e.kind());
    std::cerr << "stokes-euler " << name << ": " << e.what() << "\n";
    if (g.format == "json" && (g.out.empty() || g.out == "-")) {
      Json j = head(name);
      j["error"] = {{"kind", std::string(se::to_string(e.kind()))}, {"message", e.what()}};
      j["exit_code"] = code;
      std::cout << j.dump(2) << "\n";
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "stokes-euler " << name << ": " << e.what() << "\n";
    return se::ExitCheckFailed;
  }
}
