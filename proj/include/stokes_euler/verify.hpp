#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "critical.hpp"
#include "euler_matrix.hpp"
#include "jacobian.hpp"
#include "report.hpp"
#include "search.hpp"
#include "stokes1d.hpp"

namespace stokes_euler {

enum ExitCode : int { ExitOk = 0, ExitCheckFailed = 2, ExitDegenerate = 3, ExitInconclusive = 4, ExitNumerical = 5 };

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegeneratePoint:
    case ErrorKind::DegenerateCritical:
    case ErrorKind::ZeroHessian:
    case ErrorKind::Inadmissible:
    case ErrorKind::NotReducible:
      return ExitDegenerate;
    case ErrorKind::InvalidArgument:
    case ErrorKind::NonPositiveEuler:
    case ErrorKind::DimensionMismatch:
      return ExitCheckFailed;
    default:
      return ExitNumerical;
  }
}

inline std::string status_name(int code) {
  switch (code) {
    case ExitOk: return "ok";
    case ExitCheckFailed: return "check-failed";
    case ExitDegenerate: return "degenerate-input";
    case ExitInconclusive: return "inconclusive-equivalence";
    case ExitNumerical: return "numerical-failure";
  }
  return "error";
}

struct Tolerances {
  double int_tol = 1e-4;         // rounding of Stokes entries
  double int_target = 1e-6;      // reported, not enforced
  double quad_rel = 1e-12;
  double collision = 1e-8;
  double residual = 1e-8;
  double cross_check = 1e-9;     // eigenvalue vs Newton values, 1-d vs 3-d values
  double unit_circle = 1e-8;

  /// "default", or the list of values that differ from it.
  std::string profile() const {
    const Tolerances d;
    std::string out;
    auto add = [&](const char* name, double v, double dv) {
      if (v == dv) return;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s%s=%.6g", out.empty() ? "" : ",", name, v);
      out += buf;
    };
    add("int", int_tol, d.int_tol);
    add("target", int_target, d.int_target);
    add("quad", quad_rel, d.quad_rel);
    add("coll", collision, d.collision);
    add("res", residual, d.residual);
    add("cross", cross_check, d.cross_check);
    add("circle", unit_circle, d.unit_circle);
    return out.empty() ? "default" : out;
  }
};

struct VerifyOptions {
  std::optional<Complex> q;  // default: balanced_q(A)
  std::uint64_t seed = 7;
  Tolerances tol;
  int depth = 12;
  unsigned threads = 1;
  bool timings = false;
  int random_sequences = 20;
};

/// Numerical by-products that do not go into the report (thimbles for SVG output).
struct VerifyArtifacts {
  std::optional<StokesResult> stokes;
};

namespace detail {

class StageTimer {
 public:
  StageTimer(VerifyReport& r, bool on) : r_(r), on_(on) {}
  template <class F>
  auto run(const std::string& stage, F&& f) {
    stage_ = stage;
    const auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(stage, t0);
    } else {
      auto out = f();
      record(stage, t0);
      return out;
    }
  }
  const std::string& stage() const { return stage_; }

 private:
  void record(const std::string& stage, std::chrono::steady_clock::time_point t0) {
    if (on_) r_.timings[stage] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  VerifyReport& r_;
  bool on_;
  std::string stage_ = "input";
};

inline double max_relative_mismatch(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max({1.0, std::abs(a[i]), std::abs(b[i])}));
  return worst;
}

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace detail

/// Random words in braid, inverse-braid and sign moves; lengths 1..max_len.
inline std::vector<MoveSequence> random_move_sequences(std::size_t n, int count, std::uint64_t seed, int max_len = 10) {
  std::mt19937_64 rng(seed);
  std::vector<MoveSequence> out;
  if (n < 2) return out;
  for (int c = 0; c < count; ++c) {
    MoveSequence seq;
    const int len = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_len));
    for (int l = 0; l < len; ++l) {
      const std::size_t kind = rng() % 3;
      if (kind == 2)
        seq.moves.push_back(Move::sign(1 + rng() % n));
      else {
        const std::size_t k = 1 + rng() % (n - 1);
        seq.moves.push_back(kind == 0 ? Move::braid(k) : Move::braid_inverse(k));
      }
    }
    out.push_back(std::move(seq));
  }
  return out;
}

inline LatticeSummary lattice_summary(const IntMatrix& chi) {
  LatticeSummary l;
  l.intersection = -(chi + chi.transpose());
  const auto cox = coxeter_invariants(chi);
  l.char_poly = cox.char_poly;
  l.char_poly_text = cox.poly_text();
  l.eigenvalues = cox.eigenvalues;
  l.max_unit_circle_defect = cox.max_unit_circle_defect();
  return l;
}

/// Full pipeline: Euler matrix -> Jacobian algebra and critical data (perturbed
/// off the bifurcation set when needed) -> numerical Stokes matrix when some
/// a_i = 1 -> equivalence search against chi. Errors are caught and recorded
/// with the stage they came from.
inline VerifyReport run_verify(const std::array<int, 3>& a, const VerifyOptions& opt = {},
                               VerifyArtifacts* artifacts = nullptr) {
  VerifyReport r;
  r.A = a;
  r.seed = opt.seed;
  r.tolerance_profile = opt.tol.profile();
  detail::StageTimer timer(r, opt.timings);
  auto check = [&](std::string name, bool ok, std::string detail) { r.checks.push_back({std::move(name), ok, std::move(detail)}); };

  try {
    const OrbifoldType A = timer.run("orbifold", [&] { return make_orbifold(a[0], a[1], a[2]); });
    r.mu = A.mu;
    r.q = opt.q ? *opt.q : balanced_q(A);

    timer.run("euler", [&] {
      const auto e = canonical_collection_euler_matrix(A);
      r.chi = e.chi;
      r.collection = e.collection.labels();
      IntMatrix sym = r.chi + r.chi.transpose();
      bool diag_two = true;
      for (std::size_t i = 0; i < sym.rows(); ++i) diag_two = diag_two && sym(i, i) == 2;
      check("euler.unimodular", determinant(r.chi) == 1 && r.chi.is_unit_upper_triangular() && diag_two,
            "det chi = " + determinant(r.chi).str());
      r.lattice = lattice_summary(r.chi);
      check("coxeter.unit_circle", r.lattice->max_unit_circle_defect <= opt.tol.unit_circle,
            "defect " + detail::sci(r.lattice->max_unit_circle_defect));
    });

    UnfoldingPoint s = UnfoldingPoint::at_q(A, r.q);
    CriticalOptions copt;
    copt.collision_tol = opt.tol.collision;
    const CriticalData cd = timer.run("jacobian", [&] {
      auto attempt = [&](const UnfoldingPoint& pt) {
        const auto alg = build_jacobian_algebra(A, pt);
        r.jacobian_dim = alg.dim();
        check("jacobian.dimension", alg.dim() == static_cast<std::size_t>(A.mu),
              "dim " + std::to_string(alg.dim()) + ", mu " + std::to_string(A.mu));
        return critical_data(A, pt, alg, copt);
      };
      try {
        return attempt(s);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegeneratePoint) throw;
        r.checks.pop_back();
        s = perturb_arms(A, s, opt.seed);
        r.perturbed = true;
        for (int i = 0; i < 3; ++i) r.perturbation.push_back(s.arm(i, 1));
        return attempt(s);
      }
    });
    r.critical_values = cd.values;
    check("critical.cross_check", detail::max_relative_mismatch(cd.values, cd.direct_values) <= opt.tol.cross_check,
          "eigenvalue vs Newton " + detail::sci(detail::max_relative_mismatch(cd.values, cd.direct_values)));

    const bool reducible = a[0] == 1 || a[1] == 1 || a[2] == 1;
    if (!reducible) {
      timer.run("lattice", [&] {
        const auto base = r.lattice->char_poly;
        bool invariant = true;
        for (const auto& seq : random_move_sequences(r.chi.rows(), opt.random_sequences, opt.seed))
          invariant = invariant && coxeter_invariants(apply_moves(r.chi, seq)).char_poly == base;
        check("moves.coxeter_invariant", invariant, std::to_string(opt.random_sequences) + " random move sequences");
      });
    } else {
      StokesOptions so;
      so.int_tol = opt.tol.int_tol;
      so.collision_tol = opt.tol.collision;
      so.quad.rel_tol = opt.tol.quad_rel;
      const Mirror1D m = reduce_to_1d(A, s);
      const StokesResult sr = timer.run("stokes", [&] {
        const double cert = multiset_distance(critical_values(critical_points_1d(m, so.collision_tol)), cd.values);
        check("reduction.certificate", cert <= opt.tol.cross_check, "1-d vs 3-d values " + detail::sci(cert));
        return stokes_numeric(m, so);
      });
      StokesSummary ss{sr.S, sr.values(), sr.residual, sr.condition, sr.max_int_distance, sr.phi, sr.eps, sr.u0, false};
      timer.run("stability", [&] { ss.stable = stokes_stability(m, sr, so).stable; });
      r.stokes = ss;
      check("stokes.integer", sr.max_int_distance <= opt.tol.int_tol,
            "distance " + detail::sci(sr.max_int_distance) + (sr.max_int_distance <= opt.tol.int_target ? " (within target)" : " (above target)"));
      check("stokes.residual", sr.residual <= opt.tol.residual, detail::sci(sr.residual));
      check("stokes.triangular", sr.S.is_unit_upper_triangular(), "dominance order");
      const auto gram = gram_from_stokes(sr.S).gram;
      bool diag = gram.is_symmetric();
      for (std::size_t i = 0; i < gram.rows(); ++i) diag = diag && gram(i, i) == -2;
      check("stokes.lattice_dictionary", diag && stokes_from_gram(gram) == sr.S, "-(S + S^T) symmetric, diagonal -2, round trip");
      check("stokes.stable", ss.stable, "|u0| x0.75, x1.25, lambda 60");
      if (artifacts) artifacts->stokes = sr;

      timer.run("equivalence", [&] {
        SearchOptions sopt;
        sopt.max_depth = opt.depth;
        sopt.threads = opt.threads;
        const auto res = equivalence_search(sr.S, r.chi, sopt);
        r.equivalence = EquivalenceSummary{to_string(res.status), res.moves.to_text(), res.depth, res.states, res.note};
        if (res.status != SearchResult::Status::Inconclusive)
          check("equivalence", res.found(), res.found() ? "replay reaches chi" : res.note);
      });
    }
  } catch (const Error& e) {
    r.error = ErrorInfo{timer.stage(), std::string(to_string(e.kind())), e.what()};
    r.exit_code = exit_code_for(e.kind());
    r.status = status_name(r.exit_code);
    return r;
  }
  if (!r.all_checks_pass())
    r.exit_code = ExitCheckFailed;
  else if (r.equivalence && r.equivalence->status == "inconclusive")
    r.exit_code = ExitInconclusive;
  r.status = status_name(r.exit_code);
  return r;
}

/// JSON files under `dir`, one per (A, q, seed, tolerance profile).
class FixtureCache {
 public:
  explicit FixtureCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::string key(const std::array<int, 3>& a, Complex q, std::uint64_t seed, const std::string& profile) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "verify_%d-%d-%d_q%.17g,%.17g_seed%llu_", a[0], a[1], a[2], q.real(), q.imag(),
                  static_cast<unsigned long long>(seed));
    std::string k = buf + profile;
    for (char& c : k)
      if (c == '/' || c == ' ' || c == '=') c = '_';
    return k;
  }

  std::filesystem::path path(const std::string& key) const { return dir_ / (key + ".json"); }

  std::optional<VerifyReport> load(const std::string& key) const {
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    try {
      return json_io::report_from(json_io::Json::parse(in));
    } catch (const std::exception&) {
      return std::nullopt;  // stale or foreign file; recompute
    }
  }

  void store(const std::string& key, VerifyReport r) const {
    r.timings.clear();
    std::filesystem::create_directories(dir_);
    const auto target = path(key);
    const auto tmp = target.string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << json_io::to_json(r).dump(2) << "\n";
      if (!out) fail(ErrorKind::InvalidArgument, "cannot write cache file " + tmp);
    }
    std::filesystem::rename(tmp, target);
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace stokes_euler
