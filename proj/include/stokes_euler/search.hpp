#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "moves.hpp"

namespace stokes_euler {

struct SearchOptions {
  int max_depth = 12;          // braid moves, summed over both directions
  bool allow_signs = true;
  bool allow_reversal = false;
  unsigned threads = 1;        // frontier expansion workers; results do not depend on it
  std::size_t max_states = 4'000'000;
  std::int64_t entry_bound = 127;  // states with a larger |entry| are not expanded
};

struct SearchResult {
  enum class Status { Found, Inconclusive, InvariantMismatch } status = Status::Inconclusive;
  MoveSequence moves;
  int depth = 0;                // braid moves in the sequence, or depth reached when inconclusive
  std::size_t states = 0;
  std::string note;

  bool found() const noexcept { return status == Status::Found; }
};

inline std::string to_string(SearchResult::Status s) {
  switch (s) {
    case SearchResult::Status::Found: return "found";
    case SearchResult::Status::Inconclusive: return "inconclusive";
    case SearchResult::Status::InvariantMismatch: return "invariant-mismatch";
  }
  return "?";
}

/// Representative of S modulo conjugation by diagonal sign matrices: signs
/// fixed along a BFS forest of the nonzero pattern (lowest index first,
/// roots +1, tree edges made positive). Returns the signs used.
inline std::vector<int> sign_canonical_signs(const IntMatrix& s) {
  const std::size_t n = s.rows();
  std::vector<int> eps(n, 0);
  std::vector<std::size_t> queue;
  for (std::size_t root = 0; root < n; ++root) {
    if (eps[root]) continue;
    eps[root] = 1;
    queue.assign(1, root);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const std::size_t u = queue[h];
      for (std::size_t v = 0; v < n; ++v) {
        if (eps[v] || v == u) continue;
        const std::int64_t e = u < v ? s(u, v) : s(v, u);
        if (e == 0) continue;
        eps[v] = (e > 0 ? 1 : -1) * eps[u];
        queue.push_back(v);
      }
    }
  }
  return eps;
}

inline IntMatrix conjugate_signs(IntMatrix s, const std::vector<int>& eps) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j) s(i, j) *= eps[i] * eps[j];
  return s;
}

inline IntMatrix sign_canonical(const IntMatrix& s) { return conjugate_signs(s, sign_canonical_signs(s)); }

namespace detail {

// Upper triangle packed into bytes; empty when some entry exceeds the bound.
inline std::string pack_state(const IntMatrix& s, std::int64_t bound) {
  std::string key;
  key.reserve(s.rows() * (s.rows() - 1) / 2);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j) {
      const std::int64_t v = s(i, j);
      if (v > bound || v < -bound) return {};
      key.push_back(static_cast<char>(static_cast<std::int8_t>(v)));
    }
  return key;
}

inline IntMatrix unpack_state(const std::string& key, std::size_t n) {
  IntMatrix s = IntMatrix::identity(n);
  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s(i, j) = static_cast<std::int8_t>(key[p++]);
  return s;
}

struct Node {
  const std::string* parent = nullptr;
  Move move;
};

struct Side {
  std::unordered_map<std::string, Node> seen;
  std::vector<const std::string*> frontier;
  int depth = 0;
};

struct Child {
  std::string key;
  const std::string* parent;
  Move move;
};

}  // namespace detail

/// Bidirectional breadth-first search over braid moves (and optionally the
/// reversal), states taken modulo sign flips when allowed. On success the
/// returned sequence replays source -> target exactly.
inline SearchResult equivalence_search(const IntMatrix& source, const IntMatrix& target, const SearchOptions& opt = {}) {
  if (!source.is_unit_upper_triangular() || !target.is_unit_upper_triangular() || source.rows() != target.rows())
    fail(ErrorKind::InvalidArgument, "equivalence_search needs unit upper-triangular matrices of equal size");
  const std::size_t n = source.rows();
  SearchResult res;

  const auto cs = coxeter_invariants(source).char_poly;
  if (cs != coxeter_invariants(target).char_poly &&
      !(opt.allow_reversal && cs == coxeter_invariants(reverse_stokes(target)).char_poly)) {
    res.status = SearchResult::Status::InvariantMismatch;
    res.note = "Coxeter characteristic polynomials differ";
    return res;
  }

  auto canon = [&](const IntMatrix& s) { return opt.allow_signs ? sign_canonical(s) : s; };
  std::vector<Move> generators;
  for (std::size_t k = 1; k < n; ++k) {
    generators.push_back(Move::braid(k));
    generators.push_back(Move::braid_inverse(k));
  }
  if (opt.allow_reversal) generators.push_back(Move::reversal());

  // Sequence of canonical-level moves from the root of a side to `key`.
  auto path_to = [](const detail::Side& side, const std::string* key) {
    std::vector<Move> out;
    for (auto it = side.seen.find(*key); it->second.parent; it = side.seen.find(*it->second.parent))
      out.push_back(it->second.move);
    std::reverse(out.begin(), out.end());
    return out;
  };

  auto finish = [&](const std::vector<Move>& braids) {
    MoveSequence seq{braids};
    const IntMatrix end = apply_moves(source, seq);
    const auto e1 = opt.allow_signs ? sign_canonical_signs(end) : std::vector<int>(n, 1);
    const auto e2 = opt.allow_signs ? sign_canonical_signs(target) : std::vector<int>(n, 1);
    for (std::size_t i = 0; i < n; ++i)
      if (e1[i] * e2[i] < 0) seq.moves.push_back(Move::sign(i + 1));
    if (apply_moves(source, seq) != target) fail(ErrorKind::InvalidArgument, "internal: replay does not reach target");
    res.status = SearchResult::Status::Found;
    res.depth = static_cast<int>(seq.braid_count());
    res.moves = std::move(seq);
    return res;
  };

  detail::Side fwd, bwd;
  const std::string ks = detail::pack_state(canon(source), opt.entry_bound);
  const std::string kt = detail::pack_state(canon(target), opt.entry_bound);
  if (ks.empty() || kt.empty()) fail(ErrorKind::InvalidArgument, "matrix entries exceed the search entry bound");
  fwd.frontier.push_back(&fwd.seen.emplace(ks, detail::Node{}).first->first);
  bwd.frontier.push_back(&bwd.seen.emplace(kt, detail::Node{}).first->first);
  if (ks == kt) return finish({});

  auto expand_one = [&](const std::string* key) {
    std::vector<detail::Child> out;
    const IntMatrix s = detail::unpack_state(*key, n);
    for (const auto& g : generators) {
      std::string child = detail::pack_state(canon(apply_move(s, g)), opt.entry_bound);
      if (!child.empty()) out.push_back({std::move(child), key, g});
    }
    return out;
  };

  while (fwd.depth + bwd.depth < opt.max_depth) {
    const bool forward = fwd.frontier.size() <= bwd.frontier.size();
    detail::Side& side = forward ? fwd : bwd;
    const detail::Side& other = forward ? bwd : fwd;
    if (side.frontier.empty()) break;

    // Children are generated in parallel chunks but merged strictly in
    // frontier order, so the outcome is independent of the thread count.
    const std::size_t workers = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(side.frontier.size())));
    std::vector<std::vector<detail::Child>> chunks(workers);
    const std::size_t per = (side.frontier.size() + workers - 1) / workers;
    auto work = [&](std::size_t w) {
      const std::size_t lo = w * per, hi = std::min(side.frontier.size(), lo + per);
      for (std::size_t f = lo; f < hi; ++f) {
        auto c = expand_one(side.frontier[f]);
        for (auto& x : c) chunks[w].push_back(std::move(x));
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }

    std::vector<const std::string*> next;
    for (auto& chunk : chunks)
      for (auto& c : chunk) {
        auto [it, fresh] = side.seen.emplace(std::move(c.key), detail::Node{c.parent, c.move});
        if (!fresh) continue;
        next.push_back(&it->first);
        if (auto hit = other.seen.find(it->first); hit != other.seen.end()) {
          std::vector<Move> a = path_to(side, &it->first);
          std::vector<Move> b = path_to(other, &hit->first);
          if (!forward) std::swap(a, b);
          for (auto m = b.rbegin(); m != b.rend(); ++m) a.push_back(m->inverse());
          res.states = fwd.seen.size() + bwd.seen.size();
          return finish(a);
        }
      }
    side.frontier = std::move(next);
    ++side.depth;
    res.states = fwd.seen.size() + bwd.seen.size();
    if (res.states > opt.max_states) {
      res.note = "state budget exhausted";
      break;
    }
  }
  res.status = SearchResult::Status::Inconclusive;
  res.depth = fwd.depth + bwd.depth;
  if (res.note.empty()) res.note = "no connection up to depth " + std::to_string(res.depth);
  return res;
}

}  // namespace stokes_euler
