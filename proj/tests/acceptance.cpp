// Acceptance run: one PASS/FAIL line per criterion.

#include "commands.hpp"

#include "bsw/construct.hpp"
#include "bsw/spec_io.hpp"
#include "bsw/testseq.hpp"

#include <boost/integer/common_factor.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using namespace bsw;

namespace {

  // Runtime budgets in seconds and numeric thresholds.
  constexpr double kFixtureBudget    = 1.0;  // each reproduction
  constexpr double kExtendBudget     = 1.0;
  constexpr double kSymmetricBudget  = 5.0;
  constexpr double kCompletionBudget = 30.0;
  constexpr double kSmallCancBudget  = 60.0;
  constexpr double kTestSeqBudget    = 10.0;
  constexpr double kWordBudget       = 60.0;
  constexpr double kSwapBudget       = 30.0;
  constexpr double kLatticeBudget    = 10.0;
  constexpr double kRatioAt50        = 0.1;

  std::string fx(std::string const& name) {
    return (std::filesystem::path(BSW_FIXTURE_DIR) / name).string();
  }

  double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  // Collects failure notes for one criterion.
  struct Log {
    std::vector<std::string> notes;
    bool                     ok = true;
    void fail(std::string const& s) {
      ok = false;
      if (notes.size() < 5) {
        notes.push_back(s);
      }
    }
    void expect(bool c, std::string const& s) {
      if (!c) {
        fail(s);
      }
    }
  };

  bool report(int id, std::string const& name, double budget, std::function<std::string(Log&)> body) {
    Log         log;
    auto        t0 = std::chrono::steady_clock::now();
    std::string summary;
    try {
      summary = body(log);
    } catch (std::exception const& e) {
      log.fail(std::string("exception: ") + e.what());
    }
    double s = seconds_since(t0);
    if (s > budget) {
      log.fail("runtime " + std::to_string(s) + " s over budget");
    }
    char head[160];
    std::snprintf(head, sizeof head, "criterion %d %-34s %s  %.2fs/%.0fs", id, name.c_str(),
                  log.ok ? "PASS" : "FAIL", s, budget);
    std::cout << head << (summary.empty() ? "" : "  " + summary) << '\n';
    for (auto const& n : log.notes) {
      std::cout << "    " << n << '\n';
    }
    std::cout.flush();
    return log.ok;
  }

  // ---- independent oracles

  std::vector<Letter> free_reduce(std::vector<Letter> const& w) {
    std::vector<Letter> out;
    for (Letter x : w) {
      if (!out.empty() && out.back() == -x) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return out;
  }

  // All reduced words up to a length, as letter vectors.
  std::vector<std::vector<Letter>> reduced_words(int rank, std::size_t maxlen) {
    std::vector<std::vector<Letter>> out{{}};
    std::vector<std::vector<Letter>> layer{{}};
    for (std::size_t len = 1; len <= maxlen; ++len) {
      std::vector<std::vector<Letter>> next;
      for (auto const& u : layer) {
        for (int g = 1; g <= rank; ++g) {
          for (int s : {1, -1}) {
            Letter x = s * g;
            if (!u.empty() && u.back() == -x) {
              continue;
            }
            auto v = u;
            v.push_back(x);
            next.push_back(std::move(v));
          }
        }
      }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  Word to_word(std::vector<Letter> const& v) {
    return Word(v);
  }

  // <e1, e2, a | a e1 a^-1 = e1> is an HNN extension of F(e1, e2) with
  // stable letter a; Britton: a word is trivial iff pinches a^s e1^k a^-s
  // remove every a and the rest reduces freely to 1.  Letters: 1 = e1,
  // 2 = e2, 3 = a.
  bool britton_trivial(std::vector<Letter> w) {
    w = free_reduce(w);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < w.size() && !changed; ++i) {
        if (std::abs(w[i]) != 3) {
          continue;
        }
        std::size_t j = i + 1;
        while (j < w.size() && std::abs(w[j]) == 1) {
          ++j;
        }
        if (j < w.size() && w[j] == -w[i]) {
          std::vector<Letter> v(w.begin(), w.begin() + static_cast<long>(i));
          v.insert(v.end(), w.begin() + static_cast<long>(i) + 1, w.begin() + static_cast<long>(j));
          v.insert(v.end(), w.begin() + static_cast<long>(j) + 1, w.end());
          w       = free_reduce(v);
          changed = true;
        }
      }
    }
    return w.empty();
  }

  // Longest common prefix over distinct positioned occurrences among
  // rotations of the words and their inverses, over the shorter length.
  Ratio brute_piece_ratio(std::vector<Word> const& ws) {
    std::vector<std::vector<Letter>> forms;
    for (auto const& x : ws) {
      auto v = x.letters();
      forms.push_back(v);
      std::vector<Letter> inv(v.rbegin(), v.rend());
      for (auto& l : inv) {
        l = -l;
      }
      forms.push_back(inv);
    }
    Ratio best(0);
    for (std::size_t a = 0; a < forms.size(); ++a) {
      for (std::size_t b = a; b < forms.size(); ++b) {
        auto const& A = forms[a];
        auto const& B = forms[b];
        std::size_t m = std::min(A.size(), B.size());
        for (std::size_t s = 0; s < A.size(); ++s) {
          for (std::size_t u = (a == b ? s + 1 : 0); u < B.size(); ++u) {
            std::size_t q = 0;
            while (q < m && A[(s + q) % A.size()] == B[(u + q) % B.size()]) {
              ++q;
            }
            if (q > 0 && Ratio(static_cast<long long>(q), static_cast<long long>(m)) > best) {
              best = Ratio(static_cast<long long>(q), static_cast<long long>(m));
            }
          }
        }
      }
    }
    return best;
  }

  Int cofactor_det(IntMatrix const& m) {
    std::size_t n = m.rows();
    if (n == 0) {
      return 1;
    }
    if (n == 1) {
      return m(0, 0);
    }
    Int d = 0;
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t c = 0, k = 0; c < n; ++c) {
          if (c != j) {
            minor(r - 1, k++) = m(r, c);
          }
        }
      }
      Int term = m(0, j) * cofactor_det(minor);
      d += (j % 2 ? -term : term);
    }
    return d;
  }

  bool unit_det(IntMatrix const& m) {
    Int d = cofactor_det(m);
    return d == 1 || d == -1;
  }

  bool hermite_shape(IntMatrix const& h, std::size_t rank) {
    std::size_t row = 0;
    for (std::size_t j = 0; j < h.cols(); ++j) {
      if (j >= rank) {
        for (std::size_t i = 0; i < h.rows(); ++i) {
          if (h(i, j) != 0) {
            return false;
          }
        }
        continue;
      }
      while (row < h.rows() && h(row, j) == 0) {
        ++row;
      }
      if (row == h.rows() || h(row, j) <= 0) {
        return false;
      }
      for (std::size_t k = 0; k < h.cols(); ++k) {
        if (k > j && h(row, k) != 0) {
          return false;
        }
        if (k < j && (h(row, k) < 0 || h(row, k) >= h(row, j))) {
          return false;
        }
      }
      for (std::size_t i = 0; i < row; ++i) {
        if (h(i, j) != 0) {
          return false;
        }
      }
      ++row;
    }
    return true;
  }

  bool smith_shape(IntMatrix const& s) {
    Int  prev = 1;
    bool zero = false;
    for (std::size_t i = 0; i < s.rows(); ++i) {
      for (std::size_t j = 0; j < s.cols(); ++j) {
        if (i != j && s(i, j) != 0) {
          return false;
        }
      }
      if (i >= s.cols()) {
        continue;
      }
      Int d = s(i, i);
      if (d < 0 || (zero && d != 0)) {
        return false;
      }
      if (d == 0) {
        zero = true;
      } else if (d % prev != 0) {
        return false;
      } else {
        prev = d;
      }
    }
    return true;
  }

  // v in the column lattice of a non-singular 2x2 K iff adj(K) v = 0 mod det.
  bool in_lattice2(IntMatrix const& K, long long x, long long y) {
    Int det = K(0, 0) * K(1, 1) - K(0, 1) * K(1, 0);
    Int c0  = K(1, 1) * x - K(0, 1) * y;
    Int c1  = -K(1, 0) * x + K(0, 0) * y;
    return c0 % det == 0 && c1 % det == 0;
  }

  Word random_word(std::mt19937& rng, int rank, std::size_t len) {
    std::uniform_int_distribution<int> g(1, rank), s(0, 1);
    std::vector<Letter>                v;
    while (v.size() < len) {
      Letter x = g(rng) * (s(rng) ? 1 : -1);
      if (v.empty() || v.back() != -x) {
        v.push_back(x);
      }
    }
    return Word(v);
  }

  // ---- criteria

  std::string fixtures(Log& log) {
    struct Case {
      std::string label, command, input, expected;
    };
    std::vector<Case> cases = {
        {"(a) abelian flat example", "present", "abelian_flat_example.json",
         "< x1 x2 x3 z1 z2 | x1^2*x2^2*x3^2, x1*z1*x1^-1*z1^-1, x1*z2*x1^-1*z2^-1, "
         "z1*z2*z1^-1*z2^-1 >"},
        {"(b) non-abelian twin tower", "twin", "nonabelian.json",
         "< e1 e2 x1 x2 z1 z2 y1 y2 z1' z2' | x1*x2*x1^-1*x2^-1*e2*e1*e2^-1*e1^-1, "
         "z1*z2*z1^-1*z2^-1, z1*x1^3*x2^4*z1^-1*x2^-4*x1^-3, z2*x1^3*x2^4*z2^-1*x2^-4*x1^-3, "
         "y1*y2*y1^-1*y2^-1*e2*e1*e2^-1*e1^-1, z1'*z2'*z1'^-1*z2'^-1, "
         "z1'*y1^3*y2^4*z1'^-1*y2^-4*y1^-3, z2'*y1^3*y2^4*z2'^-1*y2^-4*y1^-3 >"},
        {"(c) abelian twin tower", "twin", "abelian.json",
         "< e1 e2 z1 z2 y1 y2 x1 x2 p1 p2 | z1*z2*z1^-1*z2^-1, z1*y1*z1^-1*y1^-1, "
         "z1*y2*z1^-1*y2^-1, z2*y1*z2^-1*y1^-1, z2*y2*z2^-1*y2^-1, y1*y2*y1^-1*y2^-1, "
         "z1*e1^2*e2^2*z1^-1*e2^-2*e1^-2, z2*e1^2*e2^2*z2^-1*e2^-2*e1^-2, "
         "y1*e1^2*e2^2*y1^-1*e2^-2*e1^-2, y2*e1^2*e2^2*y2^-1*e2^-2*e1^-2, "
         "x1*x2*x1^-1*x2^-1*e1*z1*e1^-1*z1^-1, p1*p2*p1^-1*p2^-1*e1*y1*e1^-1*y1^-1 >"},
    };
    double worst = 0;
    for (auto const& c : cases) {
      auto t0  = std::chrono::steady_clock::now();
      auto res = cli::run(c.command, fx(c.input), {});
      double s = seconds_since(t0);
      worst    = std::max(worst, s);
      log.expect(s < kFixtureBudget, c.label + ": " + std::to_string(s) + " s");
      log.expect(res.code == cli::kOk, c.label + ": exit " + std::to_string(res.code) + " " + res.err);
      auto first = res.out.substr(0, res.out.find('\n'));
      log.expect(first == c.expected, c.label + ": got " + first);
    }
    // the four floors of (b)
    auto spec = parse_tower_spec(read_text_file(fx("nonabelian.json")));
    auto tt   = twin_tower(spec.tower, spec.twin_names);
    auto const& R = tt.result;
    log.expect(R.height() == 4, "(b) height");
    if (R.height() == 4) {
      std::vector<std::string> got;
      for (std::size_t i = 0; i < 4; ++i) {
        auto const& f     = R.floors()[i].flats.at(0);
        Basis       below = R.basis_at(i);
        got.push_back(f.kind == Flat::Kind::Surface
                          ? "surface " + std::to_string(f.genus) + "," + std::to_string(f.boundary.size())
                                + " on " + format_word(f.boundary.at(0), below)
                          : "Z^" + std::to_string(f.rank) + " on " + format_word(f.peg, below));
      }
      std::vector<std::string> want = {"surface 1,1 on e1*e2*e1^-1*e2^-1", "Z^2 on x1^3*x2^4",
                                       "surface 1,1 on e1*e2*e1^-1*e2^-1", "Z^2 on y1^3*y2^4"};
      for (std::size_t i = 0; i < 4; ++i) {
        log.expect(got[i] == want[i], "(b) floor " + std::to_string(i + 1) + ": " + got[i]);
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "3 fixtures byte-equal, slowest %.3fs", worst);
    return buf;
  }

  std::string extension(Log& log) {
    int agree = 0;
    for (int p = -9; p <= 9; ++p) {
      std::optional<int> y;
      for (int k = -20; k <= 20; ++k) {
        if (2 + 3 * k == p) {
          y = k;
        }
      }
      cli::Options o;
      o.p        = std::to_string(p);
      auto   res = cli::run("extend", fx("closure.json"), o);
      std::string want = y ? "extends, y=" + std::to_string(*y) + "\n" : "does not extend, coset 2+3ℤ\n";
      if (res.code == cli::kOk && res.out == want) {
        ++agree;
      } else {
        log.fail("p=" + std::to_string(p) + ": " + res.out + res.err);
      }
    }
    return std::to_string(agree) + "/19 exponents agree with the witness scan";
  }

  std::string symmetric(Log& log) {
    auto res = cli::run("symmetrize", fx("symmetric.json"),
                        [] {
                          cli::Options o;
                          o.embeddings = fx("symmetric_embeddings.json");
                          return o;
                        }());
    log.expect(res.code == cli::kOk, "symmetrize exit " + std::to_string(res.code) + " " + res.err);
    log.expect(res.out.find("pair C C': U = 6ℤ, Û = 6ℤ, equal\n") != std::string::npos,
               "(2,3) pair: " + res.out);
    auto pair = symmetrize({{0}, IntMatrix{{2}}}, {{0}, IntMatrix{{3}}});
    log.expect(pair.coset.lattice == Lattice(IntMatrix{{6}}) && pair.coset_hat.lattice == Lattice(IntMatrix{{6}}),
               "(2,3) lattices");

    std::mt19937                       rng(20240731);
    std::uniform_int_distribution<int> ex(1, 15), off(-30, 30), e(-4, 4);
    int                                rank1 = 0, rank2 = 0;
    for (int k = 0; k < 100; ++k) {
      long long j = ex(rng), l = ex(rng);
      auto      s = symmetrize({{off(rng)}, IntMatrix{{j}}}, {{off(rng)}, IntMatrix{{l}}});
      bool ok = s.coset.lattice == s.coset_hat.lattice
                && s.coset.lattice.basis()(0, 0) == boost::integer::lcm(j, l);
      rank1 += ok;
      log.expect(ok, "rank 1 pair (" + std::to_string(j) + "," + std::to_string(l) + ")");
    }
    while (rank2 < 100) {
      IntMatrix K{{e(rng), e(rng)}, {e(rng), e(rng)}};
      IntMatrix Kh{{e(rng), e(rng)}, {e(rng), e(rng)}};
      if (cofactor_det(K) == 0 || cofactor_det(Kh) == 0) {
        continue;
      }
      ++rank2;
      auto s  = symmetrize({{e(rng), e(rng)}, K}, {{e(rng), e(rng)}, Kh});
      bool ok = s.coset.lattice == s.coset_hat.lattice;
      for (long long x = -12; x <= 12 && ok; ++x) {
        for (long long y = -12; y <= 12 && ok; ++y) {
          ok = s.coset.lattice.contains({x, y}) == (in_lattice2(K, x, y) && in_lattice2(Kh, x, y));
        }
      }
      log.expect(ok, "rank 2 pair " + to_string(K) + " " + to_string(Kh));
    }
    return "U = Û = 6ℤ; 100 rank-1 and 100 rank-2 pairs checked";
  }

  std::string completions(Log& log) {
    std::ostringstream summary;
    for (auto const& [file, surface] : std::vector<std::pair<std::string, bool>>{
             {"complete_trivial.json", false},
             {"complete_abelian_leaf.json", false},
             {"complete_surface.json", true}}) {
      auto g = parse_gad_spec(read_text_file(fx(file)));
      auto c = completion(g.gad, g.eta, g.target, g.filtration);
      auto const& src = c.fp.presentation;
      for (auto const& r : src.relators) {
        log.expect(decide_trivial(c.comp.structure(), c.embedding(r), false).status == Tri::Yes,
                   file + ": relator not killed: " + format_word(r, src.generators));
      }
      auto d = gog_decider(g.gad.gog, c.fp);
      if (!d) {
        log.fail(file + ": no decider for the source group");
        continue;
      }
      auto        witnesses = c.comp.witnesses();
      std::size_t words = 0, unknown = 0, mismatched = 0;
      for (auto const& v : reduced_words(static_cast<int>(src.generators.rank()), 4)) {
        Word u   = to_word(v);
        Tri  gsrc = d->decide(d->to_structure(u));
        auto ver  = word_verdict(c.comp.structure(), c.embedding(u), witnesses);
        ++words;
        if (gsrc == Tri::Unknown || ver.kind == Verdict::Kind::Unknown) {
          ++unknown;
          continue;
        }
        bool img_trivial = ver.kind == Verdict::Kind::Trivial;
        if (img_trivial != (gsrc == Tri::Yes)) {
          ++mismatched;
          log.fail(file + ": " + format_word(u, src.generators) + " changes triviality");
        }
      }
      if (!surface) {
        log.expect(unknown == 0, file + ": " + std::to_string(unknown) + " Unknown verdicts");
      }
      log.expect(mismatched == 0, file + ": injectivity violated");
      summary << (summary.tellp() > 0 ? "; " : "") << file.substr(9, file.size() - 14) << " " << words
              << " words, " << unknown << " unknown";
    }
    return summary.str();
  }

  std::string small_cancellation(Log& log) {
    std::size_t families = 0;
    for (std::size_t k : {1, 2, 3}) {
      for (std::size_t n : {2, 10, 20, 50}) {
        auto  fam = gen_smallcanc_family(k, n);
        Ratio lim(1, static_cast<long long>(n));
        log.expect(max_piece_ratio(fam) < lim, "checker rejects k=" + std::to_string(k) + " n=" + std::to_string(n));
        log.expect(brute_piece_ratio(fam) < lim, "oracle rejects k=" + std::to_string(k) + " n=" + std::to_string(n));
        ++families;
      }
    }
    std::mt19937 rng(5150);
    std::size_t  agree = 0;
    for (int s = 0; s < 500; ++s) {
      std::vector<Word> ws;
      std::size_t       count = 1 + s % 3;
      while (ws.size() < count) {
        Word x = cyclic_decompose(random_word(rng, 2 + s % 2, 1 + rng() % 10)).core;
        if (!x.empty()) {
          ws.push_back(x);
        }
      }
      Ratio a = max_piece_ratio(ws), b = brute_piece_ratio(ws);
      agree += a == b;
      if (a != b) {
        std::ostringstream os;
        os << "set " << s << ": checker " << a << " oracle " << b;
        log.fail(os.str());
      }
    }
    return std::to_string(families) + " families; checker agrees on " + std::to_string(agree) + "/500 sets";
  }

  std::string test_sequences(Log& log) {
    auto abel     = parse_tower_spec(read_text_file(fx("abelian.json")));
    auto closure  = parse_tower_spec(read_text_file(fx("closure.json")));
    Tower first   = Tower(abel.tower.base(), {abel.tower.floors()[0]});
    std::vector<std::pair<std::string, Tower>> towers = {
        {"abelian first floor", first}, {"closure base", closure.tower}, {"closure", closure.resolved()}};
    std::size_t points = 0;
    double      ratio50 = 1;
    for (auto const& [label, t] : towers) {
      double last_ratio = 2;
      auto   ord        = identity_ordering(t);
      auto sch = default_schedule(t, ord);
      for (long long n : {1, 5, 25, 50}) {
        auto p = gen_sequence_point(t, ord, sch, n);
        ++points;
        auto rep = verify_point(t, ord, sch, p);
        for (auto const& c : rep.checks) {
          log.expect(c.status == Tri::Yes, label + " n=" + std::to_string(n) + ": " + c.name + " " + c.detail);
        }
        for (std::size_t g = 0; g < t.base().rank(); ++g) {
          log.expect(p.h.image(g) == Word::gen(static_cast<int>(g)), label + ": base moved");
        }
        for (auto const& r : t.presentation().relators) {
          log.expect(p.h(r).empty(), label + ": relator survives at n=" + std::to_string(n));
        }
        if (label == "abelian first floor") {
          // z1, z2 are powers of the cyclically reduced peg root
          double l1    = static_cast<double>(p.h.image(2).size());
          double l2    = static_cast<double>(p.h.image(3).size());
          double ratio = l2 / l1;
          log.expect(ratio < last_ratio, label + ": ratio not decreasing at n=" + std::to_string(n));
          last_ratio = ratio;
          if (n == 50) {
            ratio50 = ratio;
            log.expect(ratio50 < kRatioAt50, label + ": ratio at n=50 is " + std::to_string(ratio50));
          }
        }
      }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu points verified; ratio at n=50 %.4f", points, ratio50);
    return buf;
  }

  std::string word_problem(Log& log) {
    Tower       t = parse_tower_spec(read_text_file(fx("closure.json"))).resolved();
    auto const& names = t.names();
    log.expect(format_presentation(t.presentation())
                   == "< e1 e2 z a | z*a*z^-1*a^-1, z*e1*z^-1*e1^-1, a*e1*a^-1*e1^-1, z*a^-3*e1^-2 >",
               "unexpected closure presentation");
    // z = e1^2 a^3 in oracle letters (1 = e1, 2 = e2, 3 = a)
    std::map<Letter, std::vector<Letter>> sub = {
        {1, {1}}, {-1, {-1}}, {2, {2}}, {-2, {-2}}, {3, {1, 1, 3, 3, 3}}, {-3, {-3, -3, -3, -1, -1}}, {4, {3}}, {-4, {-3}}};
    auto        witnesses = t.witnesses();
    std::size_t words = 0, unknown = 0, trivial = 0;
    for (auto const& v : reduced_words(4, 6)) {
      std::vector<Letter> o;
      for (Letter x : v) {
        auto const& s = sub.at(x);
        o.insert(o.end(), s.begin(), s.end());
      }
      bool want = britton_trivial(o);
      auto ver  = word_verdict(t.structure(), to_word(v), witnesses);
      ++words;
      if (ver.kind == Verdict::Kind::Unknown) {
        ++unknown;
        log.fail("unknown: " + format_word(to_word(v), names));
        continue;
      }
      trivial += want;
      if ((ver.kind == Verdict::Kind::Trivial) != want) {
        log.fail("disagrees on " + format_word(to_word(v), names));
      }
    }
    return std::to_string(words) + " words, " + std::to_string(trivial) + " trivial, "
           + std::to_string(unknown) + " unknown";
  }

  std::string swap_symmetry(Log& log) {
    auto spec = parse_tower_spec(read_text_file(fx("nonabelian.json")));
    auto tt   = twin_tower(spec.tower, spec.twin_names);
    auto const& R = tt.result;
    auto witnesses = R.witnesses();
    auto separated = [&witnesses](Word const& d) {
      for (auto const& m : witnesses) {
        if (!m.map(d).empty()) {
          return true;
        }
      }
      return false;
    };
    std::size_t false_trivial = 0;
    auto        judge         = [&](Word const& w) {
      auto c = swap_symmetry_check(tt, w);
      if (c.verdict.kind == Verdict::Kind::Trivial && separated(c.difference)) {
        ++false_trivial;
        log.fail("false Trivial on " + format_word(w, R.names()));
      }
      return c.verdict.kind;
    };

    std::mt19937 rng(77);
    int          coeff = 0;
    for (int k = 0; k < 50; ++k) {
      Word w = random_word(rng, 2, 1 + k % 12);
      coeff += judge(w) == Verdict::Kind::Trivial;
    }
    log.expect(coeff == 50, std::to_string(coeff) + "/50 coefficient words Trivial");

    Word x1  = Word::gen(2);
    Word x1p = tt.swap(x1);
    log.expect(judge(x1 * x1p) == Verdict::Kind::NonTrivial, "x1 x1' not NonTrivial");

    int mixed = 0, tried = 0;
    while (mixed < 20 && tried < 2000) {
      ++tried;
      Word w = random_word(rng, static_cast<int>(R.names().rank()), 2 + rng() % 7);
      bool has_top = false;
      for (Letter l : w) {
        has_top = has_top || std::abs(l) > 2;
      }
      Word d = tt.swap(w) * w.inverse();
      if (!has_top || !separated(d)) {
        judge(w);
        continue;
      }
      ++mixed;
      log.expect(judge(w) == Verdict::Kind::NonTrivial, "mixed word not NonTrivial: " + format_word(w, R.names()));
    }
    log.expect(mixed == 20, "only " + std::to_string(mixed) + " separated mixed words");
    return "50 coefficient words, x1x1', " + std::to_string(mixed) + " mixed words; " + std::to_string(tried)
           + " words judged, " + std::to_string(false_trivial) + " false Trivial";
  }

  std::string lattice_algebra(Log& log) {
    std::mt19937                       rng(1000);
    std::uniform_int_distribution<int> dim(1, 4), entry(-5, 5);
    std::size_t                        ok = 0;
    for (int k = 0; k < 1000; ++k) {
      std::size_t r = dim(rng), c = dim(rng);
      IntMatrix   M(r, c);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
          M(i, j) = entry(rng);
        }
      }
      auto h  = hnf(M);
      auto s  = snf(M);
      bool hk = h.H == M * h.U && unit_det(h.U) && hermite_shape(h.H, h.rank);
      bool sk = s.S == s.L * M * s.R && unit_det(s.L) && unit_det(s.R) && smith_shape(s.S) && s.rank == h.rank;
      if (hk && sk) {
        ++ok;
      } else {
        log.fail("matrix " + to_string(M) + (hk ? "" : " hnf") + (sk ? "" : " snf"));
      }
    }
    return std::to_string(ok) + "/1000 matrices";
  }

}  // namespace

int main() {
  bool all = true;
  all &= report(1, "fixture reproduction", 3 * kFixtureBudget, fixtures);
  all &= report(2, "closure extension criterion", kExtendBudget, extension);
  all &= report(3, "symmetric closure", kSymmetricBudget, symmetric);
  all &= report(4, "completion embedding", kCompletionBudget, completions);
  all &= report(5, "small cancellation", kSmallCancBudget, small_cancellation);
  all &= report(6, "test-sequence checks", kTestSeqBudget, test_sequences);
  all &= report(7, "word-problem exactness", kWordBudget, word_problem);
  all &= report(8, "swap symmetry", kSwapBudget, swap_symmetry);
  all &= report(9, "lattice algebra", kLatticeBudget, lattice_algebra);
  std::cout << (all ? "acceptance: all criteria pass" : "acceptance: some criteria fail") << '\n';
  return all ? 0 : 1;
}
