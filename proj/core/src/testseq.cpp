#include "bsw/testseq.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bsw {

  Int Monomial::eval(long long n) const {
    Int r = coeff;
    for (int i = 0; i < degree; ++i) {
      r *= n;
    }
    return r;
  }

  Monomial parse_monomial(std::string_view text) {
    std::string s;
    for (char c : text) {
      if (c != ' ') {
        s += c;
      }
    }
    auto bad = [&]() { return std::invalid_argument("schedule literal '" + std::string(text) + "'"); };
    auto number = [&](std::string_view part) {
      long long v   = 0;
      auto [p, ec]  = std::from_chars(part.data(), part.data() + part.size(), v);
      if (ec != std::errc() || p != part.data() + part.size() || v < 1) {
        throw bad();
      }
      return v;
    };
    Monomial         m;
    std::string_view rest = s;
    if (auto star = rest.find('*'); star != std::string_view::npos) {
      m.coeff = number(rest.substr(0, star));
      rest    = rest.substr(star + 1);
    }
    if (rest.empty() || rest[0] != 'n') {
      throw bad();
    }
    rest.remove_prefix(1);
    if (!rest.empty()) {
      if (rest[0] != '^') {
        throw bad();
      }
      m.degree = static_cast<int>(number(rest.substr(1)));
    }
    return m;
  }

  std::string to_string(Monomial const& m) {
    std::string s = m.coeff == 1 ? "" : std::to_string(m.coeff) + "*";
    s += "n";
    if (m.degree != 1) {
      s += "^" + std::to_string(m.degree);
    }
    return s;
  }

  long long schedule_threshold(FlatSchedule const& s) {
    long long n0 = 1;
    for (std::size_t j = 0; j + 1 < s.exps.size(); ++j) {
      long long n = 1;
      while (s.exps[j + 1].eval(n) >= s.exps[j].eval(n)) {
        ++n;
      }
      n0 = std::max(n0, n);
    }
    return n0;
  }

  namespace {

    std::size_t scheduled_rank(Flat const& f) {
      return f.rank;
    }

    // Generator scheduled at position j of the order.
    int scheduled_gen(FlatRef const& r, Flat const& f, std::size_t local) {
      return r.lo + static_cast<int>(f.closure ? f.rank + local : local);
    }

  }  // namespace

  void validate_schedule(Tower const& t, GrowthSchedule const& s) {
    for (auto const& r : t.flats()) {
      auto const& f = t.flat(r);
      if (f.kind != Flat::Kind::Abelian) {
        continue;
      }
      auto it = s.flats.find(f.id);
      if (it == s.flats.end()) {
        throw std::invalid_argument("schedule: no exponents for flat " + f.id);
      }
      auto const& fs = it->second;
      std::vector<std::size_t> sorted = fs.order;
      std::sort(sorted.begin(), sorted.end());
      bool perm = sorted.size() == scheduled_rank(f);
      for (std::size_t i = 0; perm && i < sorted.size(); ++i) {
        perm = sorted[i] == i;
      }
      if (!perm || fs.exps.size() != fs.order.size()) {
        throw std::invalid_argument("schedule: order of flat " + f.id + " is not a permutation");
      }
      for (std::size_t j = 0; j < fs.exps.size(); ++j) {
        if (fs.exps[j].coeff < 1 || fs.exps[j].degree < 1) {
          throw std::invalid_argument("schedule: exponents of flat " + f.id + " must grow");
        }
        if (j > 0 && fs.exps[j].degree >= fs.exps[j - 1].degree) {
          throw std::invalid_argument("schedule: degrees of flat " + f.id + " must strictly decrease");
        }
      }
    }
  }

  std::vector<std::size_t> identity_ordering(Tower const& t) {
    std::vector<std::size_t> out(t.flats().size());
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = k;
    }
    return out;
  }

  namespace {

    void require_legitimate(Tower const& t, std::vector<std::size_t> const& ordering) {
      auto c = check_legitimate_ordering(t, ordering);
      if (!c.legitimate) {
        throw std::invalid_argument("ordering is not legitimate at position " + std::to_string(c.failed));
      }
    }

    // |h_n(g)| <= A n^D for n >= 1
    struct Bound {
      Int A = 1;
      int D = 0;
    };

    Bound word_bound(Word const& w, std::vector<Bound> const& b) {
      Bound out{0, 0};
      for (Letter l : w) {
        auto const& x = b.at(static_cast<std::size_t>(gen_of(l)));
        out.A += x.A;
        out.D = std::max(out.D, x.D);
      }
      return out;
    }

    Bound max_bound(std::vector<Bound> const& b, std::vector<int> const& gens) {
      Bound out{1, 0};
      for (int g : gens) {
        out.A = std::max(out.A, b[static_cast<std::size_t>(g)].A);
        out.D = std::max(out.D, b[static_cast<std::size_t>(g)].D);
      }
      return out;
    }

    long long to_ll(Int const& v) {
      if (v > Int(std::numeric_limits<long long>::max()) || v < Int(std::numeric_limits<long long>::min())) {
        throw std::overflow_error("exponent out of range");
      }
      return v.convert_to<long long>();
    }

    std::size_t free_base_length(std::size_t n) {
      return 32 * (std::max<std::size_t>(n, 2) + 1);
    }

  }  // namespace

  GrowthSchedule default_schedule(Tower const& t, std::vector<std::size_t> const& ordering) {
    require_legitimate(t, ordering);
    auto               refs = t.flats();
    std::vector<Bound> b(t.names().rank());
    std::vector<int>   done;
    for (int g = 0; g < static_cast<int>(t.base().rank()); ++g) {
      done.push_back(g);
    }
    GrowthSchedule out;
    for (std::size_t pos : ordering) {
      auto const& r = refs.at(pos);
      auto const& f = t.flat(r);
      Bound       lower = max_bound(b, done);
      if (f.kind == Flat::Kind::Abelian) {
        Bound        peg = word_bound(f.peg, b);
        FlatSchedule fs;
        long long    c = to_ll(lower.A);
        for (std::size_t j = 0; j < f.rank; ++j) {
          fs.order.push_back(j);
          fs.exps.push_back({c, lower.D + static_cast<int>(f.rank - j)});
          b[static_cast<std::size_t>(scheduled_gen(r, f, j))] =
              Bound{c * peg.A, fs.exps.back().degree + peg.D};
        }
        if (f.closure) {
          for (std::size_t i = 0; i < f.rank; ++i) {
            Int a = abs(f.closure->peg_col[i]);
            for (std::size_t j = 0; j < f.rank; ++j) {
              a += abs(f.closure->K(i, j)) * c;
            }
            b[static_cast<std::size_t>(r.lo) + i] = Bound{a * peg.A, lower.D + static_cast<int>(f.rank) + peg.D};
          }
        }
        out.flats[f.id] = fs;
      } else if (f.kind == Flat::Kind::Free) {
        for (int g = r.lo; g < r.hi; ++g) {
          b[static_cast<std::size_t>(g)] = Bound{std::max(Int(lower.A + 1), Int(96)), lower.D + 1};
        }
      } else {
        // crude: twists raise the degree by one each
        Bound img{0, 0};
        for (auto const& w : f.images) {
          Bound x = word_bound(w, b);
          img.A += x.A;
          img.D = std::max(img.D, x.D);
        }
        for (int g = r.lo; g < r.hi; ++g) {
          b[static_cast<std::size_t>(g)] =
              Bound{img.A * static_cast<long long>(1 + f.twists.size()),
                    img.D + static_cast<int>(f.twists.size())};
        }
      }
      for (int g = r.lo; g < r.hi; ++g) {
        done.push_back(g);
      }
    }
    return out;
  }

  std::vector<Word> gen_smallcanc_family(std::size_t k, std::size_t n, std::size_t base_rank,
                                         std::size_t min_length, std::uint64_t seed) {
    if (base_rank < 2) {
      throw std::invalid_argument("small cancellation families need base rank at least 2");
    }
    if (k < 1 || n < 2) {
      throw std::invalid_argument("small cancellation families need k >= 1 and n >= 2");
    }
    std::size_t len = std::max(min_length, free_base_length(n));
    int         r   = static_cast<int>(base_rank);
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
      std::seed_seq   sq{static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n),
                       static_cast<std::uint64_t>(len), seed, attempt};
      std::mt19937_64 rng(sq);
      auto            pick = [&](std::vector<Letter> const& from) {
        return from[static_cast<std::size_t>(rng() % from.size())];
      };
      std::vector<Word> out;
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<Letter> raw;
        for (std::size_t p = 0; p < len; ++p) {
          std::vector<Letter> allowed;
          for (int g = 0; g < r; ++g) {
            for (int s : {1, -1}) {
              Letter l = letter(g, s);
              if (!raw.empty() && l == -raw.back()) {
                continue;
              }
              if (p + 1 == len && l == -raw.front()) {
                continue;
              }
              allowed.push_back(l);
            }
          }
          raw.push_back(pick(allowed));
        }
        out.emplace_back(raw);
      }
      if (max_piece_ratio(out) < Ratio(1, static_cast<long long>(n))) {
        return out;
      }
    }
    throw std::runtime_error("no small cancellation family found");
  }

  std::string format_point(SequencePoint const& p, Tower const& t) {
    std::ostringstream os;
    for (std::size_t g = 0; g < t.names().rank(); ++g) {
      os << t.names().name(g) << " = " << format_word(p.h.image(g), t.base()) << "\n";
    }
    return os.str();
  }

  namespace {

    Word gamma_of(Word const& x) {
      auto cd        = cyclic_decompose(x);
      auto [root, e] = primitive_root(cd.core);
      return conjugate(cd.conj, root);
    }

    SequencePoint build_point(Tower const& t, std::vector<std::size_t> const& ordering,
                              GrowthSchedule const& schedule, long long n, std::uint64_t seed,
                              bool surfaces) {
      if (n < 0) {
        throw std::invalid_argument("sequence index must be non-negative");
      }
      require_legitimate(t, ordering);
      validate_schedule(t, schedule);
      SequencePoint out;
      out.n         = n;
      out.heuristic = surfaces;
      if (n == 0) {
        out.h = t.to_base();
        return out;
      }
      std::size_t                      b = t.base().rank();
      std::vector<std::optional<Word>> img(t.names().rank());
      for (std::size_t g = 0; g < b; ++g) {
        img[g] = Word::gen(static_cast<int>(g));
      }
      auto h = [&](Word const& w) {
        Word r;
        for (Letter l : w) {
          auto const& x = img.at(static_cast<std::size_t>(gen_of(l)));
          if (!x) {
            throw std::invalid_argument("ordering uses a generator before its flat");
          }
          r *= l > 0 ? *x : x->inverse();
        }
        return r;
      };
      auto        refs = t.flats();
      std::size_t which = 0, free_count = 0;
      std::size_t longest = 1;
      for (std::size_t pos : ordering) {
        auto const& r = refs.at(pos);
        auto const& f = t.flat(r);
        if (f.kind == Flat::Kind::Abelian) {
          Word x = h(f.peg);
          if (x.empty()) {
            throw std::logic_error("peg of flat " + f.id + " is killed");
          }
          Word        gam = gamma_of(x);
          auto const& fs  = schedule.flats.at(f.id);
          std::vector<Int> m(f.rank);
          for (std::size_t j = 0; j < fs.order.size(); ++j) {
            m[fs.order[j]] = fs.exps[j].eval(n);
          }
          for (std::size_t j = 0; j < f.rank; ++j) {
            img[static_cast<std::size_t>(scheduled_gen(r, f, j))] = gam.pow(to_ll(m[j]));
          }
          if (f.closure) {
            for (std::size_t i = 0; i < f.rank; ++i) {
              Int e = 0;
              for (std::size_t j = 0; j < f.rank; ++j) {
                e += f.closure->K(i, j) * m[j];
              }
              img[static_cast<std::size_t>(r.lo) + i] =
                  x.pow(to_ll(f.closure->peg_col[i])) * gam.pow(to_ll(e));
            }
          }
        } else if (f.kind == Flat::Kind::Free) {
          std::size_t min_len = static_cast<std::size_t>(n) * longest + 1;
          auto words = gen_smallcanc_family(static_cast<std::size_t>(r.hi - r.lo),
                                            std::max<std::size_t>(static_cast<std::size_t>(n), 2), b,
                                            min_len, seed * 1000003 + free_count++);
          for (int g = r.lo; g < r.hi; ++g) {
            img[static_cast<std::size_t>(g)] = words[static_cast<std::size_t>(g - r.lo)];
          }
        } else {
          if (!surfaces) {
            throw std::invalid_argument("surface flat " + f.id + " needs a heuristic point");
          }
          if (f.twists.empty()) {
            throw std::invalid_argument("surface flat " + f.id + " has no twist curves");
          }
          auto power = n * static_cast<long long>(which++ + seed);
          auto tw    = surface_twist(f, r.lo, power);
          auto down  = t.retraction_down(r.floor);
          std::vector<Word> imgs;
          for (auto const& w : tw) {
            imgs.push_back(h(down(w)));
          }
          for (int g = r.lo; g < r.hi; ++g) {
            img[static_cast<std::size_t>(g)] = imgs[static_cast<std::size_t>(g - r.lo)];
          }
        }
        for (int g = r.lo; g < r.hi; ++g) {
          longest = std::max(longest, img[static_cast<std::size_t>(g)]->size());
        }
      }
      std::vector<Word> images;
      for (auto& x : img) {
        images.push_back(*x);
      }
      out.h = Morphism(b, images);
      return out;
    }

  }  // namespace

  SequencePoint gen_sequence_point(Tower const& t, std::vector<std::size_t> const& ordering,
                                   GrowthSchedule const& schedule, long long n, std::uint64_t seed) {
    return build_point(t, ordering, schedule, n, seed, false);
  }

  SequencePoint gen_surface_point(Tower const& t, std::vector<std::size_t> const& ordering,
                                  GrowthSchedule const& schedule, long long n, std::uint64_t seed) {
    return build_point(t, ordering, schedule, n, seed, true);
  }

  bool PointReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](Check const& c) { return c.status == Tri::Yes; });
  }

  PointReport verify_point(Tower const& t, std::vector<std::size_t> const& ordering,
                           GrowthSchedule const& schedule, SequencePoint const& point,
                           std::vector<Word> const& probes) {
    PointReport rep;
    auto        yes = [](bool b) { return b ? Tri::Yes : Tri::No; };
    auto const& h   = point.h;
    long long   n   = point.n;
    std::size_t b   = t.base().rank();
    bool        base_ok = true;
    for (std::size_t g = 0; g < b; ++g) {
      base_ok = base_ok && h.image(g) == Word::gen(static_cast<int>(g));
    }
    rep.checks.push_back({"base identity", yes(base_ok), ""});
    int bad = -1;
    auto const& rels = t.presentation().relators;
    for (std::size_t i = 0; i < rels.size() && bad < 0; ++i) {
      if (!h(rels[i]).empty()) {
        bad = static_cast<int>(i);
      }
    }
    rep.checks.push_back({"relators", yes(bad < 0), bad < 0 ? "" : "relator " + std::to_string(bad)});

    auto             refs = t.flats();
    std::set<int>    lower;
    for (int g = 0; g < static_cast<int>(b); ++g) {
      lower.insert(g);
    }
    auto len = [&](Word const& w) { return h(w).size(); };
    auto dominated_by = [&](std::vector<int> const& top, std::string const& tag) {
      std::vector<Word> ps;
      for (int g : lower) {
        ps.push_back(Word::gen(g));
      }
      for (auto const& p : probes) {
        bool below = true;
        for (Letter l : p) {
          below = below && lower.count(gen_of(l));
        }
        if (below) {
          ps.push_back(p);
        }
      }
      std::string detail;
      for (int x : top) {
        std::size_t lx = len(Word::gen(x));
        for (auto const& p : ps) {
          if (static_cast<std::size_t>(std::max<long long>(n, 1)) * len(p) > lx && detail.empty()) {
            detail = format_word(p, t.names()) + " vs " + t.names().name(static_cast<std::size_t>(x));
          }
        }
      }
      rep.checks.push_back({"domination [" + tag + "]", yes(detail.empty()), detail});
    };
    for (std::size_t pos : ordering) {
      auto const& r = refs.at(pos);
      auto const& f = t.flat(r);
      if (f.kind == Flat::Kind::Abelian) {
        auto it = schedule.flats.find(f.id);
        if (it == schedule.flats.end()) {
          rep.checks.push_back({"ratios [" + f.id + "]", Tri::No, "no schedule"});
        } else {
          auto const& fs = it->second;
          Word        x  = h(f.peg);
          std::string detail;
          bool        ok = !x.empty();
          std::vector<long long> e;
          if (ok) {
            Word gam = gamma_of(x);
            for (std::size_t j = 0; j < fs.order.size() && ok; ++j) {
              auto p = power_of(h(Word::gen(scheduled_gen(r, f, fs.order[j]))), gam);
              ok     = p && Int(*p) == fs.exps[j].eval(n);
              if (p) {
                e.push_back(*p);
                detail += (detail.empty() ? "" : ",") + std::to_string(*p);
              }
            }
          }
          if (ok && n >= schedule_threshold(fs)) {
            for (std::size_t j = 0; j + 1 < e.size(); ++j) {
              ok = ok && std::abs(e[j + 1]) < std::abs(e[j]);
            }
          }
          rep.checks.push_back({"ratios [" + f.id + "]", yes(ok), detail});
          if (!fs.order.empty()) {
            dominated_by({scheduled_gen(r, f, fs.order.back())}, f.id);
          }
        }
      } else if (f.kind == Flat::Kind::Free && n > 0) {
        std::vector<Word> words;
        std::vector<int>  gens;
        for (int g = r.lo; g < r.hi; ++g) {
          words.push_back(h(Word::gen(g)));
          gens.push_back(g);
        }
        bool ok = std::none_of(words.begin(), words.end(), [](Word const& w) { return w.empty(); });
        std::string detail;
        if (ok) {
          auto ratio = max_piece_ratio(words);
          detail     = "piece ratio " + std::to_string(ratio.numerator()) + "/" + std::to_string(ratio.denominator());
          ok         = ratio < Ratio(1, std::max<long long>(n, 2));
          auto [lo, hi] = std::minmax_element(words.begin(), words.end(),
                                              [](Word const& a, Word const& c) { return a.size() < c.size(); });
          ok = ok && hi->size() <= 2 * lo->size();
        }
        rep.checks.push_back({"small cancellation [" + f.id + "]", yes(ok), detail});
        dominated_by(gens, f.id);
      }
      for (int g = r.lo; g < r.hi; ++g) {
        lower.insert(g);
      }
    }
    return rep;
  }

  namespace {

    bool has_surface(Tower const& t) {
      for (auto const& r : t.flats()) {
        if (t.flat(r).kind == Flat::Kind::Surface) {
          return true;
        }
      }
      return false;
    }

  }  // namespace

  Verdict limit_oracle(Tower const& t, Word const& w, long long budget, std::uint64_t seed) {
    auto ord   = identity_ordering(t);
    auto sched = default_schedule(t, ord);
    bool surf  = has_surface(t);
    for (long long n = 1; n <= budget; ++n) {
      auto p = surf ? gen_surface_point(t, ord, sched, n, seed + 1) : gen_sequence_point(t, ord, sched, n, seed);
      bool hom = true;
      for (auto const& r : t.presentation().relators) {
        hom = hom && p.h(r).empty();
      }
      if (!hom) {
        continue;
      }
      Word img = p.h(w);
      if (!img.empty()) {
        Verdict v;
        v.kind    = Verdict::Kind::NonTrivial;
        v.witness = "testseq-" + std::to_string(n);
        v.image   = img;
        v.exact   = true;
        return v;
      }
    }
    return {};
  }

  SwapCheck swap_symmetry_check(TwinTower const& tt, Word const& w, long long budget) {
    SwapCheck out;
    out.swapped    = tt.swap(w);
    out.difference = out.swapped * w.inverse();
    auto const& R  = tt.result;
    out.verdict    = word_verdict(R.structure(), out.difference, R.witnesses());
    if (out.verdict.kind == Verdict::Kind::Unknown) {
      out.verdict = limit_oracle(R, out.difference, budget);
    }
    return out;
  }

}  // namespace bsw
