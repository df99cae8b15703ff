#include "bsw/normal.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace bsw {

  std::size_t Reduction::new_syllables() const {
    return static_cast<std::size_t>(std::count(lower.begin(), lower.end(), false));
  }

  namespace {

    // old = new * Val(q) given old = Val(t) * new
    Trace from_left(Trace const& t, Word const& nw) {
      return conj_trace(t, nw.inverse());
    }

    // X^k = Val(T) Y^k given X Y^-1 = h r^s h^-1
    Trace power_shift(Word const& Y, Word const& h, int r, int s, long long k) {
      Trace t;
      if (k > 0) {
        Word yi;
        for (long long i = 0; i < k; ++i) {
          t.push_back({yi * h, r, s});
          yi *= Y;
        }
      } else {
        Word yi;
        for (long long i = 1; i <= -k; ++i) {
          yi *= Y.inverse();
          t.push_back({yi * h, r, -s});
        }
      }
      return t;
    }

    // Syllable list carrying the accumulated proof: original = lits * Val(acc).
    struct Rewriter {
      std::vector<Word> lits;
      std::vector<bool> low;
      Trace             acc;
      bool              tr  = false;
      bool              hnn = false;

      Word right_of(std::size_t j) const {
        Word r;
        for (std::size_t k = j; k < lits.size(); ++k) {
          r *= lits[k];
        }
        return r;
      }

      // replaces [i, j); old = new * Val(q)
      void replace(std::size_t              i,
                   std::size_t              j,
                   std::vector<Word> const& nl,
                   std::vector<bool> const& nlow,
                   Trace const&             q) {
        if (tr && !q.empty()) {
          acc = concat(conj_trace(q, right_of(j).inverse()), acc);
        }
        lits.erase(lits.begin() + i, lits.begin() + j);
        low.erase(low.begin() + i, low.begin() + j);
        lits.insert(lits.begin() + i, nl.begin(), nl.end());
        low.insert(low.begin() + i, nlow.begin(), nlow.end());
      }

      // Alternating lower/new, starting and ending with a lower syllable.
      void normalize() {
        std::vector<Word> nl;
        std::vector<bool> nw;
        for (std::size_t i = 0; i < lits.size(); ++i) {
          if (!low[i] && lits[i].empty()) {
            continue;
          }
          if (low[i]) {
            if (!nw.empty() && nw.back()) {
              nl.back() *= lits[i];
            } else {
              nl.push_back(lits[i]);
              nw.push_back(true);
            }
          } else {
            if (nw.empty() || !nw.back()) {
              nl.emplace_back();
              nw.push_back(true);
            }
            nl.push_back(lits[i]);
            nw.push_back(false);
          }
        }
        if (nw.empty() || !nw.back()) {
          nl.emplace_back();
          nw.push_back(true);
        }
        lits = std::move(nl);
        low  = std::move(nw);
      }

      Reduction finish(bool exact) {
        Reduction r;
        r.exact = exact;
        for (std::size_t i = 0; i < lits.size(); ++i) {
          if (low[i] && lits[i].empty()) {
            continue;
          }
          r.syllables.push_back(lits[i]);
          r.lower.push_back(low[i]);
        }
        r.trace = std::move(acc);
        return r;
      }
    };

    Rewriter split(Word const& w, int lo, bool tr, bool single_new) {
      Rewriter rw;
      rw.tr = tr;
      for (Letter l : w) {
        bool lower = gen_of(l) < lo;
        if (!rw.low.empty() && rw.low.back() == lower && (lower || !single_new)) {
          rw.lits.back() *= Word{l};
        } else {
          rw.lits.push_back(Word{l});
          rw.low.push_back(lower);
        }
      }
      rw.normalize();
      return rw;
    }

    struct Tok {
      int key;  // 0 peg, j + 1 basis slot j, -1 non-basis generator
      int sign;
      int gen;
    };

    class Engine {
     public:
      Engine(GroupStructure const& g, bool tr) : _g(g), _tr(tr && g.proofs) {}

      Decision decide(std::size_t depth, Word const& w) {
        if (w.empty()) {
          return {Tri::Yes, {}};
        }
        if (depth == 0) {
          return {Tri::No, {}};
        }
        auto const& st = _g.steps[depth - 1];
        if (w.uses_only_below(st.lo)) {
          return decide(depth - 1, w);
        }
        auto red = reduce(depth - 1, w);
        if (!red.exact) {
          return {Tri::Unknown, {}};
        }
        if (red.new_syllables() > 0) {
          return {Tri::No, {}};
        }
        Word a;
        for (auto const& s : red.syllables) {
          a *= s;
        }
        auto d = decide(depth - 1, a);
        if (d.status == Tri::Yes) {
          d.trace = concat(std::move(d.trace), red.trace);
        }
        return d;
      }

      PowerResult power(std::size_t depth, Word const& u, Word const& p) {
        if (p.empty()) {
          auto d = decide(depth, u);
          return {d.status, 0, std::move(d.trace)};
        }
        if (depth == 0) {
          auto k = power_of(u, p);
          return k ? PowerResult{Tri::Yes, *k, {}} : PowerResult{Tri::No, 0, {}};
        }
        auto const& st = _g.steps[depth - 1];
        if (p.uses_only_below(st.lo)) {
          if (u.uses_only_below(st.lo)) {
            return power(depth - 1, u, p);
          }
          auto red = reduce(depth - 1, u);
          if (!red.exact) {
            return {Tri::Unknown, 0, {}};
          }
          if (red.new_syllables() > 0) {
            return {Tri::No, 0, {}};
          }
          Word a;
          for (auto const& s : red.syllables) {
            a *= s;
          }
          auto r = power(depth - 1, a, p);
          if (r.status == Tri::Yes) {
            r.trace = concat(std::move(r.trace), red.trace);
          }
          return r;
        }
        auto try_k = [&](long long k) -> PowerResult {
          auto d = decide(depth, u * p.pow(-k));
          if (d.status == Tri::Yes) {
            // u p^-k = V  =>  u = p^k (p^-k V p^k)
            return {Tri::Yes, k, conj_trace(d.trace, p.pow(-k))};
          }
          return {d.status, 0, {}};
        };
        if (_g.to_base) {
          Word pp = (*_g.to_base)(p);
          if (!pp.empty()) {
            auto k = power_of((*_g.to_base)(u), pp);
            if (!k) {
              return {Tri::No, 0, {}};
            }
            return try_k(*k);
          }
        }
        long long bound = static_cast<long long>(u.size()) + 1;
        for (long long m = 0; m <= bound; ++m) {
          for (long long k : {m, -m}) {
            auto r = try_k(k);
            if (r.status == Tri::Yes) {
              return r;
            }
            if (m == 0) {
              break;
            }
          }
        }
        return {Tri::Unknown, 0, {}};
      }

      Reduction reduce(std::size_t s, Word const& w) {
        auto const& st = _g.steps.at(s);
        switch (st.kind) {
          case Step::Kind::Free:
            return reduce_free(s, w);
          case Step::Kind::Abelian:
            return reduce_abelian(s, w);
          case Step::Kind::Amalgam:
            return reduce_amalgam(s, w);
          case Step::Kind::HNN:
            return reduce_hnn(s, w);
          default: {
            Rewriter rw = split(w, st.lo, _tr, false);
            return rw.finish(false);
          }
        }
      }

     private:
      GroupStructure const& _g;
      bool                  _tr;
      std::map<std::tuple<std::size_t, int, int, int, int>, std::pair<Word, int>>
          _swap_cache;

      Reduction reduce_free(std::size_t s, Word const& w) {
        auto const& st = _g.steps[s];
        Rewriter    rw = split(w, st.lo, _tr, false);
        bool        changed = true;
        while (changed) {
          changed = false;
          for (std::size_t i = 2; i + 2 < rw.lits.size(); i += 2) {
            auto d = decide(s, rw.lits[i]);
            if (d.status == Tri::Unknown) {
              return rw.finish(false);
            }
            if (d.status == Tri::Yes) {
              rw.replace(i, i + 1, {Word()}, {true}, d.trace);
              Word merged = rw.lits[i - 1] * rw.lits[i + 1];
              rw.replace(i - 1, i + 2, {merged}, {false}, {});
              rw.normalize();
              changed = true;
              break;
            }
          }
        }
        return rw.finish(true);
      }

      // ---- abelian steps

      Word tok_lit(Step const& st, Tok const& t) const {
        return t.key == 0 ? st.peg.pow(t.sign) : Word::gen(t.gen, t.sign);
      }

      std::vector<Tok> tokens_of(Step const& st, Word const& w) const {
        std::vector<Tok> out;
        for (Letter l : w) {
          int g   = gen_of(l);
          int key = -1;
          for (std::size_t j = 0; j < st.basis.size(); ++j) {
            if (st.basis[j] == g) {
              key = static_cast<int>(j) + 1;
            }
          }
          out.push_back({key, l > 0 ? 1 : -1, g});
        }
        return out;
      }

      Word lit_range(Step const& st, std::vector<Tok> const& t, std::size_t from) const {
        Word r;
        for (std::size_t k = from; k < t.size(); ++k) {
          r *= tok_lit(st, t[k]);
        }
        return r;
      }

      std::pair<Word, int> swap_identity(std::size_t s, Tok const& x, Tok const& y) {
        auto key = std::make_tuple(s, x.key, x.sign, y.key, y.sign);
        if (auto it = _swap_cache.find(key); it != _swap_cache.end()) {
          return it->second;
        }
        auto const& st = _g.steps[s];
        auto        it = st.comm_rel.find({std::min(x.key, y.key), std::max(x.key, y.key)});
        if (it == st.comm_rel.end()) {
          throw std::logic_error("abelian step without a commutation relator");
        }
        Word const& r  = _g.relators()[it->second];
        Word        X  = tok_lit(st, {x.key, 1, x.gen});
        Word        Y  = tok_lit(st, {y.key, 1, y.gen});
        Word        lhs = commutator(tok_lit(st, x), tok_lit(st, y));
        std::vector<Word> atoms{X, X.inverse(), Y, Y.inverse()};
        std::vector<Word> cands{Word()};
        for (auto const& a : atoms) {
          cands.push_back(a);
        }
        for (auto const& a : atoms) {
          for (auto const& b : atoms) {
            cands.push_back(a * b);
          }
        }
        for (auto const& g : cands) {
          for (int sg : {1, -1}) {
            if (conjugate(g, r.pow(sg)) == lhs) {
              return _swap_cache[key] = {g, sg};
            }
          }
        }
        throw std::logic_error("no commutation identity found");
      }

      struct Canon {
        long long              k0 = 0;
        Word                   beta;
        Trace                  q;  // old = peg^k0 beta Val(q)
      };

      Canon canonicalize(std::size_t s, std::vector<Tok> toks) {
        auto const& st = _g.steps[s];
        Canon       c;
        if (!_tr) {
          std::vector<long long> v(st.basis.size() + 1, 0);
          for (auto const& t : toks) {
            if (t.key == 0) {
              v[0] += t.sign;
            } else {
              auto const& gv = st.vec[t.gen - st.lo];
              for (std::size_t j = 0; j < v.size(); ++j) {
                v[j] += t.sign * gv[j];
              }
            }
          }
          c.k0 = v[0];
          for (std::size_t j = 0; j < st.basis.size(); ++j) {
            c.beta *= Word::gen(st.basis[j], v[j + 1]);
          }
          return c;
        }
        auto rewrite = [&](std::size_t i, std::size_t j, std::vector<Tok> const& nt,
                           Trace const& qq) {
          if (!qq.empty()) {
            c.q = concat(conj_trace(qq, lit_range(st, toks, j).inverse()), c.q);
          }
          toks.erase(toks.begin() + i, toks.begin() + j);
          toks.insert(toks.begin() + i, nt.begin(), nt.end());
        };
        for (std::size_t i = 0; i < toks.size(); ++i) {
          if (toks[i].key != -1) {
            continue;
          }
          Tok const   sym = toks[i];
          auto const& v   = st.vec[sym.gen - st.lo];
          std::vector<Tok> x;
          for (long long e = 0; e < std::abs(v[0]); ++e) {
            x.push_back({0, v[0] > 0 ? 1 : -1, -1});
          }
          for (std::size_t j = 0; j < st.basis.size(); ++j) {
            for (long long e = 0; e < std::abs(v[j + 1]); ++e) {
              x.push_back({static_cast<int>(j) + 1, v[j + 1] > 0 ? 1 : -1, st.basis[j]});
            }
          }
          Word X = lit_range(st, x, 0);
          int  r = st.def_rel[sym.gen - st.lo];
          if (sym.sign > 0) {
            rewrite(i, i + 1, x, Trace{{X.inverse(), r, 1}});
          } else {
            std::reverse(x.begin(), x.end());
            for (auto& t : x) {
              t.sign = -t.sign;
            }
            rewrite(i, i + 1, x, Trace{{Word(), r, -1}});
          }
          i = static_cast<std::size_t>(-1);
        }
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
            Tok x = toks[i], y = toks[i + 1];
            if (x.key == y.key && x.sign == -y.sign) {
              toks.erase(toks.begin() + i, toks.begin() + i + 2);
              changed = true;
              break;
            }
            if (x.key > y.key) {
              auto [g, sg] = swap_identity(s, x, y);
              Word yx      = tok_lit(st, y) * tok_lit(st, x);
              rewrite(i, i + 2, {y, x},
                      from_left(Trace{{g, st.comm_rel.at({y.key, x.key}), sg}}, yx));
              changed = true;
            }
          }
        }
        std::size_t i = 0;
        for (; i < toks.size() && toks[i].key == 0; ++i) {
          c.k0 += toks[i].sign;
        }
        c.beta = lit_range(st, toks, i);
        return c;
      }

      // replaces [i, j) by the canonical form of its tokens
      void place_canonical(Rewriter& rw, std::size_t s, std::size_t i, std::size_t j,
                           std::vector<Tok> const& toks) {
        auto const& st = _g.steps[s];
        Canon       c  = canonicalize(s, toks);
        Word        pk = st.peg.pow(c.k0);
        if (c.beta.empty()) {
          rw.replace(i, j, {pk}, {true}, c.q);
        } else {
          rw.replace(i, j, {pk, c.beta}, {true, false}, c.q);
        }
        rw.normalize();
      }

      Reduction reduce_abelian(std::size_t s, Word const& w) {
        auto const& st = _g.steps[s];
        Rewriter    rw = split(w, st.lo, _tr, false);
        for (std::size_t i = rw.lits.size(); i-- > 0;) {
          if (!rw.low[i]) {
            place_canonical(rw, s, i, i + 1, tokens_of(st, rw.lits[i]));
          }
        }
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t i = 2; i + 2 < rw.lits.size(); i += 2) {
            auto pr = power(s, rw.lits[i], st.peg);
            if (pr.status == Tri::Unknown) {
              return rw.finish(false);
            }
            if (pr.status == Tri::No) {
              continue;
            }
            rw.replace(i, i + 1, {st.peg.pow(pr.k)}, {true}, pr.trace);
            auto toks = tokens_of(st, rw.lits[i - 1]);
            for (long long e = 0; e < std::abs(pr.k); ++e) {
              toks.push_back({0, pr.k > 0 ? 1 : -1, -1});
            }
            for (auto const& t : tokens_of(st, rw.lits[i + 1])) {
              toks.push_back(t);
            }
            place_canonical(rw, s, i - 1, i + 2, toks);
            changed = true;
            break;
          }
        }
        return rw.finish(true);
      }

      // ---- amalgams

      void absorb_edge(Rewriter& rw, Step const& st, std::size_t i) {
        if (rw.lits[i].empty()) {
          return;
        }
        auto k = power_of(rw.lits[i], st.edge_new);
        if (!k) {
          return;
        }
        Word bk = st.edge_lower.pow(*k);
        rw.replace(i, i + 1, {bk}, {true},
                   from_left(power_shift(st.edge_lower, Word(), st.edge_rel, 1, *k), bk));
      }

      Reduction reduce_amalgam(std::size_t s, Word const& w) {
        auto const& st = _g.steps[s];
        Rewriter    rw = split(w, st.lo, _tr, false);
        for (std::size_t i = rw.lits.size(); i-- > 0;) {
          if (!rw.low[i]) {
            absorb_edge(rw, st, i);
          }
        }
        rw.normalize();
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t i = 2; i + 2 < rw.lits.size(); i += 2) {
            auto pr = power(s, rw.lits[i], st.edge_lower);
            if (pr.status == Tri::Unknown) {
              return rw.finish(false);
            }
            if (pr.status == Tri::No) {
              continue;
            }
            rw.replace(i, i + 1, {st.edge_lower.pow(pr.k)}, {true}, pr.trace);
            Word sk = st.edge_new.pow(pr.k);
            rw.replace(i, i + 1, {sk}, {false},
                       from_left(power_shift(st.edge_new, Word(), st.edge_rel, -1, pr.k), sk));
            Word merged = rw.lits[i - 1] * rw.lits[i] * rw.lits[i + 1];
            rw.replace(i - 1, i + 2, {merged}, {false}, {});
            absorb_edge(rw, st, i - 1);
            rw.normalize();
            changed = true;
            break;
          }
        }
        return rw.finish(true);
      }

      Reduction reduce_hnn(std::size_t s, Word const& w) {
        auto const& st = _g.steps[s];
        Rewriter    rw = split(w, st.lo, _tr, true);
        Word        t  = Word::gen(st.lo);
        bool        changed = true;
        while (changed) {
          changed = false;
          for (std::size_t i = 2; i + 2 < rw.lits.size(); i += 2) {
            Letter e1 = rw.lits[i - 1][0], e2 = rw.lits[i + 1][0];
            if (e1 != -e2) {
              continue;
            }
            bool        pos = e1 > 0;
            Word const& in  = pos ? st.hnn_a : st.hnn_b;
            Word const& out = pos ? st.hnn_b : st.hnn_a;
            auto        pr  = power(s, rw.lits[i], in);
            if (pr.status == Tri::Unknown) {
              return rw.finish(false);
            }
            if (pr.status == Tri::No) {
              continue;
            }
            rw.replace(i, i + 1, {in.pow(pr.k)}, {true}, pr.trace);
            Word ok = out.pow(pr.k);
            // t a t^-1 b^-1 = r ;  t^-1 b t a^-1 = t^-1 r^-1 t
            Trace sh = pos ? power_shift(st.hnn_b, Word(), st.edge_rel, 1, pr.k)
                           : power_shift(st.hnn_a, t.inverse(), st.edge_rel, -1, pr.k);
            rw.replace(i - 1, i + 2, {ok}, {true}, from_left(sh, ok));
            rw.normalize();
            changed = true;
            break;
          }
        }
        return rw.finish(true);
      }
    };

  }  // namespace

  Reduction reduce_at(GroupStructure const& g,
                      std::size_t           s,
                      Word const&           w,
                      bool                  with_trace) {
    if (s >= g.steps.size()) {
      throw std::out_of_range("reduce_at: no such step");
    }
    if (!w.uses_only_below(g.steps[s].hi)) {
      throw std::invalid_argument("reduce_at: word above the step");
    }
    Engine e(g, with_trace);
    return e.reduce(s, w);
  }

  Reduction amalgam_reduce(GroupStructure const& g, std::size_t s, Word const& w) {
    auto k = g.steps.at(s).kind;
    if (k == Step::Kind::HNN || k == Step::Kind::Opaque) {
      throw std::invalid_argument("amalgam_reduce: step is not an amalgam");
    }
    return reduce_at(g, s, w, g.proofs);
  }

  Reduction hnn_reduce(GroupStructure const& g, std::size_t s, Word const& w) {
    if (g.steps.at(s).kind != Step::Kind::HNN) {
      throw std::invalid_argument("hnn_reduce: step is not an HNN extension");
    }
    return reduce_at(g, s, w, g.proofs);
  }

  Decision decide_trivial(GroupStructure const& g,
                          std::size_t           depth,
                          Word const&           w,
                          bool                  with_trace) {
    Engine e(g, with_trace);
    return e.decide(depth, w);
  }

  Decision decide_trivial(GroupStructure const& g, Word const& w, bool with_trace) {
    if (!w.uses_only_below(static_cast<int>(g.rank()))) {
      throw std::out_of_range("word outside the group");
    }
    return decide_trivial(g, g.steps.size(), w, with_trace);
  }

  PowerResult power_in(GroupStructure const& g,
                       std::size_t           depth,
                       Word const&           u,
                       Word const&           p,
                       bool                  with_trace) {
    Engine e(g, with_trace);
    return e.power(depth, u, p);
  }

  bool replay(GroupStructure const& g, Word const& w, Trace const& t) {
    try {
      return trace_value(t, g.relators()) == w;
    } catch (std::out_of_range const&) {
      return false;
    }
  }

  std::optional<Trace> search_trivial(std::vector<Word> const& relators,
                                      Word const&              w,
                                      SearchOptions const&     opts) {
    struct Move {
      Word rot;
      Word conj;  // rot = conj r^s conj^-1
      int  r, s;
    };
    std::vector<Move> moves;
    for (std::size_t r = 0; r < relators.size(); ++r) {
      for (int s : {1, -1}) {
        Word rs = relators[r].pow(s);
        for (std::size_t k = 0; k < rs.size(); ++k) {
          Word pre = rs.subword(0, k);
          moves.push_back({pre.inverse() * rs * pre, pre.inverse(), static_cast<int>(r), s});
        }
      }
    }
    struct Node {
      Word  w;
      Trace t;
      int   depth;
    };
    auto cmp = [](Node const& a, Node const& b) {
      return std::tie(a.w, a.depth) > std::tie(b.w, b.depth);
    };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);
    std::set<Word>                                              seen;
    open.push({w, {}, 0});
    seen.insert(w);
    std::size_t expanded = 0;
    while (!open.empty() && expanded < opts.nodes) {
      Node n = open.top();
      open.pop();
      if (n.w.empty()) {
        return n.t;
      }
      ++expanded;
      if (n.depth >= opts.depth) {
        continue;
      }
      for (std::size_t i = 0; i <= n.w.size(); ++i) {
        Word L = n.w.subword(0, i), R = n.w.subword(i, n.w.size() - i);
        for (auto const& m : moves) {
          Word nw = L * m.rot * R;
          if (nw.size() > n.w.size() + 2 || !seen.insert(nw).second) {
            continue;
          }
          Trace t{{R.inverse() * m.conj, m.r, -m.s}};
          open.push({nw, concat(t, n.t), n.depth + 1});
        }
      }
    }
    return std::nullopt;
  }

  std::string to_string(Verdict const& v) {
    switch (v.kind) {
      case Verdict::Kind::Trivial:
        return "trivial";
      case Verdict::Kind::NonTrivial:
        return "nontrivial witness=" + v.witness;
      default:
        return "unknown";
    }
  }

  Verdict word_verdict(GroupStructure const&             g,
                       Word const&                       w,
                       std::vector<NamedMorphism> const& witnesses,
                       SearchOptions const&              opts) {
    Verdict v;
    auto    d = decide_trivial(g, w, g.proofs);
    if (d.status == Tri::Yes) {
      v.kind  = Verdict::Kind::Trivial;
      v.exact = true;
      if (g.proofs) {
        v.proof = d.trace;
      } else if (auto t = search_trivial(g.relators(), w, opts)) {
        v.proof = *t;
      }
      return v;
    }
    for (auto const& m : witnesses) {
      Word img = m.map(w);
      if (!img.empty()) {
        v.kind    = Verdict::Kind::NonTrivial;
        v.witness = m.id;
        v.image   = img;
        v.exact   = d.status == Tri::No;
        return v;
      }
    }
    if (d.status == Tri::No) {
      v.kind    = Verdict::Kind::NonTrivial;
      v.witness = "normal-form";
      v.exact   = true;
      return v;
    }
    if (auto t = search_trivial(g.relators(), w, opts)) {
      v.kind  = Verdict::Kind::Trivial;
      v.proof = *t;
      return v;
    }
    return v;
  }

  std::string to_string(MorphismCheck const& c) {
    switch (c.status) {
      case MorphismCheck::Status::Pass:
        return "pass";
      case MorphismCheck::Status::Fail:
        return "fail at relator " + std::to_string(c.failed);
      case MorphismCheck::Status::Sampled:
        return "sampled(" + std::to_string(c.samples) + ")";
      default:
        return "unknown";
    }
  }

  MorphismCheck check_morphism(Morphism const&                   m,
                               Presentation const&               src,
                               GroupStructure const&             target,
                               std::vector<NamedMorphism> const& witnesses) {
    MorphismCheck out;
    if (m.source_rank() != src.rank()) {
      out.status = MorphismCheck::Status::Fail;
      return out;
    }
    bool sampled = false;
    for (std::size_t i = 0; i < src.relators.size(); ++i) {
      Word img = m(src.relators[i]);
      auto d   = decide_trivial(target, img, false);
      if (d.status == Tri::Yes) {
        continue;
      }
      if (d.status == Tri::No) {
        out.status = MorphismCheck::Status::Fail;
        out.failed = static_cast<int>(i);
        return out;
      }
      for (auto const& wm : witnesses) {
        if (!wm.map(img).empty()) {
          out.status = MorphismCheck::Status::Fail;
          out.failed = static_cast<int>(i);
          return out;
        }
      }
      if (witnesses.empty()) {
        out.status = MorphismCheck::Status::Unknown;
        out.failed = static_cast<int>(i);
        return out;
      }
      sampled = true;
    }
    out.status  = sampled ? MorphismCheck::Status::Sampled : MorphismCheck::Status::Pass;
    out.samples = sampled ? witnesses.size() : 0;
    return out;
  }

  bool peg_carrier_conjugacy(Word const& p1, Word const& p2) {
    if (p1.empty() || p2.empty()) {
      throw std::invalid_argument("identity peg");
    }
    Word r1 = primitive_root(cyclic_decompose(p1).core).first;
    Word r2 = primitive_root(cyclic_decompose(p2).core).first;
    return is_conjugate_cyclic(r1, r2).has_value()
           || is_conjugate_cyclic(r1, r2.inverse()).has_value();
  }

}  // namespace bsw
