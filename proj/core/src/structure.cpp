#include "bsw/structure.hpp"

#include <stdexcept>

namespace bsw {

  Word trace_value(Trace const& t, std::vector<Word> const& relators) {
    Word v;
    for (auto const& term : t) {
      if (term.relator < 0 || static_cast<std::size_t>(term.relator) >= relators.size()) {
        throw std::out_of_range("trace refers to a missing relator");
      }
      v *= conjugate(term.conj, relators[term.relator].pow(term.sign));
    }
    return v;
  }

  Trace conj_trace(Trace t, Word const& g) {
    for (auto& term : t) {
      term.conj = g * term.conj;
    }
    return t;
  }

  Trace inverse_trace(Trace const& t) {
    Trace out(t.rbegin(), t.rend());
    for (auto& term : out) {
      term.sign = -term.sign;
    }
    return out;
  }

  Trace concat(Trace a, Trace const& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  std::size_t GroupStructure::level_rank(std::size_t i) const {
    if (i == 0) {
      return base_rank;
    }
    return static_cast<std::size_t>(steps.at(i - 1).hi);
  }

  std::size_t GroupStructure::steps_below(std::size_t nrank) const {
    std::size_t k = 0;
    while (k < steps.size() && static_cast<std::size_t>(steps[k].hi) <= nrank) {
      ++k;
    }
    return k;
  }

  bool GroupStructure::exact() const {
    for (auto const& s : steps) {
      if (s.kind == Step::Kind::Opaque) {
        return false;
      }
    }
    return true;
  }

  void validate_structure(GroupStructure const& g) {
    int         at  = static_cast<int>(g.base_rank);
    std::size_t rel = 0;
    for (std::size_t i = 0; i < g.steps.size(); ++i) {
      auto const& s = g.steps[i];
      auto        where = "step " + std::to_string(i) + ": ";
      if (s.lo != at || s.hi < s.lo || s.rel_lo != rel || s.rel_hi < s.rel_lo) {
        throw std::invalid_argument(where + "generator or relator blocks out of order");
      }
      for (std::size_t r = s.rel_lo; r < s.rel_hi; ++r) {
        if (!g.relators().at(r).uses_only_below(s.hi)) {
          throw std::invalid_argument(where + "relator uses later generators");
        }
      }
      switch (s.kind) {
        case Step::Kind::Abelian:
          if (s.peg.empty() || !s.peg.uses_only_below(s.lo)) {
            throw std::invalid_argument(where + "peg must be a non-trivial lower word");
          }
          break;
        case Step::Kind::Amalgam:
          if (s.edge_new.empty() || s.edge_lower.empty()
              || !s.edge_lower.uses_only_below(s.lo)) {
            throw std::invalid_argument(where + "bad amalgam edge words");
          }
          for (Letter l : s.edge_new) {
            if (gen_of(l) < s.lo || gen_of(l) >= s.hi) {
              throw std::invalid_argument(where + "edge word leaves the new factor");
            }
          }
          break;
        case Step::Kind::HNN:
          if (s.hi != s.lo + 1 || !s.hnn_a.uses_only_below(s.lo)
              || !s.hnn_b.uses_only_below(s.lo) || s.hnn_a.empty()
              || s.hnn_b.empty()) {
            throw std::invalid_argument(where + "bad HNN data");
          }
          break;
        default:
          break;
      }
      at  = s.hi;
      rel = s.rel_hi;
    }
    if (static_cast<std::size_t>(at) != g.rank() || rel != g.relators().size()) {
      throw std::invalid_argument("structure does not cover the presentation");
    }
  }

  GroupStructure prefix(GroupStructure const& g, std::size_t nsteps) {
    if (nsteps > g.steps.size()) {
      throw std::out_of_range("prefix beyond the last step");
    }
    GroupStructure out;
    out.base_rank = g.base_rank;
    out.proofs    = g.proofs;
    out.steps.assign(g.steps.begin(), g.steps.begin() + static_cast<long>(nsteps));
    std::size_t rank = g.level_rank(nsteps);
    std::size_t rels = nsteps == 0 ? 0 : g.steps[nsteps - 1].rel_hi;
    std::vector<std::string> names(g.presentation.generators.names().begin(),
                                   g.presentation.generators.names().begin()
                                       + static_cast<long>(rank));
    out.presentation.generators = Basis(names);
    out.presentation.relators.assign(g.relators().begin(),
                                     g.relators().begin() + static_cast<long>(rels));
    if (g.to_base) {
      std::vector<Word> imgs(g.to_base->images().begin(),
                             g.to_base->images().begin() + static_cast<long>(rank));
      out.to_base = Morphism(g.to_base->target_rank(), imgs);
    }
    return out;
  }

  StructureBuilder::StructureBuilder(Basis base) {
    _g.base_rank              = base.rank();
    _g.presentation.generators = std::move(base);
  }

  namespace {
    Step open_step(GroupStructure& g,
                   Step::Kind      kind,
                   std::vector<std::string> const& names) {
      Step s;
      s.kind   = kind;
      s.lo     = static_cast<int>(g.rank());
      s.rel_lo = g.relators().size();
      for (auto const& n : names) {
        g.presentation.generators.add(n);
      }
      s.hi = static_cast<int>(g.rank());
      return s;
    }
    void close_step(GroupStructure& g, Step s) {
      s.rel_hi = g.relators().size();
      g.steps.push_back(std::move(s));
    }
  }  // namespace

  void StructureBuilder::add_free(std::vector<std::string> const& names) {
    if (names.empty()) {
      throw std::invalid_argument("free factor of rank 0");
    }
    close_step(_g, open_step(_g, Step::Kind::Free, names));
  }

  void StructureBuilder::add_abelian(
      Word const&                                peg,
      std::vector<std::string> const&            names,
      std::vector<int> const&                    basis_slots,
      std::vector<std::vector<long long>> const& vectors) {
    if (peg.empty()) {
      throw std::invalid_argument("abelian flat with trivial peg");
    }
    if (names.empty() || vectors.size() != names.size()) {
      throw std::invalid_argument("abelian flat: one vector per generator");
    }
    std::size_t d = basis_slots.size() + 1;
    for (std::size_t j = 0; j < basis_slots.size(); ++j) {
      auto const& v = vectors.at(basis_slots[j]);
      for (std::size_t c = 0; c < d; ++c) {
        if (v.size() != d || v[c] != (c == j + 1 ? 1 : 0)) {
          throw std::invalid_argument("abelian flat: basis generator without unit vector");
        }
      }
    }
    Step s    = open_step(_g, Step::Kind::Abelian, names);
    s.peg     = peg;
    s.vec     = vectors;
    s.def_rel.assign(names.size(), -1);
    for (int b : basis_slots) {
      s.basis.push_back(s.lo + b);
    }
    auto& rels = _g.presentation.relators;
    auto  gen  = [&](std::size_t i) {
      return Word::gen(s.lo + static_cast<int>(i));
    };
    auto slot_of = [&](std::size_t i) -> int {
      for (std::size_t j = 0; j < basis_slots.size(); ++j) {
        if (basis_slots[j] == static_cast<int>(i)) {
          return static_cast<int>(j) + 1;
        }
      }
      return -1;
    };
    for (std::size_t i = 0; i < names.size(); ++i) {
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        int a = slot_of(i), b = slot_of(j);
        if (a > 0 && b > 0) {
          s.comm_rel[{std::min(a, b), std::max(a, b)}] = static_cast<int>(rels.size());
        }
        rels.push_back(commutator(gen(i), gen(j)));
      }
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (int a = slot_of(i); a > 0) {
        s.comm_rel[{0, a}] = static_cast<int>(rels.size());
      }
      rels.push_back(commutator(gen(i), peg));
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (slot_of(i) > 0) {
        continue;
      }
      auto const& v = vectors[i];
      if (v.size() != d) {
        throw std::invalid_argument("abelian flat: vector of wrong length");
      }
      Word x = peg.pow(v[0]);
      for (std::size_t j = 0; j < basis_slots.size(); ++j) {
        x *= Word::gen(s.lo + basis_slots[j], v[j + 1]);
      }
      s.def_rel[i] = static_cast<int>(rels.size());
      rels.push_back(gen(i) * x.inverse());
    }
    close_step(_g, std::move(s));
  }

  void StructureBuilder::add_amalgam(std::vector<std::string> const& names,
                                     Word const&                     edge_new,
                                     Word const&                     edge_lower) {
    Step s       = open_step(_g, Step::Kind::Amalgam, names);
    s.edge_new   = edge_new;
    s.edge_lower = edge_lower;
    s.edge_rel   = static_cast<int>(_g.relators().size());
    _g.presentation.relators.push_back(edge_new * edge_lower.inverse());
    close_step(_g, std::move(s));
  }

  void StructureBuilder::add_hnn(std::string const& name,
                                 Word const&        a,
                                 Word const&        b) {
    Step s     = open_step(_g, Step::Kind::HNN, {name});
    s.hnn_a    = a;
    s.hnn_b    = b;
    s.edge_rel = static_cast<int>(_g.relators().size());
    Word t     = Word::gen(s.lo);
    _g.presentation.relators.push_back(conjugate(t, a) * b.inverse());
    close_step(_g, std::move(s));
  }

  void StructureBuilder::add_opaque(std::vector<std::string> const& names,
                                    std::vector<Word> const&        relators) {
    Step s = open_step(_g, Step::Kind::Opaque, names);
    for (auto const& r : relators) {
      _g.presentation.relators.push_back(r);
    }
    close_step(_g, std::move(s));
  }

  void StructureBuilder::add_custom(Step const&                     shape,
                                    std::vector<std::string> const& names,
                                    std::vector<Word> const&        relators) {
    Step s      = shape;
    Step opened = open_step(_g, shape.kind, names);
    s.lo        = opened.lo;
    s.hi        = opened.hi;
    s.rel_lo    = opened.rel_lo;
    for (auto const& r : relators) {
      _g.presentation.relators.push_back(r);
    }
    _g.proofs = false;
    close_step(_g, std::move(s));
  }

}  // namespace bsw
