#ifndef BSW_STRUCTURE_HPP_
#define BSW_STRUCTURE_HPP_

#include "bsw/presentation.hpp"
#include "bsw/word.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace bsw {

  // One factor g r^s g^-1 of a relator consequence.
  struct TraceTerm {
    Word conj;
    int  relator = 0;
    int  sign    = 1;
    friend bool operator==(TraceTerm const&, TraceTerm const&) = default;
  };
  using Trace = std::vector<TraceTerm>;

  Word  trace_value(Trace const& t, std::vector<Word> const& relators);
  Trace conj_trace(Trace t, Word const& g);  // value becomes g V g^-1
  Trace inverse_trace(Trace const& t);
  Trace concat(Trace a, Trace const& b);

  // A group built from a free base by successive extensions.  Each step adds
  // the generators [lo, hi) and the relators [rel_lo, rel_hi).
  struct Step {
    enum class Kind { Free, Abelian, Amalgam, HNN, Opaque };
    Kind        kind = Kind::Opaque;
    int         lo = 0, hi = 0;
    std::size_t rel_lo = 0, rel_hi = 0;

    // Abelian: B is free abelian with coordinates (peg, basis[0], ...).  Each
    // step generator has a coordinate vector; a non-basis generator g has the
    // relator g * X^-1 with X = peg^v0 basis[0]^v1 ...
    Word                                peg;
    std::vector<int>                    basis;
    std::vector<std::vector<long long>> vec;      // indexed by g - lo
    std::vector<int>                    def_rel;  // -1 for basis generators
    // relator index of the commutator of two coordinates (0 = peg)
    std::map<std::pair<int, int>, int> comm_rel;

    // Amalgam: relator edge_rel = edge_new * edge_lower^-1 with edge_new a
    // word in the step generators, which generate a free group.
    Word edge_new;
    Word edge_lower;
    int  edge_rel = -1;

    // HNN: relator edge_rel = t a t^-1 b^-1 with stable letter t = lo.
    Word hnn_a;
    Word hnn_b;
  };

  struct GroupStructure {
    Presentation      presentation;
    std::size_t       base_rank = 0;
    std::vector<Step> steps;
    // Relators include every relation the rewriting proofs use.  When false
    // only decisions are produced.
    bool proofs = true;
    // Optional homomorphism onto the base, used to locate exponents.
    std::optional<Morphism> to_base;

    std::size_t rank() const noexcept {
      return presentation.rank();
    }
    std::vector<Word> const& relators() const noexcept {
      return presentation.relators;
    }
    // Number of generators of level i (i = 0 is the base).
    std::size_t level_rank(std::size_t i) const;
    // Steps fully contained in the first n generators.
    std::size_t steps_below(std::size_t nrank) const;
    bool        exact() const;  // no opaque steps
  };

  // Checks the step layout against the presentation; throws
  // std::invalid_argument with a description otherwise.
  void validate_structure(GroupStructure const& g);

  // The first nsteps steps, with to_base restricted accordingly.
  GroupStructure prefix(GroupStructure const& g, std::size_t nsteps);

  // Builders used by towers and graphs of groups.  Each appends generators
  // named by the caller and the relators of the step.
  class StructureBuilder {
   public:
    explicit StructureBuilder(Basis base);
    GroupStructure const& structure() const noexcept {
      return _g;
    }
    GroupStructure take() {
      return std::move(_g);
    }
    std::size_t rank() const noexcept {
      return _g.rank();
    }
    Basis const& names() const noexcept {
      return _g.presentation.generators;
    }

    void add_free(std::vector<std::string> const& names);
    // Abelian vertex on the peg.  basis_vectors gives, for every new
    // generator, its coordinates over (peg, basis generators); generators
    // whose vector is a unit vector e_{j+1} at their own slot are basis.
    // Relators: commutators of new generators in lexicographic pairs, then
    // [g, peg], then the defining relators of non-basis generators.
    void add_abelian(Word const&                                peg,
                     std::vector<std::string> const&            names,
                     std::vector<int> const&                    basis_slots,
                     std::vector<std::vector<long long>> const& vectors);
    // Free group on the names glued along edge_new = edge_lower.
    void add_amalgam(std::vector<std::string> const& names,
                     Word const&                     edge_new,
                     Word const&                     edge_lower);
    // t a t^-1 = b.
    void add_hnn(std::string const& name, Word const& a, Word const& b);
    void add_opaque(std::vector<std::string> const& names,
                    std::vector<Word> const&        relators);
    // Step data given directly with its own relators; turns proofs off.
    void add_custom(Step const&                     shape,
                    std::vector<std::string> const& names,
                    std::vector<Word> const&        relators);

   private:
    GroupStructure _g;
  };

}  // namespace bsw

#endif  // BSW_STRUCTURE_HPP_
