#ifndef BSW_NORMAL_HPP_
#define BSW_NORMAL_HPP_

#include "bsw/presentation.hpp"
#include "bsw/structure.hpp"
#include "bsw/word.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bsw {

  enum class Tri { No, Yes, Unknown };

  // Result of reducing a word at one step.  The word equals the product of
  // the syllable literals times the value of the trace.
  struct Reduction {
    bool              exact = true;
    std::vector<Word> syllables;
    std::vector<bool> lower;  // syllable lies in the lower level
    Trace             trace;
    std::size_t       new_syllables() const;
  };

  // Reduced form at step s of a word over the generators below steps[s].hi.
  // Amalgam pinches for Free, Abelian and Amalgam steps; Britton pinches for
  // HNN steps.
  Reduction amalgam_reduce(GroupStructure const& g, std::size_t s, Word const& w);
  Reduction hnn_reduce(GroupStructure const& g, std::size_t s, Word const& w);
  Reduction reduce_at(GroupStructure const& g,
                      std::size_t           s,
                      Word const&           w,
                      bool                  with_trace);

  struct Decision {
    Tri   status = Tri::Unknown;
    Trace trace;  // on Yes (with proofs): w = Val(trace)
  };
  // Exact unless an opaque step is involved.
  Decision decide_trivial(GroupStructure const& g, Word const& w, bool with_trace);
  Decision decide_trivial(GroupStructure const& g,
                          std::size_t           depth,
                          Word const&           w,
                          bool                  with_trace);

  struct PowerResult {
    Tri       status = Tri::Unknown;
    long long k      = 0;
    Trace     trace;  // u = p^k Val(trace)
  };
  // Whether u is a power of p in the level spanned by the first depth steps.
  PowerResult power_in(GroupStructure const& g,
                       std::size_t           depth,
                       Word const&           u,
                       Word const&           p,
                       bool                  with_trace);

  bool replay(GroupStructure const& g, Word const& w, Trace const& t);

  // Relator-rewriting search for a proof of triviality.
  struct SearchOptions {
    int         depth = 8;
    std::size_t nodes = 20000;
  };
  std::optional<Trace> search_trivial(std::vector<Word> const& relators,
                                      Word const&              w,
                                      SearchOptions const&     opts = {});

  struct NamedMorphism {
    std::string id;
    Morphism    map;  // into the base free group
  };

  struct Verdict {
    enum class Kind { Trivial, NonTrivial, Unknown };
    Kind                 kind = Kind::Unknown;
    std::optional<Trace> proof;    // Trivial
    std::string          witness;  // NonTrivial: morphism id or "normal-form"
    Word                 image;    // NonTrivial: image under the witness
    bool                 exact = false;
  };
  std::string to_string(Verdict const& v);

  Verdict word_verdict(GroupStructure const&             g,
                       Word const&                       w,
                       std::vector<NamedMorphism> const& witnesses,
                       SearchOptions const&              opts = {});

  struct MorphismCheck {
    enum class Status { Pass, Fail, Sampled, Unknown };
    Status      status   = Status::Unknown;
    int         failed   = -1;  // relator index
    std::size_t samples  = 0;
    bool        ok() const {
      return status == Status::Pass || status == Status::Sampled;
    }
  };
  std::string to_string(MorphismCheck const& c);

  // Every relator of src is sent to the identity of the target.
  MorphismCheck check_morphism(Morphism const&                   m,
                               Presentation const&               src,
                               GroupStructure const&             target,
                               std::vector<NamedMorphism> const& witnesses = {});

  // Both pegs in the base: same maximal cyclic subgroup up to conjugacy.
  bool peg_carrier_conjugacy(Word const& p1, Word const& p2);

}  // namespace bsw

#endif  // BSW_NORMAL_HPP_
