#ifndef BSW_CONSTRUCT_HPP_
#define BSW_CONSTRUCT_HPP_

#include "bsw/dioph.hpp"
#include "bsw/gog.hpp"
#include "bsw/normal.hpp"
#include "bsw/tower.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bsw {

  // Generator renaming applied to the names of new copies.
  using NameMap = std::map<std::string, std::string>;

  // Copy names: name' then the optional renaming.
  std::string twin_name(std::string const& name, NameMap const& rename);

  struct FloorDouble {
    Tower       tower;  // the whole tower with the floor doubled
    std::size_t level = 0;
    NameMap     pairs;  // z_i -> its partner
    // G^level -> G^level_Db: inclusion, and the identity below the floor
    // with every flat generator sent to its partner.
    Morphism f1;
    Morphism f2;
  };
  // Every flat of the floor must be abelian without closure data.  Throws
  // TowerError when a check of the result fails.
  FloorDouble floor_double(Tower const& t, std::size_t level, NameMap const& rename = {});

  enum class TwinCase { NonAbelian, Abelian };
  std::string to_string(TwinCase c);

  struct TwinTower {
    Tower          result;
    TwinCase       kind = TwinCase::NonAbelian;
    NameMap        twin_map;  // flat id <-> twin flat id
    Morphism       swap;      // involution exchanging the two copies
    std::size_t    original_rank = 0;  // generators of the input, after doubling
    ValidityReport report;
    // Original flats first, or twin flats first.
    std::vector<std::size_t> ordering;
    std::vector<std::size_t> twin_ordering;
  };
  // The first floor decides the case: only abelian flats, or no abelian
  // flat.  Throws TowerError when a validity check of the result fails.
  TwinTower twin_tower(Tower const& t, NameMap const& rename = {});

  struct ClosureSpec {
    ClosureEmbedding         f;
    std::vector<std::string> names;        // defaults a_j
    IntVec                   retract_exp;  // defaults to all ones
  };
  // Abelian flats named in the map get their closure embeddings.  Throws
  // TowerError for infinite index or a closed flat.
  Tower tower_closure(Tower const& t, std::map<std::string, ClosureSpec> const& emb);
  // G -> cl(G) sending each generator to the one of the same name.
  Morphism closure_inclusion(Tower const& t, Tower const& closure);

  struct Extension {
    bool                  extends = false;
    std::optional<IntVec> y;  // witness exponents for a_1..a_m
    Coset                 coset;
  };
  // Whether z_i -> peg^p_i extends over the closure embedding.
  Extension extension_test(ClosureEmbedding const& f, IntVec const& p);

  struct SymmetricPair {
    std::string      flat;
    std::string      twin;
    ClosureEmbedding f;
    ClosureEmbedding fhat;
    Coset            coset;
    Coset            coset_hat;
  };
  // Embeddings induced by p + (U n U^) and p^ + (U n U^).
  SymmetricPair symmetrize(ClosureEmbedding const& f, ClosureEmbedding const& fhat);

  struct SymmetricClosure {
    Tower                      tower;
    std::vector<SymmetricPair> pairs;
  };
  // Each embedding on a flat with a twin must come with one on the twin.
  SymmetricClosure symmetric_closure(TwinTower const& tt,
                                     std::map<std::string, ClosureSpec> const& emb);

  struct Filtration {
    int              root = 0;  // rigid vertex
    std::vector<int> edges;     // each adds one edge
  };
  // Root: least rigid vertex; edges in breadth first order.
  Filtration default_filtration(Gad const& gad);

  struct CompletionStep {
    int         edge = 0;
    std::string kind;  // 1A 1B 2A 2B 3A 3B
    std::string detail;
  };

  struct CompletionResult {
    Tower                   comp;
    FundamentalPresentation fp;  // tree: the edges that add a vertex
    Morphism                embedding;
    Filtration              filtration;
    std::vector<CompletionStep> steps;
    std::map<int, Word>     gamma;  // conjugator per vertex, in comp
    MorphismCheck           check;
    ValidityReport          report;
  };
  // eta sends every generator of the fundamental presentation, by name, to
  // a word over L.  Edge groups must be cyclic.  Surface vertices must be
  // given as x_1..x_2g, s_2..s_n with boundary words
  // [x_1,x_2]...[x_2g-1,x_2g] (s_2...s_n)^-1 and s_2, ..., s_n.  Throws
  // std::invalid_argument on malformed input or a strictness violation.
  CompletionResult completion(Gad const&                          gad,
                              std::map<std::string, Word> const& eta,
                              Basis const&                        L,
                              std::optional<Filtration>           filtration = {});

  // Standard boundary words of a surface vertex as described above.
  std::vector<Word> standard_boundary(std::size_t genus, std::size_t boundaries);

}  // namespace bsw

#endif  // BSW_CONSTRUCT_HPP_
