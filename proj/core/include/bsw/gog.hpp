#ifndef BSW_GOG_HPP_
#define BSW_GOG_HPP_

#include "bsw/dioph.hpp"
#include "bsw/normal.hpp"
#include "bsw/presentation.hpp"
#include "bsw/structure.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bsw {

  // Edges are stored once per involution orbit.  The orbit id e is the edge
  // from -> to; its inverse runs to -> from.
  struct GogEdge {
    int               id   = 0;
    int               from = 0;
    int               to   = 0;
    std::size_t       rank = 1;  // edge group Z^rank
    std::vector<Word> from_image;  // generators of the edge group in G_from
    std::vector<Word> to_image;    // and in G_to
  };

  struct GogVertex {
    int          id = 0;
    Presentation group;
  };

  class GraphOfGroups {
   public:
    GraphOfGroups() = default;
    // Throws std::invalid_argument unless the graph is connected, ids are
    // unique and edge images are words over the endpoint groups.
    GraphOfGroups(std::vector<GogVertex> vertices, std::vector<GogEdge> edges);

    std::vector<GogVertex> const& vertices() const noexcept {
      return _v;
    }
    std::vector<GogEdge> const& edges() const noexcept {
      return _e;
    }
    GogVertex const& vertex(int id) const;
    GogEdge const&   edge(int id) const;
    std::size_t      vertex_index(int id) const;

   private:
    std::vector<GogVertex> _v;
    std::vector<GogEdge>   _e;
  };

  // Edge orbits of a spanning tree: breadth first from the least vertex id,
  // neighbours by increasing edge id.
  std::set<int> maximal_subtree(GraphOfGroups const& g);
  bool          is_spanning_tree(GraphOfGroups const& g, std::set<int> const& tree);

  struct FundamentalPresentation {
    Presentation               presentation;
    std::map<int, int>         vertex_offset;  // first generator of each vertex
    std::map<int, int>         stable_letter;  // non-tree edge -> generator
    std::set<int>              tree;
  };
  // Vertex generators in vertex order, then t_<id> per non-tree edge.
  // Relators: vertex relators, then per edge and edge generator
  // f_e(c) * t_e * f_ebar(c)^-1 * t_e^-1 (t_e = 1 on the tree).
  FundamentalPresentation fundamental_presentation(GraphOfGroups const& g,
                                                   std::set<int> const& tree);

  // Isomorphism between the presentations for two spanning trees, with the
  // vertex groups conjugated by tree paths.
  struct SubtreeChange {
    Morphism forward;   // pi(T1) -> pi(T2)
    Morphism backward;  // pi(T2) -> pi(T1)
  };
  SubtreeChange change_subtree(GraphOfGroups const& g,
                               std::set<int> const& t1,
                               std::set<int> const& t2);

  enum class VertexType { Surface, Abelian, Rigid };
  std::string to_string(VertexType t);

  struct SurfaceData {
    std::size_t       genus = 0;
    std::vector<Word> boundary;  // words in the vertex group
  };

  struct Gad {
    GraphOfGroups                  gog;
    std::map<int, VertexType>      type;
    std::map<int, SurfaceData>     surface;
  };
  // Structural checks of the decomposition; throws std::invalid_argument.
  void validate_gad(Gad const& gad);

  bool is_free_abelian_presentation(Presentation const& p);
  // Exponent-sum vector of a word in a free abelian vertex group.
  IntVec exponent_vector(Word const& w, std::size_t rank);

  struct Peripheral {
    Lattice P;
    Lattice closure;  // saturation of P
  };
  Peripheral peripheral_subgroup(Gad const& gad, int vertex);

  struct Automorphism {
    std::string id;
    Morphism    map;  // on the fundamental presentation generators
  };

  // Dehn twist of a graph of groups along edge e.  For a tree edge the
  // vertex groups and stable letters on the side of `twisted` are conjugated
  // by g; for a non-tree edge t_e -> t_e g.  g must lie in the edge group
  // image: it is given by its exponent vector over the edge generators.
  Automorphism dehn_twist(GraphOfGroups const&          g,
                          FundamentalPresentation const& fp,
                          int                            edge,
                          IntVec const&                  power,
                          int                            twisted_vertex);
  // Variant for an arbitrary word g, accepted when it commutes with the edge
  // image inside one free or free abelian vertex group.
  Automorphism dehn_twist(GraphOfGroups const&          g,
                          FundamentalPresentation const& fp,
                          int                            edge,
                          Word const&                    twist,
                          int                            twisted_vertex);

  // Generators of the modular group relative to a subgroup lying in
  // base_vertex: inner automorphisms, unimodular automorphisms of abelian
  // vertex groups fixing the closed peripheral subgroup, Dehn twists along
  // edge generators keeping base_vertex fixed, and twists along the declared
  // curves of surface vertices.
  std::vector<Automorphism> modular_generators(Gad const& gad, int base_vertex);

  // Decision procedure for a graph of groups whose first vertex group is
  // free and whose other vertices are free or free abelian, with cyclic edge
  // groups: one amalgam or abelian step per tree edge and one HNN step per
  // extra edge.  Words of the fundamental presentation are decided through
  // to_structure.
  struct GogDecider {
    GroupStructure structure;
    Morphism       to_structure;
    Tri            decide(Word const& w) const;
  };
  std::optional<GogDecider> gog_decider(GraphOfGroups const&           g,
                                        FundamentalPresentation const& fp);

  // Every relator sent to the identity: decided when a decider is given,
  // otherwise proved by bounded relator search or left Unknown.
  MorphismCheck check_automorphism(Morphism const&      m,
                                   Presentation const&  p,
                                   GogDecider const*    exact = nullptr,
                                   SearchOptions const& opts  = {});

  IntMatrix inverse_unimodular(IntMatrix const& m);

}  // namespace bsw

#endif  // BSW_GOG_HPP_
