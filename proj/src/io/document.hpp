#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "kls/ehrhart.hpp"
#include "kls/equivariant.hpp"
#include "kls/geometry.hpp"
#include "kls/subdivision.hpp"

namespace kls::io {

using nlohmann::json;

/// Malformed documents and options; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Schema { Poset, Sfs, Triple, Fan, Complex, Group };
const char* schema_name(Schema s);

struct Document {
  Schema schema = Schema::Poset;
  std::string name;
  json body;
};
Document parse_document(const std::string& text, const std::string& name);
Document load_document(const std::string& path);

Rational read_rational(const json& j);
Poly read_poly(const json& j);
Vector read_vector(const json& j);
Matrix read_matrix(const json& j);

/// Explicit elements/covers or a named builder.
Poset read_poset(const json& j);
/// Element by label, or by index when given as a number.
int resolve(const Poset& p, const json& ref);
std::string element_name(const Poset& p, int z);

/// Permutation generators: index arrays, or objects mapping labels to labels (identity elsewhere).
GroupPtr read_perm_group(const json& j, const Poset& p);

/// Eulerian kernel on r, with the document's "kernel" overrides applied when use_file is set.
IncidenceElement read_kernel(const json& doc, WeakRankPtr r, bool use_file);

StrongFormalSubdivision read_sfs(const json& j);

/// Everything the subcommands need from a triple document.
struct TripleData {
  std::optional<SubdivisionTriple> triple;
  WeakRankPtr rank;
  std::optional<IncidenceElement> kernel;       // non-equivariant documents
  std::optional<EquivElement> equiv_kernel;     // documents with a group or with geometry
  std::optional<PolytopeConeTriple> polytope;   // geometric documents
};
TripleData read_triple(const Document& d, bool use_file_kernel, const std::optional<json>& group_override);

struct FanData {
  LatticeFan fan;
  GroupPtr group;
  EquivElement kernel;
};
FanData read_fan(const Document& d);

LatticeComplex read_complex(const Document& d);

}  // namespace kls::io
