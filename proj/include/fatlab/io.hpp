#pragma once

// JSON reading and writing for every structure the CLI accepts.
//
// Rationals are written as strings "p/q" (or "p"); plain JSON integers are
// accepted on input. Matrices are arrays of rows. Parse errors carry the JSON
// path of the offending value.

#include <optional>
#include <string>

#include "json.hpp"

#include "fatlab/corext.hpp"
#include "fatlab/fat.hpp"
#include "fatlab/infinitesimal.hpp"
#include "fatlab/ruth.hpp"

namespace fatlab {

using Json = nlohmann::json;

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& where);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where);

// {"objects", "arrows":[{"id","src","tgt"}], "units":{obj:arrow},
//  "inverse":{arrow:arrow}, "compose":[[g,h,gh],...]}
Json groupoid_to_json(const FiniteGroupoid& G);
FiniteGroupoid groupoid_from_json(const Json& j, const std::string& where = "groupoid");

// {"C":{obj:dim}, "V":{obj:dim}, "partial":{obj:matrix}}
Json complex_to_json(const FiniteGroupoid& G, const TwoTermComplex& cx);
TwoTermComplex complex_from_json(const Json& j, const FiniteGroupoid& G, const std::string& where = "complex");

// {"kind":"ruth", "groupoid", "complex", "R1C":{arrow:matrix}, "R1V":{arrow:matrix},
//  "R2":{"g|h":matrix}, "unital":bool}. Missing R2 entries are zero.
Json ruth_to_json(const Ruth& R);
Ruth ruth_from_json(const Json& j, const std::string& where = "ruth");

// Cochains keyed by nerve tuples "g1|g2|..."; degree 0 values are keyed by object.
Json cochain_to_json(const Ruth& R, const RuthCochain& f);
RuthCochain cochain_from_json(const Ruth& R, const Json& j, const std::string& where = "cochain");

struct MorphismDoc {
  Ruth source, target;
  FatMorphism m;
};
// {"kind":"morphism", "source":ruth, "target":ruth, "PhiC":{obj:matrix},
//  "PhiV":{obj:matrix}, "mu":{arrow:matrix}}
Json morphism_to_json(const MorphismDoc& d);
MorphismDoc morphism_from_json(const Json& j, const std::string& where = "morphism");

// {"kind":"core-extension", "F", "down", "right" (groupoids on one object set),
//  "toRight":{f:r}, "toDown":{f:d}, "section":{r:f} (optional),
//  "action":{d:{h:h'}}, "H":{obj:[arrows]} (optional, compared with ker pi)}
struct CoreDoc {
  FiniteCoreExtension E;
  std::optional<std::vector<std::vector<int>>> H;  // per object, when listed
};
Json core_to_json(const FiniteCoreExtension& E);
CoreDoc core_from_json(const Json& j, const std::string& where = "core-extension");

// {"dim":n, "c":[[i,j,k,"p/q"],...]}: [e_i, e_j] has coefficient p/q on e_k.
Json lie_to_json(const LieAlgebra& L);
LieAlgebra lie_from_json(const Json& j, const std::string& where = "lie");

// {"kind":"lie-ruth", "lie", "C":c, "V":v, "d":matrix, "nablaC":[matrix],
//  "nablaV":[matrix], "R2":[[i,j,matrix],...]}. Missing R2 entries are zero.
Json lie_ruth_to_json(const LieRuth& R);
LieRuth lie_ruth_from_json(const Json& j, const std::string& where = "lie-ruth");

enum class DocKind { Groupoid, Ruth, Morphism, CoreExtension, LieRuth };
const char* doc_kind_name(DocKind k);

struct Document {
  DocKind kind = DocKind::Groupoid;
  std::string text;  // raw file contents, for fingerprints
  FiniteGroupoid groupoid;
  std::optional<Ruth> ruth;
  std::optional<MorphismDoc> morphism;
  std::optional<CoreDoc> core;
  std::optional<LieRuth> lie;
};

// Dispatches on "kind"; a document without one is read as a groupoid.
Document parse_document(const std::string& text, const std::string& where);
Document load_document(const std::string& path);  // throws Error(Parse) on I/O errors too

std::string dump(const Json& j);  // two-space indent, trailing newline

}  // namespace fatlab
