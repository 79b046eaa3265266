#pragma once

#include <iosfwd>
#include <string>

#include "mmiso/linmap.hpp"
#include "mmiso/orbits.hpp"
#include "mmiso/recovery.hpp"

namespace mmiso {

// Line-oriented text formats, whitespace separated, '#' starts a comment.
// Indices in tensor coefficient lines are 1-based. Writers emit canonical
// scalars and a fixed ordering, so identical values serialize identically.
//
//   matrix block:   "matrix <rows> <cols>" + rows x cols scalar grid
//   tensor:         "tensor <m> <n> <p>", field line, nonzero coefficient
//                   lines "<i> <j> <j'> <k> <k'> <i'> <scalar>"
//   decomposition:  "decomposition <m> <n> <p> <terms>", field line,
//                   then u, v, w matrix blocks per term
//   element:        "element <m> <n> <p>", field line, "perm <name>",
//                   then a, b, c matrix blocks
//   linmap:         "linmap <r'> <s'> <r> <s>", field line, one
//                   (r'*s') x (r*s) matrix block acting on column-major
//                   flattened matrices
//   bilinear:       "bilinear <zdim> <xdim> <ydim>", field line,
//                   zdim matrix blocks of size xdim x ydim
//   stabilizer:     "stabilizer <order>", then order element blocks
//
// Field line: "field rational" or "field gf <q>".

void write_field_line(std::ostream& os, const FieldSpec& f);

void write_matrix_block(std::ostream& os, const Mat& m);
void write_tensor(std::ostream& os, const Tensor3& t);
void write_decomposition(std::ostream& os, const Decomposition& d);
void write_element(std::ostream& os, const IsotropyElement& g);
void write_linmap(std::ostream& os, const LinMap& m);
void write_bilinear(std::ostream& os, const BilinearMap& f);
void write_stabilizer(std::ostream& os, const StabilizerResult& s);

Tensor3 read_tensor(std::istream& is);
Decomposition read_decomposition(std::istream& is);
IsotropyElement read_element(std::istream& is);
LinMap read_linmap(std::istream& is);
/// Shapes give the matrix-space structure of X, Y, Z; their products must
/// match the header dims. Defaults interpret each space as columns (d x 1).
BilinearMap read_bilinear(std::istream& is, FactorDims xshape = {0, 0},
                          FactorDims yshape = {0, 0}, FactorDims zshape = {0, 0});
StabilizerResult read_stabilizer(std::istream& is);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

Tensor3 read_tensor_file(const std::string& path);
Decomposition read_decomposition_file(const std::string& path);
IsotropyElement read_element_file(const std::string& path);
LinMap read_linmap_file(const std::string& path);
StabilizerResult read_stabilizer_file(const std::string& path);

std::string tensor_to_string(const Tensor3& t);
std::string decomposition_to_string(const Decomposition& d);
std::string element_to_string(const IsotropyElement& g);
std::string linmap_to_string(const LinMap& m);
std::string stabilizer_to_string(const StabilizerResult& s);

} // namespace mmiso
