#pragma once

// Matrix documents: {"n": 2, "data": [[re, im], ...], "label": "..."},
// entries row-major.

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "oblique/matrix.hpp"

namespace oblique {

struct MatrixDocument {
  ComplexMatrix matrix;
  std::string label;
  std::uint64_t digest = 0;  // FNV-1a of the source text
};

std::uint64_t fnv1a(std::string_view bytes) noexcept;

// Throws DomainError: ParseError ("line L, column C: ...") for malformed text
// or a wrong shape, NonFinite ("entry k") for inf/nan entries.
MatrixDocument parse_matrix_document(std::string_view text);
ComplexMatrix parse_matrix(std::string_view text);

nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m, std::string_view label = {});
std::string print_matrix(const ComplexMatrix& m, std::string_view label = {});

// Reads and parses a file; a missing file is an InvalidArgument error.
MatrixDocument read_matrix_file(const std::string& path);

}  // namespace oblique
