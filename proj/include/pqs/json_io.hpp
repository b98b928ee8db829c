#pragma once

#include <string>

#include "pqs/linalg.hpp"
#include "pqs/security.hpp"

namespace pqs {

// {"dims": [..], "labels": [..], "tol": t, "data": [[re, im], ..]} row-major.
// Finite doubles survive a round trip bit-exactly.
std::string matrix_to_json(const DensityMatrix& dm);
DensityMatrix matrix_from_json(const std::string& text);

// {"d": n, "p": [[i, j, p], ..], "eve": [[i, j, matrix], ..]}; square key only.
std::string ccq_to_json(const CcqEnsemble& c);
CcqEnsemble ccq_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pqs
