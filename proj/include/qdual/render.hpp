#pragma once

#include <string>

#include "qdual/qlaurent.hpp"

namespace qdual {

/// Canonical text forms; term order is lex-descending on exponent vectors,
/// so identical values always print byte-identically.
std::string render_scalar_text(const OmegaScalar& c, const std::string& unit);
std::string render_text(const QLaurent& f);
std::string render_term_text(const QLaurent& f, const ExpVec& p);
std::string render_latex(const QLaurent& f);
std::string render_json(const QLaurent& f);

} // namespace qdual
