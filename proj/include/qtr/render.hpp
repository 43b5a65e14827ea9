#pragma once
// Serialization of quasi-trigonometric r-matrices: a versioned JSON document
// that parses back losslessly, plus LaTeX and plain-text layouts that group
// the terms as  standard structure + root correction u + Cartan correction t.

#include <string>

#include "qtr/quasitrig.hpp"

namespace qtr {

// A rendered r-matrix or report, tagged with its format ("latex", "json" or
// "text").
struct OutputDocument {
  std::string format;
  std::string payload;
};

// Document parsed back from JSON: the solution and the shift parameter the
// document was tagged with (0 when the document did not come from a shift
// construction).
struct ParsedDocument {
  QuasiTrigR r;
  int c = 0;
};

// JSON document, schema "qtr-1":
//   {"schema":"qtr-1","n":3,"c":1,"singular":"x/(y-x)*casimir",
//    "poly":[{"left":[i,j],"right":[k,l],"coeff":"<polynomial in x,y>"}]}
// "singular" names the fixed pole part x/(y-x) * casimir; "poly" lists the
// polynomial part term by term in canonical unit order with canonical
// coefficient strings, so equal solutions always serialize identically and
// render_json(parse_json(doc).r, parse_json(doc).c) == doc.
std::string render_json(const QuasiTrigR& r, int c);

// Inverse of render_json.  Throws std::invalid_argument on malformed
// documents (wrong schema tag, missing keys, bad indices, unparsable
// coefficients).
ParsedDocument parse_json(const std::string& text);

// LaTeX display: pole part \frac{x}{y-x}\gamma, the standard polynomial part
// \frac{1}{2}(\gamma + \sum e_{ij} \wedge e_{ji}), then the extra root terms
// u and Cartan terms t of the given solution with \otimes monomials.
std::string render_latex(const QuasiTrigR& r);

// Plain-text counterpart of render_latex with the same grouping.
std::string render_text(const QuasiTrigR& r);

// Dispatch on format ("latex", "json", "text"); throws std::invalid_argument
// for anything else.
OutputDocument render_document(const QuasiTrigR& r, int c,
                               const std::string& format);

}  // namespace qtr
