#pragma once

#include <string>
#include <string_view>

#include "ptrs/interpretation.hpp"

namespace ptrs {

/// One line per symbol, e.g. `[s](x) = x + 1`, `[f](x1,x2) = 2*x1*x2 + x1 + x2`,
/// `[a](x) = [[1,1],[0,0]]*x + [0,1]` (matrices row-major).
std::string render_interpretation(const Interpretation& interp);

/// The interpretation followed by one `margin q : rule` line per rule and a
/// final `epsilon = q` line. Accepted by parse_interpretation.
std::string render_certificate(const Certificate& cert);

/// Reads every `[f](args) = expr` definition. Definitions are separated by
/// newlines or top-level commas; lines that do not start with `[` are
/// ignored, so full prover output is accepted. Coefficients are exact
/// rationals; `7x` and `7*x` are both accepted. Throws
/// Error(CertificateParse).
Interpretation parse_interpretation(std::string_view text);

}  // namespace ptrs
