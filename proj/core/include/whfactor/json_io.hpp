#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "whfactor/kyp_krein.hpp"
#include "whfactor/toeplitz.hpp"
#include "whfactor/verification.hpp"
#include "whfactor/wiener_hopf.hpp"

namespace whfactor::io {

using Json = nlohmann::json;

// Complex numbers are [re, im]; matrices are row-major nested arrays of
// them. Empty matrices serialize as [] (or [[], ...] for p x 0) and are
// reshaped from context when read back.

Json to_json(Complex z);
Json to_json(const ComplexMatrix& m);
Json vector_to_json(const ComplexVector& v);

Complex complex_from_json(const Json& j);
/// Throws ParseError on ragged or malformed input.
ComplexMatrix matrix_from_json(const Json& j);
ComplexVector vector_from_json(const Json& j);

/// {"A","B","C","D"}; dimensions are inferred from A and D and validated.
Json to_json(const StateSpaceSystem& sys);
StateSpaceSystem system_from_json(const Json& j);

/// {"constant", "poly_coeffs": [...], "poles": [{"q": [re, im], "residue"}]}
Json to_json(const RationalSymbolSpec& spec);
RationalSymbolSpec rational_spec_from_json(const Json& j);

Json to_json(const FactorRealization& f);
FactorRealization factor_from_json(const Json& j);

Json to_json(const WienerHopfFactorization& wh);
WienerHopfFactorization factorization_from_json(const Json& j);

Json to_json(const KypCertificate& cert);
Json to_json(const DiagnosticsReport& report);

/// Non-finite doubles are written as null.
Json number(double v);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace whfactor::io
