#include "whfactor/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace whfactor::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorKind::kParseError, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

// Gives an empty parsed matrix the shape implied by context.
ComplexMatrix reshape_empty(ComplexMatrix m, Index rows, Index cols, const char* name) {
  if (m.size() == 0 && (rows == 0 || cols == 0)) return ComplexMatrix(rows, cols);
  if (m.rows() != rows || m.cols() != cols) {
    parse_error(std::string(name) + " is " + std::to_string(m.rows()) + "x" +
                std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                std::to_string(cols));
  }
  return m;
}

double number_from_json(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) parse_error("expected a number");
  return j.get<double>();
}

}  // namespace

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_error("complex number must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) parse_error("matrix must be an array of rows");
  const Index rows = static_cast<Index>(j.size());
  if (rows == 0) return ComplexMatrix(0, 0);
  if (!j[0].is_array()) parse_error("matrix row must be an array");
  const Index cols = static_cast<Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      parse_error("ragged matrix: row " + std::to_string(i) + " has wrong length");
    }
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array()) parse_error("vector must be an array of [re, im] pairs");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

Json to_json(const StateSpaceSystem& sys) {
  return Json{{"A", to_json(sys.a())},
              {"B", to_json(sys.b())},
              {"C", to_json(sys.c())},
              {"D", to_json(sys.d())}};
}

StateSpaceSystem system_from_json(const Json& j) {
  if (!j.is_object()) parse_error("system must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "A" && key != "B" && key != "C" && key != "D") {
      parse_error("unknown system field '" + key + "'");
    }
  }
  ComplexMatrix a = matrix_from_json(field(j, "A"));
  const ComplexMatrix d = matrix_from_json(field(j, "D"));
  if (a.rows() != a.cols()) parse_error("A must be square");
  const Index n = a.rows();
  const Index p = d.rows();
  const Index m = d.cols();
  ComplexMatrix b = reshape_empty(matrix_from_json(field(j, "B")), n, m, "B");
  ComplexMatrix c = reshape_empty(matrix_from_json(field(j, "C")), p, n, "C");
  return StateSpaceSystem(std::move(a), std::move(b), std::move(c), d);
}

Json to_json(const RationalSymbolSpec& spec) {
  Json poly = Json::array();
  for (const auto& c : spec.poly_coeffs) poly.push_back(to_json(c));
  Json poles = Json::array();
  for (const auto& pole : spec.poles) {
    poles.push_back(Json{{"q", to_json(pole.location)}, {"residue", to_json(pole.residue)}});
  }
  return Json{{"constant", to_json(spec.constant)}, {"poly_coeffs", poly}, {"poles", poles}};
}

RationalSymbolSpec rational_spec_from_json(const Json& j) {
  if (!j.is_object()) parse_error("rational spec must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "constant" && key != "poly_coeffs" && key != "poles") {
      parse_error("unknown rational spec field '" + key + "'");
    }
  }
  RationalSymbolSpec spec;
  spec.constant = matrix_from_json(field(j, "constant"));
  if (j.contains("poly_coeffs")) {
    for (const auto& c : j.at("poly_coeffs")) spec.poly_coeffs.push_back(matrix_from_json(c));
  }
  if (j.contains("poles")) {
    for (const auto& p : j.at("poles")) {
      SimplePole pole;
      pole.location = complex_from_json(field(p, "q"));
      pole.residue = matrix_from_json(field(p, "residue"));
      spec.poles.push_back(std::move(pole));
    }
  }
  return spec;
}

Json to_json(const FactorRealization& f) {
  return Json{{"dterm", to_json(f.dterm)},
              {"cvec", to_json(f.cvec)},
              {"amat", to_json(f.amat)},
              {"bvec", to_json(f.bvec)},
              {"domain", std::string(to_string(f.domain))},
              {"spectrum_bound", number(f.spectrum_bound)}};
}

FactorRealization factor_from_json(const Json& j) {
  FactorRealization f;
  f.dterm = matrix_from_json(field(j, "dterm"));
  f.amat = matrix_from_json(field(j, "amat"));
  const Index k = f.amat.rows();
  f.cvec = reshape_empty(matrix_from_json(field(j, "cvec")), f.dterm.rows(), k, "cvec");
  f.bvec = reshape_empty(matrix_from_json(field(j, "bvec")), k, f.dterm.cols(), "bvec");
  f.domain = parse_domain(field(j, "domain").get<std::string>());
  f.spectrum_bound = number_from_json(field(j, "spectrum_bound"));
  return f;
}

Json to_json(const WienerHopfFactorization& wh) {
  const bool right = wh.side == Side::kRight;
  Json factors = Json::object();
  factors[right ? "V_minus" : "W_minus"] = to_json(wh.factor_outer);
  factors[right ? "V_plus" : "W_plus"] = to_json(wh.factor_inner);
  factors[right ? "V_minus_inv" : "W_minus_inv"] = to_json(wh.inverse_outer);
  factors[right ? "V_plus_inv" : "W_plus_inv"] = to_json(wh.inverse_inner);
  return Json{{"side", std::string(to_string(wh.side))},
              {"factors", factors},
              {"projection", to_json(wh.projection)},
              {"basis_cond", number(wh.basis_cond)},
              {"spectral_bounds",
               Json{{"factor_outer", number(wh.factor_outer.spectrum_bound)},
                    {"factor_inner", number(wh.factor_inner.spectrum_bound)},
                    {"inverse_outer", number(wh.inverse_outer.spectrum_bound)},
                    {"inverse_inner", number(wh.inverse_inner.spectrum_bound)}}}};
}

WienerHopfFactorization factorization_from_json(const Json& j) {
  WienerHopfFactorization wh;
  wh.side = parse_side(field(j, "side").get<std::string>());
  const Json& factors = field(j, "factors");
  const bool right = wh.side == Side::kRight;
  wh.factor_outer = factor_from_json(field(factors, right ? "V_minus" : "W_minus"));
  wh.factor_inner = factor_from_json(field(factors, right ? "V_plus" : "W_plus"));
  wh.inverse_outer = factor_from_json(field(factors, right ? "V_minus_inv" : "W_minus_inv"));
  wh.inverse_inner = factor_from_json(field(factors, right ? "V_plus_inv" : "W_plus_inv"));
  wh.projection = matrix_from_json(field(j, "projection"));
  wh.basis_cond = number_from_json(field(j, "basis_cond"));
  return wh;
}

Json to_json(const KypCertificate& cert) {
  return Json{{"H", to_json(cert.h)},
              {"margin", number(cert.margin)},
              {"adjoint_margin", number(cert.adjoint_margin)},
              {"inertia", Json{{"n_pos", cert.inertia.positive}, {"n_neg", cert.inertia.negative}}},
              {"slack", number(cert.slack)}};
}

Json to_json(const DiagnosticsReport& r) {
  Json out{{"sup_norm", number(r.sup_norm)},
           {"norm_margin", number(r.norm_margin)},
           {"factor_residual_max", number(r.factor_residual_max)},
           {"inverse_residual_max", number(r.inverse_residual_max)},
           {"containment_margins", Json::array()},
           {"basis_cond", number(r.basis_cond)},
           {"grid_points", r.grid_points},
           {"passed", r.passed()},
           {"failures", Json::array()}};
  for (double v : r.containment_margins) out["containment_margins"].push_back(number(v));
  if (r.kyp_margin) out["kyp_margin"] = number(*r.kyp_margin);
  if (r.adjoint_kyp_margin) out["adjoint_kyp_margin"] = number(*r.adjoint_kyp_margin);
  if (r.bicontraction_margins_a) {
    out["bicontraction_margins_a"] = Json::array(
        {number(r.bicontraction_margins_a->first), number(r.bicontraction_margins_a->second)});
  }
  if (r.bicontraction_margins_across) {
    out["bicontraction_margins_across"] =
        Json::array({number(r.bicontraction_margins_across->first),
                     number(r.bicontraction_margins_across->second)});
  }
  if (r.inertia_ok) out["inertia_ok"] = *r.inertia_ok;
  for (const auto& f : r.failures) {
    out["failures"].push_back(Json{{"check", f.check}, {"message", f.message}});
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& err) {
    parse_error("'" + path + "': " + err.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIoError, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
  if (!out) throw Error(ErrorKind::kIoError, "write to '" + path + "' failed");
}

}  // namespace whfactor::io
