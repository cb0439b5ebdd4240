#ifndef MONOMEQ_IO_HPP
#define MONOMEQ_IO_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "monomeq/fixtures.hpp"
#include "monomeq/masa.hpp"
#include "monomeq/monomial.hpp"
#include "monomeq/search.hpp"

namespace monomeq {

using json = nlohmann::json;

// Matrix files: {"n": int, "entries": [[[re, im], ...], ...]} row-major.

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"entries", std::move(rows)}};
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix: expected a JSON object");
  if (!j.contains("n") || !j.at("n").is_number_integer()) throw ParseError("matrix: missing integer field 'n'");
  const auto n_signed = j.at("n").get<long long>();
  if (n_signed < 1) throw ParseError("matrix: 'n' must be positive");
  const auto n = static_cast<std::size_t>(n_signed);
  if (!j.contains("entries") || !j.at("entries").is_array()) throw ParseError("matrix: missing array field 'entries'");
  const auto& rows = j.at("entries");
  if (rows.size() != n) throw ParseError("matrix: expected " + std::to_string(n) + " rows");
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != n) throw ParseError("matrix: row " + std::to_string(i) + " is not of length n");
    for (std::size_t k = 0; k < n; ++k) {
      const auto& e = row[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("matrix: entry (" + std::to_string(i) + "," + std::to_string(k) + ") must be [re, im]");
      const double re = e[0].get<double>();
      const double im = e[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im))
        throw ParseError("matrix: entry (" + std::to_string(i) + "," + std::to_string(k) + ") is not finite");
      m(i, k) = {re, im};
    }
  }
  return m;
}

inline Matrix parse_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Matrix read_matrix_file(const std::filesystem::path& path) { return parse_matrix(read_text_file(path)); }

inline void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

inline void write_matrix_file(const std::filesystem::path& path, const Matrix& m) { write_json_file(path, to_json(m)); }

inline json to_json(const MonomialForm& f) {
  json w = json::array();
  for (const auto& z : f.weights) w.push_back({z.real(), z.imag()});
  return {{"weights", std::move(w)}, {"perm", f.perm}};
}

inline json to_json(const MasaBasis& b) {
  return {{"V", to_json(b.V)},
          {"diag_certificates", b.diag_certificates},
          {"monomial_certificate", to_json(b.monomial_certificate)},
          {"monomial_residual", b.monomial_residual}};
}

inline json to_json(const CommutantCheckResult& c) {
  json j{{"passed", c.passed}, {"commutator_norms", c.commutator_norms}, {"threshold", c.threshold}};
  j["first_failing_k"] = c.first_failing_k ? json(*c.first_failing_k) : json(nullptr);
  return j;
}

/// Stable field names: verdict, half_normal, commutator_norm, singular_values,
/// first_failing_k, witness {V, weights, perm}.
inline json to_json(const DecisionReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["half_normal"] = r.half_normal.half_normal;
  j["commutator_norm"] = r.half_normal.norm;
  j["singular_values"] = r.singular_values;
  j["singular_values_distinct"] = r.distinct;
  j["invertible"] = r.invertible;
  const auto k = r.first_failing_k();
  j["first_failing_k"] = k ? json(*k) : json(nullptr);
  j["commutant_check"] = r.commutant_check ? to_json(*r.commutant_check) : json(nullptr);
  if (r.witness) {
    const auto form = to_json(r.witness->form);
    j["witness"] = {{"V", to_json(r.witness->basis.V)},
                    {"weights", form["weights"]},
                    {"perm", form["perm"]},
                    {"residual", r.witness->residual}};
  } else {
    j["witness"] = nullptr;
  }
  if (r.refutation) {
    j["refutation"] = {
        {"stage", r.refutation->stage == Refutation::Stage::HalfNormality ? "half_normality" : "commutant"},
        {"k", r.refutation->k ? json(*r.refutation->k) : json(nullptr)},
        {"norm", r.refutation->norm}};
  } else {
    j["refutation"] = nullptr;
  }
  j["route"] = r.route;
  j["kernel_attempts"] = r.kernel_attempts;
  j["diagnostics"] = r.diagnostics;
  return j;
}

inline json to_json(const FixtureBundle& f) {
  const auto& e = f.expected;
  json j{{"name", f.name}, {"n", f.P.rows()}, {"half_normal", e.half_normal}, {"commutes", e.commutes}};
  j["first_failing_k"] = e.first_failing_k ? json(*e.first_failing_k) : json(nullptr);
  j["verdict"] = e.verdict ? json(to_string(*e.verdict)) : json(nullptr);
  j["failing_commutator"] = e.failing_commutator ? to_json(*e.failing_commutator) : json(nullptr);
  j["printed_commutator"] = e.printed_commutator ? to_json(*e.printed_commutator) : json(nullptr);
  return j;
}

inline json to_json(const SearchRecord& r) {
  return {{"trial", r.trial},
          {"seed", r.seed},
          {"kind", to_string(r.kind)},
          {"dimension", r.dimension},
          {"A", to_json(r.A)},
          {"max_power_checked", r.max_power_checked},
          {"power_norms", r.power_norms},
          {"all_powers_half_normal", r.all_powers_half_normal},
          {"invertible", r.invertible},
          {"verdict", to_string(r.verdict)},
          {"classification", to_string(r.classification)}};
}

}  // namespace monomeq

#endif  // MONOMEQ_IO_HPP
