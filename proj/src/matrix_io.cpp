#include "loewner/matrix_io.hpp"

namespace loewner {
namespace {

nlohmann::json rows_of(const DenseMatrix& a, bool imag) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(imag ? a(i, j).imag() : a(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

void fill_part(DenseMatrix& a, const nlohmann::json& rows, bool imag, const char* key) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != a.rows()) {
    throw ParseError(std::string("matrix field '") + key + "' has wrong row count");
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != a.cols()) {
      throw ParseError(std::string("matrix field '") + key + "' has wrong column count");
    }
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (!row[j].is_number()) throw ParseError(std::string("non-numeric entry in '") + key + "'");
      const double v = row[j].get<double>();
      if (imag) {
        a(i, j).imag(v);
      } else {
        a(i, j).real(v);
      }
    }
  }
}

DenseMatrix parse(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols) {
  if (rows < 1 || cols < 1) throw ParseError("matrix dimensions must be positive");
  if (!j.contains("re")) throw ParseError("matrix object needs 're'");
  DenseMatrix a = DenseMatrix::Zero(rows, cols);
  fill_part(a, j.at("re"), false, "re");
  if (j.contains("im")) fill_part(a, j.at("im"), true, "im");
  return a;
}

}  // namespace

nlohmann::json to_json(const Hermitian& a) {
  nlohmann::json j;
  j["dim"] = a.dim();
  j["re"] = rows_of(a.dense(), false);
  if (a.dense().imag().cwiseAbs().maxCoeff() > 0.0) j["im"] = rows_of(a.dense(), true);
  return j;
}

Hermitian hermitian_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.at("dim").is_number_integer()) {
    throw ParseError("matrix object needs integer 'dim'");
  }
  const auto n = j.at("dim").get<Eigen::Index>();
  return Hermitian::from_dense(parse(j, n, n));
}

nlohmann::json dense_to_json(const DenseMatrix& a) {
  nlohmann::json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  j["re"] = rows_of(a, false);
  if (a.imag().cwiseAbs().maxCoeff() > 0.0) j["im"] = rows_of(a, true);
  return j;
}

DenseMatrix dense_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols")) {
    throw ParseError("dense matrix object needs 'rows' and 'cols'");
  }
  return parse(j, j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
}

}  // namespace loewner
