// Copyright 2026 The qconverse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "channels.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

#include "errors.hpp"

namespace qconverse {
namespace {

using json = nlohmann::json;

void check_unit_interval(double v, double hi, const char* what) {
  if (!(v >= 0.0 && v <= hi)) {
    throw invalid_argument(std::string(what) + " parameter " +
                           std::to_string(v) + " outside [0, " +
                           std::to_string(hi) + "]");
  }
}

CMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

}  // namespace

Channel::Channel(std::vector<CMatrix> kraus, int d_in, int d_out,
                 std::string label)
    : kraus_(std::move(kraus)), d_in_(d_in), d_out_(d_out),
      label_(std::move(label)) {
  if (d_in_ < 1 || d_out_ < 1) {
    throw invalid_argument("Channel: dimensions must be >= 1");
  }
  if (kraus_.empty()) {
    throw invalid_argument("Channel: at least one Kraus operator required");
  }
  for (const CMatrix& k : kraus_) {
    if (k.rows() != d_out_ || k.cols() != d_in_) {
      throw invalid_argument("Channel: Kraus operator has shape " +
                             std::to_string(k.rows()) + "x" +
                             std::to_string(k.cols()) + ", expected " +
                             std::to_string(d_out_) + "x" +
                             std::to_string(d_in_));
    }
  }
  if (tp_defect() > kTraceTol) {
    throw invariant_violation("Channel: Kraus operators are not trace "
                              "preserving (defect " +
                              std::to_string(tp_defect()) + ")");
  }
}

double Channel::tp_defect() const {
  CMatrix acc = CMatrix::Zero(d_in_, d_in_);
  for (const CMatrix& k : kraus_) acc += k.adjoint() * k;
  acc -= CMatrix::Identity(d_in_, d_in_);
  return acc.cwiseAbs().maxCoeff();
}

ChoiMatrix choi(const Channel& ch) {
  const int da = ch.d_in();
  const int db = ch.d_out();
  CMatrix j = CMatrix::Zero(da * db, da * db);
  for (const CMatrix& k : ch.kraus()) {
    // |K>> = sum_i |i> (x) K|i>
    Eigen::VectorXcd v(da * db);
    for (int i = 0; i < da; ++i) v.segment(i * db, db) = k.col(i);
    j.noalias() += v * v.adjoint();
  }
  // Rank-one sums are Hermitian only up to rounding; symmetrize exactly.
  j = 0.5 * (j + j.adjoint()).eval();
  HermMat mat = HermMat::hermitian(std::move(j), {da, db});
  const CMatrix marginal = partial_trace(mat, 1).data();
  const double defect =
      (marginal - CMatrix::Identity(da, da)).cwiseAbs().maxCoeff();
  if (defect > kTraceTol) {
    throw invariant_violation("choi: tr_B J deviates from identity by " +
                              std::to_string(defect));
  }
  return {std::move(mat), da, db, ch.label()};
}

Channel tensor(const Channel& ch1, const Channel& ch2) {
  std::vector<CMatrix> kraus;
  kraus.reserve(ch1.kraus().size() * ch2.kraus().size());
  for (const CMatrix& a : ch1.kraus()) {
    for (const CMatrix& b : ch2.kraus()) {
      kraus.push_back(kron(a, b));
    }
  }
  std::string label;
  if (!ch1.label().empty() || !ch2.label().empty()) {
    label = "(" + ch1.label() + ")x(" + ch2.label() + ")";
  }
  return Channel(std::move(kraus), ch1.d_in() * ch2.d_in(),
                 ch1.d_out() * ch2.d_out(), std::move(label));
}

Channel tensor_power(const Channel& ch, int n) {
  if (n < 1) throw invalid_argument("tensor_power: n must be >= 1");
  Channel out = ch;
  for (int i = 1; i < n; ++i) out = tensor(out, ch);
  return out;
}

Channel identity_channel(int d) {
  if (d < 1) throw invalid_argument("identity_channel: d must be >= 1");
  return Channel({CMatrix::Identity(d, d)}, d, d,
                 "identity(" + std::to_string(d) + ")");
}

Channel amplitude_damping(double r) {
  check_unit_interval(r, 1.0, "amplitude_damping");
  CMatrix e0 = CMatrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - r);
  CMatrix e1 = CMatrix::Zero(2, 2);
  e1(0, 1) = std::sqrt(r);
  return Channel({e0, e1}, 2, 2, "amplitude_damping(" + std::to_string(r) + ")");
}

Channel depolarizing(double p) {
  check_unit_interval(p, 1.0, "depolarizing");
  const double a = std::sqrt(1.0 - p);
  const double b = std::sqrt(p / 3.0);
  CMatrix id = CMatrix::Identity(2, 2);
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  y << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  z << 1.0, 0.0, 0.0, -1.0;
  return Channel({a * id, b * x, b * y, b * z}, 2, 2,
                 "depolarizing(" + std::to_string(p) + ")");
}

Channel channel_nr(double r) {
  check_unit_interval(r, 0.5, "channel_nr");
  CMatrix e0 = CMatrix::Zero(2, 3);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(r);
  CMatrix e1 = CMatrix::Zero(2, 3);
  e1(0, 1) = std::sqrt(1.0 - r);
  e1(1, 2) = 1.0;
  return Channel({e0, e1}, 3, 2, "channel_nr(" + std::to_string(r) + ")");
}

Channel random_channel(int d_in, int d_out, int d_env, std::uint64_t seed) {
  if (d_in < 1 || d_out < 1 || d_env < 1) {
    throw invalid_argument("random_channel: dimensions must be >= 1");
  }
  while (d_out * d_env < d_in) ++d_env;
  std::mt19937_64 rng(seed);
  const int rows = d_out * d_env;
  const CMatrix g = ginibre(rows, d_in, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, d_in);
  // Fix column phases by the diagonal of R so the isometry is Haar distributed.
  const CMatrix r = qr.matrixQR().topRows(d_in).triangularView<Eigen::Upper>();
  for (int j = 0; j < d_in; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  std::vector<CMatrix> kraus;
  kraus.reserve(d_env);
  for (int e = 0; e < d_env; ++e) {
    CMatrix k(d_out, d_in);
    for (int b = 0; b < d_out; ++b) k.row(b) = q.row(b * d_env + e);
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus), d_in, d_out,
                 "random(" + std::to_string(d_in) + "," +
                     std::to_string(d_out) + ",seed=" + std::to_string(seed) +
                     ")");
}

CMatrix random_density_matrix(int d, std::uint64_t seed) {
  if (d < 1) throw invalid_argument("random_density_matrix: d must be >= 1");
  std::mt19937_64 rng(seed);
  const CMatrix g = ginibre(d, d, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

std::string channel_to_json(const Channel& ch) {
  json doc;
  doc["d_in"] = ch.d_in();
  doc["d_out"] = ch.d_out();
  if (!ch.label().empty()) doc["label"] = ch.label();
  json kraus = json::array();
  for (const CMatrix& k : ch.kraus()) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < k.cols(); ++j) {
        row.push_back({k(i, j).real(), k(i, j).imag()});
      }
      rows.push_back(std::move(row));
    }
    kraus.push_back(std::move(rows));
  }
  doc["kraus"] = std::move(kraus);
  return doc.dump(2);
}

Channel channel_from_json(std::string_view text) {
  const auto parse_error = [](const std::string& what) {
    return Error(ErrorCode::ParseError, "channel JSON: " + what);
  };
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(e.what());
  }
  if (!doc.is_object()) throw parse_error("top level must be an object");
  for (const char* key : {"d_in", "d_out", "kraus"}) {
    if (!doc.contains(key)) {
      throw parse_error(std::string("missing key '") + key + "'");
    }
  }
  if (!doc["d_in"].is_number_integer() || !doc["d_out"].is_number_integer()) {
    throw parse_error("d_in and d_out must be integers");
  }
  const int d_in = doc["d_in"].get<int>();
  const int d_out = doc["d_out"].get<int>();
  if (d_in < 1 || d_out < 1) throw parse_error("dimensions must be >= 1");
  if (!doc["kraus"].is_array() || doc["kraus"].empty()) {
    throw parse_error("'kraus' must be a non-empty array");
  }
  std::vector<CMatrix> kraus;
  for (const json& mat : doc["kraus"]) {
    if (!mat.is_array() || static_cast<int>(mat.size()) != d_out) {
      throw parse_error("each Kraus operator needs d_out rows");
    }
    CMatrix k(d_out, d_in);
    for (int i = 0; i < d_out; ++i) {
      const json& row = mat[i];
      if (!row.is_array() || static_cast<int>(row.size()) != d_in) {
        throw parse_error("each Kraus row needs d_in entries");
      }
      for (int j = 0; j < d_in; ++j) {
        const json& entry = row[j];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number()) {
          throw parse_error("entries must be [re, im] number pairs");
        }
        k(i, j) = cplx(entry[0].get<double>(), entry[1].get<double>());
      }
    }
    kraus.push_back(std::move(k));
  }
  std::string label = doc.value("label", std::string{});
  return Channel(std::move(kraus), d_in, d_out, std::move(label));
}

}  // namespace qconverse
