#include "latcert/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace latcert {

using nlohmann::json;

namespace {

json int_str(const Int& v) { return v.get_str(); }

Int int_parse(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected a decimal-string integer");
  try {
    return Int(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed integer: " + j.get<std::string>());
  }
}

json int_matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(int_str(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix int_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      throw std::invalid_argument("matrix rows have unequal lengths");
    for (int k = 0; k < cols; ++k) m(i, k) = int_parse(j[i][k]);
  }
  return m;
}

json rat_matrix_to_json(const RatMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(json::array({int_str(m(i, j).get_num()), int_str(m(i, j).get_den())}));
    rows.push_back(std::move(row));
  }
  return rows;
}

RatMatrix rat_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  RatMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const json& e = j[i][k];
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("rational entry must be a [numerator, denominator] pair");
      Int den = int_parse(e[1]);
      if (den == 0) throw std::invalid_argument("rational entry with zero denominator");
      Rat v(int_parse(e[0]), den);
      v.canonicalize();
      m(i, k) = v;
    }
  return m;
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("missing field: ") + key);
  return *it;
}

int small_int(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string(key) + " must be an integer");
  return v.get<int>();
}

}  // namespace

json instance_to_json(const ProblemInstance& inst) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["g"] = inst.g;
  j["n"] = inst.n();
  j["p"] = int_str(inst.p);
  j["precision"] = inst.precision;
  json blocks = json::array();
  for (const auto& b : inst.blocks) {
    json coeffs = json::array();
    for (const Int& c : b.f.coeffs()) coeffs.push_back(int_str(c));
    blocks.push_back(json{{"r", b.r}, {"f", std::move(coeffs)}, {"h", b.h}});
  }
  j["blocks"] = std::move(blocks);
  json s = json::array();
  for (const Int& ell : inst.S) s.push_back(int_str(ell));
  j["S"] = std::move(s);
  json locals = json::object();
  for (const auto& [ell, mod] : inst.locals) locals[ell.get_str()] = int_matrix_to_json(mod.U.lift());
  j["locals"] = std::move(locals);
  return j;
}

ProblemInstance instance_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
  if (small_int(j, "schema_version") != kSchemaVersion)
    throw std::invalid_argument("unsupported schema_version");
  ProblemInstance inst;
  inst.g = small_int(j, "g");
  if (inst.g <= 0) throw std::invalid_argument("g must be positive");
  if (small_int(j, "n") != 2 * inst.g) throw std::invalid_argument("n must equal 2g");
  inst.p = int_parse(field(j, "p"));
  if (inst.p < 0 || (inst.p != 0 && !is_prime(inst.p)))
    throw std::invalid_argument("p must be 0 or prime");
  inst.precision = small_int(j, "precision");
  if (inst.precision < 1) throw std::invalid_argument("precision must be >= 1");
  for (const json& b : field(j, "blocks")) {
    std::vector<Int> coeffs;
    for (const json& c : field(b, "f")) coeffs.push_back(int_parse(c));
    inst.blocks.push_back(BlockSpec{small_int(b, "r"), IntPoly(coeffs), small_int(b, "h")});
  }
  if (inst.blocks.empty()) throw std::invalid_argument("blocks must be nonempty");
  for (const json& s : field(j, "S")) {
    Int ell = int_parse(s);
    if (!is_prime(ell)) throw std::invalid_argument("S must contain primes");
    inst.S.push_back(ell);
  }
  const json& locals = field(j, "locals");
  IntPoly f = inst.min_poly();
  for (const Int& ell : inst.S) {
    auto it = locals.find(ell.get_str());
    if (it == locals.end())
      throw std::invalid_argument("missing local operator at prime " + ell.get_str());
    PadicContext ctx(ell, inst.precision);
    IntMatrix u = int_matrix_from_json(*it);
    if (u.rows() != inst.n() || u.cols() != inst.n())
      throw std::invalid_argument("local operator has wrong dimension");
    for (int r = 0; r < u.rows(); ++r)
      for (int c = 0; c < u.cols(); ++c)
        if (u(r, c) < 0 || u(r, c) >= ctx.modulus)
          throw std::invalid_argument("local operator residues must be reduced");
    inst.locals.emplace(ell, make_local_module(ctx, u, f));
  }
  if (locals.size() != inst.S.size())
    throw std::invalid_argument("locals must match S exactly");
  return inst;
}

json certificate_to_json(const Certificate& cert, const std::string& status) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["engine_version"] = kEngineVersion;
  j["verification_status"] = status;
  j["precision"] = cert.precision;
  j["A"] = int_matrix_to_json(cert.A);
  json conj = json::object();
  for (const auto& [ell, p] : cert.conjugators)
    conj[ell.get_str()] = json{{"precision", p.ctx().precision},
                               {"matrix", int_matrix_to_json(p.lift())}};
  j["conjugators"] = std::move(conj);
  j["basis"] = rat_matrix_to_json(cert.basis);
  return j;
}

Certificate certificate_from_json(const json& j, std::string* status) {
  if (!j.is_object()) throw std::invalid_argument("certificate must be a JSON object");
  if (small_int(j, "schema_version") != kSchemaVersion)
    throw std::invalid_argument("unsupported schema_version");
  Certificate cert{IntMatrix(), {}, small_int(j, "precision"), RatMatrix()};
  if (cert.precision < 1) throw std::invalid_argument("precision must be >= 1");
  cert.A = int_matrix_from_json(field(j, "A"));
  for (const auto& [key, val] : field(j, "conjugators").items()) {
    Int ell(key);
    if (!is_prime(ell)) throw std::invalid_argument("conjugator key must be a prime");
    PadicContext ctx(ell, small_int(val, "precision"));
    cert.conjugators.emplace(ell, PadicMatrix(ctx, int_matrix_from_json(field(val, "matrix"))));
  }
  cert.basis = rat_matrix_from_json(field(j, "basis"));
  if (status) *status = field(j, "verification_status").get<std::string>();
  return cert;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace latcert
