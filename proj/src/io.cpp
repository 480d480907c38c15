#include <telres/io.hpp>

#include <telres/linalg.hpp>

#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace telres {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed file: ") + e.what());
  }
}

const json& require_field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

int require_int(const json& j, const char* name) {
  const json& f = require_field(j, name);
  if (!f.is_number_integer()) throw ParseError(std::string("field \"") + name + "\" must be an integer");
  return f.get<int>();
}

std::string require_string(const json& j, const char* name) {
  const json& f = require_field(j, name);
  if (!f.is_string()) throw ParseError(std::string("field \"") + name + "\" must be a string");
  return f.get<std::string>();
}

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex entries must be [re, im] number pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

SubsystemLayout parse_layout(const json& j) {
  const std::string mode = require_string(j, "mode");
  if (mode == "multiqubit") {
    const int n = require_int(j, "qubits_per_side");
    if (n < 1 || n > 6) throw ParseError("qubits_per_side must be in [1, 6]");
    return SubsystemLayout::multiqubit(n);
  }
  if (mode == "bipartite") {
    const int d = require_int(j, "d");
    if (d < 2 || d > 64) throw ParseError("local dimension d must be in [2, 64]");
    return SubsystemLayout::bipartite(d, d);
  }
  throw ParseError("mode must be \"multiqubit\" or \"bipartite\"");
}

ComplexMatrix parse_matrix(const json& data, Eigen::Index dim, const char* what) {
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != dim)
    throw ParseError(std::string(what) + ": data must hold one row per basis state");
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = data[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
      throw ParseError(std::string(what) + ": row length does not match the declared dimension");
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = parse_complex(row[static_cast<size_t>(c)]);
  }
  return m;
}

ordered_json layout_json(const SubsystemLayout& layout) {
  ordered_json j;
  if (layout.is_multiqubit()) {
    j["mode"] = "multiqubit";
    j["qubits_per_side"] = layout.qubits_per_side();
  } else if (layout.num_slots() == 2 && layout.dim_a() == layout.dim_b()) {
    j["mode"] = "bipartite";
    j["d"] = static_cast<int>(layout.dim_a());
  } else {
    throw std::invalid_argument("write_state: only multiqubit and square bipartite layouts "
                                "are serializable");
  }
  return j;
}

ordered_json complex_json(const Complex& z) { return ordered_json{z.real(), z.imag()}; }

void dump_to(const std::string& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace

LoadedState parse_state(const std::string& path) {
  const json j = load_json(path);
  const std::string kind = require_string(j, "kind");
  const SubsystemLayout layout = parse_layout(j);
  const Eigen::Index dim = layout.total_dim();
  const json& data = require_field(j, "data");

  LoadedState loaded;
  if (kind == "pure") {
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != dim)
      throw ParseError("pure state: data length does not match the declared dimension");
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = parse_complex(data[static_cast<size_t>(i)]);
    loaded.pure.emplace(std::move(v), layout);
  } else if (kind == "density") {
    loaded.density.emplace(parse_matrix(data, dim, "density matrix"), layout);
  } else {
    throw ParseError("kind must be \"pure\" or \"density\"");
  }
  return loaded;
}

void write_state(const std::string& path, const PureState& psi) {
  ordered_json j;
  j["kind"] = "pure";
  j.update(layout_json(psi.layout));
  ordered_json data = ordered_json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i)
    data.push_back(complex_json(psi.amplitudes[i]));
  j["data"] = std::move(data);
  dump_to(path, j);
}

void write_state(const std::string& path, const DensityMatrix& rho) {
  ordered_json j;
  j["kind"] = "density";
  j.update(layout_json(rho.layout));
  ordered_json data = ordered_json::array();
  for (Eigen::Index r = 0; r < rho.matrix.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < rho.matrix.cols(); ++c) row.push_back(complex_json(rho.matrix(r, c)));
    data.push_back(std::move(row));
  }
  j["data"] = std::move(data);
  dump_to(path, j);
}

ComplexMatrix parse_unitary(const std::string& path) {
  const json j = load_json(path);
  if (require_string(j, "kind") != "unitary") throw ParseError("kind must be \"unitary\"");
  const int d = require_int(j, "d");
  if (d < 2 || d > 64) throw ParseError("local dimension d must be in [2, 64]");
  ComplexMatrix u = parse_matrix(require_field(j, "data"), d, "unitary");
  const double residual = max_abs(u.adjoint() * u - ComplexMatrix::Identity(d, d));
  if (residual > tol::structural) {
    std::ostringstream os;
    os.precision(1);
    os << std::scientific << "unitarity residual " << residual << " exceeds 1e-10";
    throw ValidationError(os.str());
  }
  return u;
}

void write_unitary(const std::string& path, const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("write_unitary: matrix must be square");
  ordered_json j;
  j["kind"] = "unitary";
  j["d"] = static_cast<int>(u.rows());
  ordered_json data = ordered_json::array();
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < u.cols(); ++c) row.push_back(complex_json(u(r, c)));
    data.push_back(std::move(row));
  }
  j["data"] = std::move(data);
  dump_to(path, j);
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
  return std::string(buf);
}

}  // namespace telres
