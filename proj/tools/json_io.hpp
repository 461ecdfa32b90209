#pragma once

// File-format helpers for the command line tool. Everything here works on
// plain buffers; the math lives behind the C API.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace cli {

using nlohmann::json;

struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseFailure("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseFailure("cannot write " + path);
  out << content;
}

inline json parse_json(const std::string& text, const std::string& what) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) throw ParseFailure("malformed JSON in " + what);
  return parsed;
}

inline json load_json(const std::string& path) { return parse_json(read_file(path), path); }

// Canonical serialization used for every file this tool writes; parsing and
// re-serializing a document produced here is byte identical.
inline std::string dump_json(const json& value) { return value.dump(2) + "\n"; }

struct SquareMatrix {
  int dim = 0;
  std::vector<double> entries;  // row-major dim*dim
};

inline SquareMatrix read_square(const json& value, const char* key, const std::string& what) {
  if (!value.is_object() || !value.contains("dim") || !value.contains(key)) {
    throw ParseFailure(what + ": expected an object with \"dim\" and \"" + key + "\"");
  }
  SquareMatrix out;
  if (!value["dim"].is_number_integer()) throw ParseFailure(what + ": \"dim\" must be an integer");
  out.dim = value["dim"].get<int>();
  const json& rows = value[key];
  if (out.dim < 1 || !rows.is_array() || static_cast<int>(rows.size()) != out.dim) {
    throw ParseFailure(what + ": \"" + key + "\" must be a dim x dim array");
  }
  out.entries.reserve(static_cast<std::size_t>(out.dim) * out.dim);
  for (const json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != out.dim) {
      throw ParseFailure(what + ": \"" + key + "\" must be a dim x dim array");
    }
    for (const json& cell : row) {
      if (!cell.is_number()) throw ParseFailure(what + ": matrix entries must be numbers");
      out.entries.push_back(cell.get<double>());
    }
  }
  return out;
}

// {"dim": N, "entries": [[...]]}
inline SquareMatrix read_form_file(const std::string& path) {
  return read_square(load_json(path), "entries", path);
}

// {"dim": N, "matrix": [[...]]}
inline SquareMatrix read_matrix_file(const std::string& path) {
  return read_square(load_json(path), "matrix", path);
}

// {"blocks": [{"dim": d, "form": [[...]]}]}
inline std::vector<SquareMatrix> read_model_file(const std::string& path) {
  const json value = load_json(path);
  if (!value.is_object() || !value.contains("blocks") || !value["blocks"].is_array() ||
      value["blocks"].empty()) {
    throw ParseFailure(path + ": expected an object with a nonempty \"blocks\" array");
  }
  std::vector<SquareMatrix> blocks;
  for (const json& block : value["blocks"]) {
    blocks.push_back(read_square(block, "form", path));
  }
  return blocks;
}

struct PolyData {
  int p = 0;
  std::vector<int> exps;      // n_terms * p
  std::vector<double> coefs;  // n_terms
};

// {"p": 3, "terms": [{"exp": [2,0,0], "coef": 0.5}, ...]}
inline PolyData read_poly_file(const std::string& path) {
  const json value = load_json(path);
  if (!value.is_object() || !value.contains("p") || !value.contains("terms") ||
      !value["p"].is_number_integer() || !value["terms"].is_array()) {
    throw ParseFailure(path + ": expected an object with \"p\" and \"terms\"");
  }
  PolyData out;
  out.p = value["p"].get<int>();
  if (out.p < 1) throw ParseFailure(path + ": \"p\" must be positive");
  for (const json& term : value["terms"]) {
    if (!term.is_object() || !term.contains("exp") || !term.contains("coef") ||
        !term["exp"].is_array() || static_cast<int>(term["exp"].size()) != out.p ||
        !term["coef"].is_number()) {
      throw ParseFailure(path + ": each term needs \"exp\" of length p and a numeric \"coef\"");
    }
    for (const json& e : term["exp"]) {
      if (!e.is_number_integer()) throw ParseFailure(path + ": exponents must be integers");
      out.exps.push_back(e.get<int>());
    }
    out.coefs.push_back(term["coef"].get<double>());
  }
  return out;
}

// [[x1, ..., xp], ...]
inline std::vector<std::vector<double>> read_points_file(const std::string& path, int p) {
  const json value = load_json(path);
  if (!value.is_array() || value.empty()) {
    throw ParseFailure(path + ": expected a nonempty array of points");
  }
  std::vector<std::vector<double>> points;
  for (const json& point : value) {
    if (!point.is_array() || static_cast<int>(point.size()) != p) {
      throw ParseFailure(path + ": each point must have " + std::to_string(p) + " coordinates");
    }
    std::vector<double> coords;
    for (const json& c : point) {
      if (!c.is_number()) throw ParseFailure(path + ": coordinates must be numbers");
      coords.push_back(c.get<double>());
    }
    points.push_back(std::move(coords));
  }
  return points;
}

inline json tensor_to_json(int dim, const std::vector<double>& components) {
  return json{{"dim", dim}, {"components", components}};
}

}  // namespace cli
