#include "qim/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qim {

namespace {

using nlohmann::json;

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

const json& require_array(const json& j, const std::string& field) {
  if (!j.is_array()) throw FormatError(field, "expected a list");
  return j;
}

double require_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw FormatError(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw FormatError(field, "number is not finite");
  return x;
}

void write_value(std::ostream& os, const json& j, int indent) {
  const std::string pad(indent, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << "  " << json(it.key()).dump() << ": ";
        write_value(os, it.value(), indent + 2);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      // Arrays of scalars stay on one line; nested arrays break.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_value(os, j[i], indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad << "  ";
        write_value(os, j[i], indent + 2);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        os << (std::isnan(x) ? "\"nan\"" : (x > 0 ? "\"inf\"" : "\"-inf\""));
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

Hermitian parse_matrix(const json& doc) {
  if (!doc.is_object()) throw FormatError("document", "expected an object with shape and blocks");
  if (!doc.contains("shape")) throw FormatError("shape", "missing");
  if (!doc.contains("blocks")) throw FormatError("blocks", "missing");

  const json& shape_j = require_array(doc["shape"], "shape");
  if (shape_j.empty()) throw FormatError("shape", "must list at least one block");
  std::vector<int> dims;
  for (std::size_t i = 0; i < shape_j.size(); ++i) {
    const json& d = shape_j[i];
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      throw FormatError(at("shape", i), "block dimension must be a positive integer");
    }
    dims.push_back(d.get<int>());
  }

  const json& blocks_j = require_array(doc["blocks"], "blocks");
  if (blocks_j.size() != dims.size()) {
    throw FormatError("blocks", "has " + std::to_string(blocks_j.size()) + " blocks, shape lists " +
                                    std::to_string(dims.size()));
  }
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < dims.size(); ++b) {
    const std::string bf = at("blocks", b);
    const json& rows = require_array(blocks_j[b], bf);
    const int d = dims[b];
    if (static_cast<int>(rows.size()) != d) throw FormatError(bf, "expected " + std::to_string(d) + " rows");
    Matrix m(d, d);
    for (int r = 0; r < d; ++r) {
      const std::string rf = at(bf, r);
      const json& row = require_array(rows[r], rf);
      if (static_cast<int>(row.size()) != d) throw FormatError(rf, "expected " + std::to_string(d) + " entries");
      for (int c = 0; c < d; ++c) {
        const std::string ef = at(rf, c);
        const json& e = row[c];
        if (!e.is_array() || e.size() != 2) throw FormatError(ef, "expected [re, im]");
        m(r, c) = Complex(require_number(e[0], ef + "[0]"), require_number(e[1], ef + "[1]"));
      }
    }
    blocks.push_back(std::move(m));
  }
  return Hermitian(BlockShape(std::move(dims)), std::move(blocks));
}

Hermitian read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path, "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path, std::string("not a valid document: ") + e.what());
  }
  return parse_matrix(doc);
}

json matrix_json(const Hermitian& h) {
  json blocks = json::array();
  for (const auto& m : h.blocks()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return json{{"shape", h.shape().dims()}, {"blocks", std::move(blocks)}};
}

std::string format_document(const json& doc) {
  std::ostringstream os;
  write_value(os, doc, 0);
  os << "\n";
  return os.str();
}

void write_document(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw FormatError(path, "cannot open file for writing");
  out << format_document(doc);
  if (!out) throw FormatError(path, "write failed");
}

void write_matrix(const std::string& path, const Hermitian& h) { write_document(path, matrix_json(h)); }

}  // namespace qim
