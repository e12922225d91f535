#include "oblique/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "oblique/error.hpp"

namespace oblique {

namespace {

using nlohmann::json;

std::string where(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void shape_error(const std::string& what) {
  throw DomainError(ErrorKind::ParseError, what);
}

double number(const json& v, std::size_t k) {
  if (!v.is_number()) shape_error("entry " + std::to_string(k) + " is not a number pair");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw DomainError(ErrorKind::NonFinite, "entry " + std::to_string(k));
  return d;
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

MatrixDocument parse_matrix_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // byte is one past the offending character.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    const std::string what = e.what();
    const auto reason = what.find(": ", what.find("column"));
    throw DomainError(ErrorKind::ParseError,
                      where(text, at) + (reason == std::string::npos ? "" : what.substr(reason)));
  } catch (const json::out_of_range& e) {
    // Number literals beyond double range.
    throw DomainError(ErrorKind::NonFinite, e.what());
  }
  if (!doc.is_object()) shape_error("document is not an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    shape_error("missing or invalid \"n\"");
  }
  if (!doc.contains("data") || !doc["data"].is_array()) shape_error("missing \"data\" array");

  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
  const json& data = doc["data"];
  if (data.size() != n * n) {
    shape_error("not square: " + std::to_string(data.size()) + " entries for n = " +
                std::to_string(n));
  }
  ComplexMatrix m(n);
  auto out = m.data();
  for (std::size_t k = 0; k < data.size(); ++k) {
    const json& pair = data[k];
    if (!pair.is_array() || pair.size() != 2) {
      shape_error("entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    out[k] = Complex(number(pair[0], k), number(pair[1], k));
  }

  MatrixDocument result{std::move(m), {}, fnv1a(text)};
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) shape_error("\"label\" is not a string");
    result.label = doc["label"].get<std::string>();
  }
  return result;
}

ComplexMatrix parse_matrix(std::string_view text) { return parse_matrix_document(text).matrix; }

nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m, std::string_view label) {
  nlohmann::ordered_json doc;
  doc["n"] = m.size();
  auto data = nlohmann::ordered_json::array();
  for (const Complex& z : m.data()) data.push_back({z.real(), z.imag()});
  doc["data"] = std::move(data);
  if (!label.empty()) doc["label"] = std::string(label);
  return doc;
}

std::string print_matrix(const ComplexMatrix& m, std::string_view label) {
  return matrix_to_json(m, label).dump();
}

MatrixDocument read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix_document(buffer.str());
}

}  // namespace oblique
