/*
 * Copyright 2026 The cpl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cpl/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace cpl {

namespace {

using nlohmann::json;

template <class T>
T parse_scalar(const std::string& token) {
  if constexpr (ScalarTraits<T>::exact) {
    return parse_rational(token);
  } else {
    if (token.find('/') != std::string::npos)
      return ScalarTraits<Rational>::to_double(parse_rational(token));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      throw Error(ErrorCode::ParseError, "not a number: '" + token + "'");
    return v;
  }
}

bool is_comment_or_blank(const std::string& line) {
  for (const char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') continue;
    return c == '%' || c == '#';
  }
  return true;
}

Index parse_index(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw Error(ErrorCode::ParseError, std::string(what) + " must be a positive integer");
  return static_cast<Index>(j.get<long long>());
}

}  // namespace

template <class T>
SparseMatrix<T> read_coordinate(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!is_comment_or_blank(line)) return true;
    }
    return false;
  };
  if (!next_line()) throw Error(ErrorCode::ParseError, "missing header line 'rows cols nnz'");
  std::istringstream header(line);
  long long rows = 0, cols = 0, nnz = 0;
  if (!(header >> rows >> cols >> nnz) || rows < 1 || cols < 1 || nnz < 0)
    throw Error(ErrorCode::ParseError, "bad header line", Location{line_no - 1, std::nullopt});

  std::vector<typename SparseMatrix<T>::Triple> triples;
  triples.reserve(static_cast<std::size_t>(nnz));
  for (long long k = 0; k < nnz; ++k) {
    if (!next_line())
      throw Error(ErrorCode::ParseError, "expected " + std::to_string(nnz) + " entries, got " +
                                             std::to_string(k));
    std::istringstream ls(line);
    long long i = 0, j = 0;
    std::string value;
    if (!(ls >> i >> j >> value))
      throw Error(ErrorCode::ParseError, "expected 'i j value'", Location{line_no - 1, std::nullopt});
    if (i < 1 || j < 1 || i > rows || j > cols)
      throw Error(ErrorCode::ParseError, "index out of range", Location{line_no - 1, std::nullopt});
    triples.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), parse_scalar<T>(value)});
  }
  return SparseMatrix<T>(static_cast<Index>(rows), static_cast<Index>(cols), std::move(triples));
}

template <class T>
SparseMatrix<T> read_coordinate_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return read_coordinate<T>(in);
}

template <class T>
void write_coordinate(std::ostream& out, const SparseMatrix<T>& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (const auto& t : m.triples()) {
    out << t.row + 1 << ' ' << t.col + 1 << ' ';
    if constexpr (ScalarTraits<T>::exact) {
      out << to_string(t.value);
    } else {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), t.value);
      (void)ec;
      out << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
    }
    out << '\n';
  }
}

template <class T>
T scalar_from_json(const json& j) {
  if (j.is_string()) return parse_scalar<T>(j.get<std::string>());
  if (!j.is_number()) throw Error(ErrorCode::ParseError, "expected a number, got " + j.dump());
  if constexpr (ScalarTraits<T>::exact) {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
      return Rational(j.get<long long>());
    }
    return rational_from_double(j.get<double>());
  } else {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite number");
    return v;
  }
}

template <class T>
json scalar_to_json(const T& v) {
  if constexpr (ScalarTraits<T>::exact) {
    if (boost::multiprecision::denominator(v) == 1) {
      const auto num = boost::multiprecision::numerator(v);
      if (num <= std::numeric_limits<long long>::max() &&
          num >= std::numeric_limits<long long>::min())
        return json(num.template convert_to<long long>());
    }
    return json(to_string(v));
  } else {
    return json(v);
  }
}

template <class T>
Matrix<T> matrix_from_json(const json& j) {
  if (j.is_array()) {
    std::vector<std::vector<T>> rows;
    for (const auto& r : j) {
      if (!r.is_array()) throw Error(ErrorCode::ParseError, "matrix rows must be arrays");
      std::vector<T> row;
      row.reserve(r.size());
      for (const auto& v : r) row.push_back(scalar_from_json<T>(v));
      rows.push_back(std::move(row));
    }
    return Matrix<T>::from_rows(rows);
  }
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols"))
    throw Error(ErrorCode::ParseError, "matrix object needs 'rows' and 'cols'");
  const Index rows = parse_index(j.at("rows"), "rows");
  const Index cols = parse_index(j.at("cols"), "cols");
  if (j.contains("data")) {
    Matrix<T> m = matrix_from_json<T>(j.at("data"));
    if (m.rows() != rows || m.cols() != cols)
      throw Error(ErrorCode::ShapeMismatch, "dense data does not match declared shape");
    return m;
  }
  if (j.contains("entries")) {
    std::vector<typename SparseMatrix<T>::Triple> triples;
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 3)
        throw Error(ErrorCode::ParseError, "coordinate entries are [i, j, value]");
      const Index r = parse_index(e[0], "row index");
      const Index c = parse_index(e[1], "column index");
      if (r > rows || c > cols) throw Error(ErrorCode::ParseError, "coordinate out of range");
      triples.push_back({r - 1, c - 1, scalar_from_json<T>(e[2])});
    }
    return SparseMatrix<T>(rows, cols, std::move(triples)).to_dense();
  }
  throw Error(ErrorCode::ParseError, "matrix object needs 'data' or 'entries'");
}

template <class T>
json matrix_to_json(const Matrix<T>& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (const T& v : m.row(i)) row.push_back(scalar_to_json(v));
    data.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

template <class T>
std::vector<T> vector_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array");
  std::vector<T> v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(scalar_from_json<T>(x));
  return v;
}

template <class T>
json vector_to_json(std::span<const T> v) {
  json out = json::array();
  for (const T& x : v) out.push_back(scalar_to_json(x));
  return out;
}

#define CPL_INSTANTIATE(T)                                                         \
  template SparseMatrix<T> read_coordinate<T>(std::istream&);                     \
  template SparseMatrix<T> read_coordinate_file<T>(const std::filesystem::path&); \
  template void write_coordinate(std::ostream&, const SparseMatrix<T>&);          \
  template T scalar_from_json<T>(const json&);                                    \
  template json scalar_to_json(const T&);                                         \
  template Matrix<T> matrix_from_json<T>(const json&);                            \
  template json matrix_to_json(const Matrix<T>&);                                 \
  template std::vector<T> vector_from_json<T>(const json&);                       \
  template json vector_to_json(std::span<const T>);

CPL_INSTANTIATE(double)
CPL_INSTANTIATE(Rational)

#undef CPL_INSTANTIATE

}  // namespace cpl
