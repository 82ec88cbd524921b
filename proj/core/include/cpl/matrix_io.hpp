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

#pragma once

#include <filesystem>
#include <iosfwd>

#include <nlohmann/json.hpp>

#include "cpl/matrix.hpp"

namespace cpl {

// Coordinate text format:
//
//   rows cols nnz
//   i j value        (1-based, nnz lines)
//
// Lines starting with '%' or '#' are comments. Values may be decimals or
// "p/q" fractions; the rational reader keeps them exact. Duplicate
// coordinates are summed.

template <class T>
SparseMatrix<T> read_coordinate(std::istream& in);

template <class T>
SparseMatrix<T> read_coordinate_file(const std::filesystem::path& path);

template <class T>
void write_coordinate(std::ostream& out, const SparseMatrix<T>& m);

// JSON. Accepted matrix encodings:
//   {"rows":r,"cols":c,"data":[[...],...]}          dense
//   {"rows":r,"cols":c,"entries":[[i,j,v],...]}     coordinate, 1-based
//   [[...],...]                                      bare dense rows
// Scalars are JSON numbers or strings such as "1/5".

template <class T>
T scalar_from_json(const nlohmann::json& j);

template <class T>
nlohmann::json scalar_to_json(const T& v);

template <class T>
Matrix<T> matrix_from_json(const nlohmann::json& j);

/// Dense encoding.
template <class T>
nlohmann::json matrix_to_json(const Matrix<T>& m);

template <class T>
std::vector<T> vector_from_json(const nlohmann::json& j);

template <class T>
nlohmann::json vector_to_json(std::span<const T> v);

}  // namespace cpl
