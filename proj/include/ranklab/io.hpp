#pragma once

#include <string>

#include "ranklab/tensor.hpp"

namespace ranklab {

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

/// Long-format CSV with header `system,task,trial,outcome` and 1-based
/// indices. The reader infers L, M, N from the largest indices, infers C
/// from the largest outcome (at least 1), and rejects duplicate or missing
/// cells and malformed rows.
ResponseTensor read_tensor_csv(const std::string& path);
void write_tensor_csv(const ResponseTensor& R, const std::string& path);

/// JSON manifest {"L","M","N","C","data"} with data nested as L x M x N
/// arrays. The reader rejects shape mismatches and outcomes outside [0, C].
ResponseTensor read_tensor_json(const std::string& path);
void write_tensor_json(const ResponseTensor& R, const std::string& path);

/// Dispatches on the file extension (.csv or .json).
ResponseTensor read_tensor(const std::string& path);
void write_tensor(const ResponseTensor& R, const std::string& path);

}  // namespace ranklab
