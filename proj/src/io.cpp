#include "ranklab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "ranklab/common.hpp"

namespace ranklab {
namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  return out;
}

long parse_field(const std::string& field, const std::string& path, int line_no) {
  long value = 0;
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw io_error(path + ":" + std::to_string(line_no) + ": expected an integer, got '" +
                   field + "'");
  return value;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

ResponseTensor read_tensor_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw io_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "system,task,trial,outcome")
    throw io_error(path + ": expected header 'system,task,trial,outcome', got '" + line + "'");

  struct Cell {
    long l, m, n, outcome;
  };
  std::vector<Cell> cells;
  long L = 0, M = 0, N = 0, C = 1;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    long values[4];
    for (int i = 0; i < 4; ++i) {
      if (!std::getline(row, field, ','))
        throw io_error(path + ":" + std::to_string(line_no) + ": expected 4 fields");
      values[i] = parse_field(field, path, line_no);
    }
    if (std::getline(row, field, ','))
      throw io_error(path + ":" + std::to_string(line_no) + ": expected 4 fields");
    if (values[0] < 1 || values[1] < 1 || values[2] < 1)
      throw io_error(path + ":" + std::to_string(line_no) + ": indices are 1-based");
    if (values[3] < 0)
      throw io_error(path + ":" + std::to_string(line_no) + ": outcome must be >= 0");
    cells.push_back({values[0], values[1], values[2], values[3]});
    L = std::max(L, values[0]);
    M = std::max(M, values[1]);
    N = std::max(N, values[2]);
    C = std::max(C, values[3]);
  }
  if (cells.empty()) throw io_error(path + ": no data rows");
  if (static_cast<long long>(L) * M * N != static_cast<long long>(cells.size()))
    throw io_error(path + ": expected " + std::to_string(L * M * N) + " cells for shape (" +
                   std::to_string(L) + "," + std::to_string(M) + "," + std::to_string(N) +
                   "), got " + std::to_string(cells.size()));

  ResponseTensor R(static_cast<int>(L), static_cast<int>(M), static_cast<int>(N),
                   static_cast<int>(C));
  std::vector<char> seen(cells.size(), 0);
  for (const Cell& c : cells) {
    const std::size_t flat =
        ((c.l - 1) * M + (c.m - 1)) * static_cast<std::size_t>(N) + (c.n - 1);
    if (seen[flat])
      throw io_error(path + ": duplicate cell (" + std::to_string(c.l) + "," +
                     std::to_string(c.m) + "," + std::to_string(c.n) + ")");
    seen[flat] = 1;
    R(static_cast<int>(c.l) - 1, static_cast<int>(c.m) - 1, static_cast<int>(c.n) - 1) =
        static_cast<int>(c.outcome);
  }
  R.validate();
  return R;
}

void write_tensor_csv(const ResponseTensor& R, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "system,task,trial,outcome\n";
  for (int l = 0; l < R.L(); ++l)
    for (int m = 0; m < R.M(); ++m)
      for (int n = 0; n < R.N(); ++n)
        out << l + 1 << ',' << m + 1 << ',' << n + 1 << ',' << R(l, m, n) << '\n';
  if (!out) throw io_error("failed writing '" + path + "'");
}

ResponseTensor read_tensor_json(const std::string& path) {
  std::ifstream in = open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path + ": " + e.what());
  }
  for (const char* key : {"L", "M", "N", "C", "data"})
    if (!j.contains(key)) throw io_error(path + ": missing key '" + std::string(key) + "'");
  const int L = j["L"].get<int>(), M = j["M"].get<int>(), N = j["N"].get<int>(),
            C = j["C"].get<int>();
  if (L < 1 || M < 1 || N < 1 || C < 1) throw io_error(path + ": dimensions must be positive");

  const auto& data = j["data"];
  if (!data.is_array() || static_cast<int>(data.size()) != L)
    throw io_error(path + ": data must hold L system blocks");
  ResponseTensor R(L, M, N, C);
  for (int l = 0; l < L; ++l) {
    const auto& block = data[l];
    if (!block.is_array() || static_cast<int>(block.size()) != M)
      throw io_error(path + ": system block " + std::to_string(l + 1) + " must hold M rows");
    for (int m = 0; m < M; ++m) {
      const auto& row = block[m];
      if (!row.is_array() || static_cast<int>(row.size()) != N)
        throw io_error(path + ": row (" + std::to_string(l + 1) + "," + std::to_string(m + 1) +
                       ") must hold N outcomes");
      for (int n = 0; n < N; ++n) {
        if (!row[n].is_number_integer())
          throw io_error(path + ": outcomes must be integers");
        const int v = row[n].get<int>();
        if (v < 0 || v > C)
          throw io_error(path + ": outcome " + std::to_string(v) + " outside [0, " +
                         std::to_string(C) + "]");
        R(l, m, n) = v;
      }
    }
  }
  R.validate();
  return R;
}

void write_tensor_json(const ResponseTensor& R, const std::string& path) {
  nlohmann::json data = nlohmann::json::array();
  for (int l = 0; l < R.L(); ++l) {
    nlohmann::json block = nlohmann::json::array();
    for (int m = 0; m < R.M(); ++m) {
      nlohmann::json row = nlohmann::json::array();
      for (int n = 0; n < R.N(); ++n) row.push_back(R(l, m, n));
      block.push_back(std::move(row));
    }
    data.push_back(std::move(block));
  }
  const nlohmann::json j = {
      {"L", R.L()}, {"M", R.M()}, {"N", R.N()}, {"C", R.C()}, {"data", std::move(data)}};
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw io_error("failed writing '" + path + "'");
}

ResponseTensor read_tensor(const std::string& path) {
  if (ends_with(path, ".json")) return read_tensor_json(path);
  if (ends_with(path, ".csv")) return read_tensor_csv(path);
  throw io_error("tensor files must end in .csv or .json: '" + path + "'");
}

void write_tensor(const ResponseTensor& R, const std::string& path) {
  if (ends_with(path, ".json")) return write_tensor_json(R, path);
  if (ends_with(path, ".csv")) return write_tensor_csv(R, path);
  throw io_error("tensor files must end in .csv or .json: '" + path + "'");
}

}  // namespace ranklab
