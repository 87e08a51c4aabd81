#include "starpart/embedding.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "starpart/io.hpp"

namespace starpart {

double EmbeddingTable::dot(NodeId u, NodeId v) const {
  const double* a = values.data() + static_cast<std::size_t>(u) * dims;
  const double* b = values.data() + static_cast<std::size_t>(v) * dims;
  double sum = 0.0;
  for (int i = 0; i < dims; ++i) sum += a[i] * b[i];
  return sum;
}

EmbeddingTable read_embedding(std::istream& in, const std::string& name,
                              NodeId expected_nodes) {
  auto fail = [&name](int line, const std::string& what) -> void {
    throw parse_error(name + ":" + std::to_string(line) + ": " + what);
  };

  std::string line;
  int line_number = 0;
  if (!std::getline(in, line)) throw parse_error(name + ": empty file");
  ++line_number;
  std::istringstream header(line);
  long long count = 0;
  int dims = 0;
  if (!(header >> count >> dims) || count < 0 || dims < 1)
    fail(line_number, "header must be 'node_count dims'");
  if (expected_nodes >= 0 && count != expected_nodes) {
    if (count < expected_nodes)
      throw parse_error(name + ": missing node " + std::to_string(count) +
                        " (table covers " + std::to_string(count) + " of " +
                        std::to_string(expected_nodes) + " nodes)");
    throw parse_error(name + ": table covers " + std::to_string(count) +
                      " nodes, expected " + std::to_string(expected_nodes));
  }

  EmbeddingTable table(static_cast<NodeId>(count), dims);
  std::vector<bool> seen(static_cast<std::size_t>(count), false);
  for (long long i = 0; i < count; ++i) {
    if (!std::getline(in, line))
      throw parse_error(name + ": expected " + std::to_string(count) +
                        " vector lines, got " + std::to_string(i));
    ++line_number;
    std::istringstream tokens(line);
    long long id = 0;
    if (!(tokens >> id)) fail(line_number, "missing node id");
    if (id < 0 || id >= count)
      fail(line_number, "node id " + std::to_string(id) + " out of range");
    if (seen[static_cast<std::size_t>(id)])
      fail(line_number, "duplicate node id " + std::to_string(id));
    seen[static_cast<std::size_t>(id)] = true;
    auto row = table.vec(static_cast<NodeId>(id));
    std::string token;
    for (int d = 0; d < dims; ++d) {
      if (!(tokens >> token))
        fail(line_number, "expected " + std::to_string(dims) + " values");
      char* end = nullptr;
      const double value = std::strtod(token.c_str(), &end);
      if (end != token.c_str() + token.size())
        fail(line_number, "bad value '" + token + "'");
      if (!std::isfinite(value)) fail(line_number, "non-finite value");
      row[d] = value;
    }
    if (tokens >> token)
      fail(line_number, "expected " + std::to_string(dims) + " values");
  }
  for (long long id = 0; id < count; ++id)
    if (!seen[static_cast<std::size_t>(id)])
      throw parse_error(name + ": missing node " + std::to_string(id));
  return table;
}

EmbeddingTable load_embedding(const std::string& path, NodeId expected_nodes) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  return read_embedding(in, path, expected_nodes);
}

void write_embedding(const EmbeddingTable& table, std::ostream& out) {
  out << table.num_nodes() << ' ' << table.dims << '\n';
  char buf[40];
  for (NodeId v = 0; v < table.num_nodes(); ++v) {
    out << v;
    for (double value : table.vec(v)) {
      std::snprintf(buf, sizeof(buf), "%.17g", value);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

void save_embedding(const EmbeddingTable& table, const std::string& path) {
  std::ostringstream out;
  write_embedding(table, out);
  write_text_file(path, out.str());
}

EmbeddingTable interpolate_coarse(const EmbeddingTable& original,
                                  const ContractionMap& cumulative_map,
                                  NodeId coarse_count) {
  EmbeddingTable coarse(coarse_count, original.dims);
  std::vector<std::size_t> group_size(static_cast<std::size_t>(coarse_count), 0);
  for (NodeId v = 0; v < original.num_nodes(); ++v) {
    const NodeId target = cumulative_map[v];
    ++group_size[target];
    auto to = coarse.vec(target);
    auto from = original.vec(v);
    for (int d = 0; d < original.dims; ++d) to[d] += from[d];
  }
  for (NodeId u = 0; u < coarse_count; ++u) {
    auto row = coarse.vec(u);
    const double scale = 1.0 / static_cast<double>(group_size[u]);
    for (int d = 0; d < original.dims; ++d) row[d] *= scale;
  }
  return coarse;
}

}  // namespace starpart
