#include "starpart/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

namespace starpart {
namespace {

// Line reader that remembers the current line number for error messages and
// skips comment/blank lines on request.
class LineReader {
 public:
  LineReader(std::istream& in, std::string name, char comment)
      : in_(in), name_(std::move(name)), comment_(comment) {}

  // Next content line; returns false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (is_blank(line) || (!line.empty() && line[0] == comment_)) continue;
      return true;
    }
    return false;
  }

  int line_number() const { return line_number_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error(name_ + ":" + std::to_string(line_number_) + ": " + what);
  }

  [[noreturn]] void fail_eof(const std::string& what) const {
    throw parse_error(name_ + ": " + what);
  }

 private:
  static bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c); });
  }

  std::istream& in_;
  std::string name_;
  char comment_;
  int line_number_ = 0;
};

std::vector<long long> parse_integers(LineReader& reader, const std::string& line) {
  std::vector<long long> values;
  std::istringstream tokens(line);
  std::string tok;
  while (tokens >> tok) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(tok, &used);
    } catch (const std::exception&) {
      reader.fail("expected integer, got '" + tok + "'");
    }
    if (used != tok.size()) reader.fail("expected integer, got '" + tok + "'");
    values.push_back(value);
  }
  return values;
}

}  // namespace

Hypergraph read_hmetis(std::istream& in, const std::string& name) {
  LineReader reader(in, name, '%');
  std::string line;
  if (!reader.next(line)) reader.fail_eof("missing header line");

  const std::vector<long long> header = parse_integers(reader, line);
  if (header.size() < 2 || header.size() > 3)
    reader.fail("header must be 'edges nodes [fmt]'");
  const long long num_edges = header[0];
  const long long num_nodes = header[1];
  if (num_edges < 0 || num_nodes < 0) reader.fail("negative count in header");
  const long long fmt = header.size() == 3 ? header[2] : 0;
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11)
    reader.fail("unknown fmt code " + std::to_string(fmt));
  const bool has_edge_weights = fmt == 1 || fmt == 11;
  const bool has_node_weights = fmt == 10 || fmt == 11;

  std::vector<std::vector<NodeId>> edges;
  std::vector<Weight> edge_weights;
  edges.reserve(static_cast<std::size_t>(num_edges));
  for (long long e = 0; e < num_edges; ++e) {
    if (!reader.next(line))
      reader.fail_eof("expected " + std::to_string(num_edges) +
                      " edge lines, got " + std::to_string(e));
    std::vector<long long> values = parse_integers(reader, line);
    Weight weight = 1;
    std::size_t first_pin = 0;
    if (has_edge_weights) {
      if (values.empty()) reader.fail("edge line missing weight");
      weight = values[0];
      if (weight <= 0) reader.fail("edge weight must be positive");
      first_pin = 1;
    }
    if (values.size() == first_pin) reader.fail("edge has no pins");
    std::vector<NodeId> pins;
    pins.reserve(values.size() - first_pin);
    for (std::size_t i = first_pin; i < values.size(); ++i) {
      const long long pin = values[i];
      if (pin < 1 || pin > num_nodes)
        reader.fail("pin " + std::to_string(pin) + " out of range [1, " +
                    std::to_string(num_nodes) + "]");
      pins.push_back(static_cast<NodeId>(pin - 1));
    }
    edges.push_back(std::move(pins));
    edge_weights.push_back(weight);
  }

  std::vector<Weight> node_weights;
  if (has_node_weights) {
    node_weights.reserve(static_cast<std::size_t>(num_nodes));
    for (long long v = 0; v < num_nodes; ++v) {
      if (!reader.next(line))
        reader.fail_eof("expected " + std::to_string(num_nodes) +
                        " node weight lines, got " + std::to_string(v));
      const std::vector<long long> values = parse_integers(reader, line);
      if (values.size() != 1) reader.fail("expected a single node weight");
      if (values[0] <= 0) reader.fail("node weight must be positive");
      node_weights.push_back(values[0]);
    }
  }
  if (reader.next(line)) reader.fail("unexpected trailing content");

  return Hypergraph(static_cast<NodeId>(num_nodes), edges,
                    std::move(node_weights), std::move(edge_weights));
}

Hypergraph load_hmetis(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  return read_hmetis(in, path);
}

void write_hmetis(const Hypergraph& h, std::ostream& out) {
  const bool edge_weights =
      [&] {
        for (EdgeId e = 0; e < h.num_edges(); ++e)
          if (h.edge_weight(e) != 1) return true;
        return false;
      }();
  const bool node_weights =
      [&] {
        for (NodeId v = 0; v < h.num_nodes(); ++v)
          if (h.node_weight(v) != 1) return true;
        return false;
      }();

  out << h.num_edges() << ' ' << h.num_nodes();
  const int fmt = (edge_weights ? 1 : 0) + (node_weights ? 10 : 0);
  if (fmt != 0) out << ' ' << fmt;
  out << '\n';
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    bool first = true;
    if (edge_weights) {
      out << h.edge_weight(e);
      first = false;
    }
    for (NodeId pin : h.pins(e)) {
      if (!first) out << ' ';
      out << pin + 1;
      first = false;
    }
    out << '\n';
  }
  if (node_weights)
    for (NodeId v = 0; v < h.num_nodes(); ++v) out << h.node_weight(v) << '\n';
}

void save_hmetis(const Hypergraph& h, const std::string& path) {
  std::ostringstream out;
  write_hmetis(h, out);
  write_text_file(path, out.str());
}

Hypergraph read_matrix_market(std::istream& in, const std::string& name,
                              bool transpose) {
  // The banner is a comment line, so read it before the comment-skipping
  // reader touches the stream.
  std::string banner;
  if (!std::getline(in, banner)) throw parse_error(name + ": empty file");
  if (!banner.empty() && banner.back() == '\r') banner.pop_back();
  std::istringstream banner_tokens(banner);
  std::string tag, object, format, field, symmetry;
  banner_tokens >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket")
    throw parse_error(name + ":1: missing MatrixMarket banner");
  if (object != "matrix" || format != "coordinate")
    throw parse_error(name + ":1: only coordinate matrices are supported");
  if (field != "pattern" && field != "real" && field != "integer")
    throw parse_error(name + ":1: unsupported field '" + field + "'");
  if (symmetry != "general")
    throw parse_error(name + ":1: unsupported symmetry '" + symmetry + "'");
  const bool has_value = field != "pattern";

  LineReader reader(in, name, '%');
  std::string line;
  if (!reader.next(line)) reader.fail_eof("missing size line");
  const std::vector<long long> size = parse_integers(reader, line);
  if (size.size() != 3) reader.fail("size line must be 'rows cols nnz'");
  long long rows = size[0];
  long long cols = size[1];
  const long long nnz = size[2];
  if (rows <= 0 || cols <= 0 || nnz <= 0) reader.fail("matrix is empty");
  if (transpose) std::swap(rows, cols);

  std::vector<std::vector<NodeId>> edges(static_cast<std::size_t>(cols));
  for (long long entry = 0; entry < nnz; ++entry) {
    if (!reader.next(line))
      reader.fail_eof("expected " + std::to_string(nnz) + " entries, got " +
                      std::to_string(entry));
    std::istringstream tokens(line);
    long long i = 0;
    long long j = 0;
    if (!(tokens >> i >> j)) reader.fail("entry must be 'row col" +
                                         std::string(has_value ? " value'" : "'"));
    if (has_value) {
      double ignored;
      if (!(tokens >> ignored)) reader.fail("entry missing value");
    }
    if (transpose) std::swap(i, j);
    if (i < 1 || i > rows)
      reader.fail("row " + std::to_string(transpose ? j : i) + " out of range");
    if (j < 1 || j > cols)
      reader.fail("column " + std::to_string(transpose ? i : j) + " out of range");
    edges[static_cast<std::size_t>(j - 1)].push_back(static_cast<NodeId>(i - 1));
  }
  if (reader.next(line)) reader.fail("unexpected trailing content");

  return Hypergraph(static_cast<NodeId>(rows), edges);
}

Hypergraph load_matrix_market(const std::string& path, bool transpose) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  return read_matrix_market(in, path, transpose);
}

void write_matrix_market(const Hypergraph& h, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate pattern general\n";
  out << h.num_nodes() << ' ' << h.num_edges() << ' ' << h.num_pins() << '\n';
  for (EdgeId e = 0; e < h.num_edges(); ++e)
    for (NodeId pin : h.pins(e)) out << pin + 1 << ' ' << e + 1 << '\n';
}

void save_matrix_market(const Hypergraph& h, const std::string& path) {
  std::ostringstream out;
  write_matrix_market(h, out);
  write_text_file(path, out.str());
}

std::vector<PartId> read_partition_file(std::istream& in, const std::string& name) {
  LineReader reader(in, name, '%');
  std::string line;
  std::vector<PartId> labels;
  while (reader.next(line)) {
    const std::vector<long long> values = parse_integers(reader, line);
    if (values.size() != 1) reader.fail("expected a single part id");
    if (values[0] < 0) reader.fail("part id must be non-negative");
    labels.push_back(static_cast<PartId>(values[0]));
  }
  return labels;
}

std::vector<PartId> load_partition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  return read_partition_file(in, path);
}

void write_partition_file(const std::vector<PartId>& labels, std::ostream& out) {
  for (PartId p : labels) out << p << '\n';
}

void save_partition_file(const std::vector<PartId>& labels, const std::string& path) {
  std::ostringstream out;
  write_partition_file(labels, out);
  write_text_file(path, out.str());
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace starpart
