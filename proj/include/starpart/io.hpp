#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "starpart/hypergraph.hpp"
#include "starpart/types.hpp"

namespace starpart {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// hMetis .hgr: header "E V [fmt]" with fmt 1 = edge weights (first token of
// each edge line), 10 = node weights (V trailing lines), 11 = both. Pins are
// 1-indexed; '%' starts a comment line.
Hypergraph read_hmetis(std::istream& in, const std::string& name = "<stream>");
Hypergraph load_hmetis(const std::string& path);

// Canonical writer: pins ascending, single spaces, trailing newline. The fmt
// code is emitted only when non-unit weights require it.
void write_hmetis(const Hypergraph& h, std::ostream& out);
void save_hmetis(const Hypergraph& h, const std::string& path);

// MatrixMarket coordinate format. Rows become nodes and columns hyperedges
// (flip with transpose); entry values beyond the position are ignored.
Hypergraph read_matrix_market(std::istream& in, const std::string& name = "<stream>",
                              bool transpose = false);
Hypergraph load_matrix_market(const std::string& path, bool transpose = false);

// Canonical pattern writer; entries sorted by (column, row), 1-indexed.
void write_matrix_market(const Hypergraph& h, std::ostream& out);
void save_matrix_market(const Hypergraph& h, const std::string& path);

// Partition file: one 0-indexed part id per line, line i for node i.
std::vector<PartId> read_partition_file(std::istream& in,
                                        const std::string& name = "<stream>");
std::vector<PartId> load_partition_file(const std::string& path);
void write_partition_file(const std::vector<PartId>& labels, std::ostream& out);
void save_partition_file(const std::vector<PartId>& labels, const std::string& path);

// Shared helper: opens for writing or throws.
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace starpart
