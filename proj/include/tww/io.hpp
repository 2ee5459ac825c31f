#ifndef TWW_IO_HPP
#define TWW_IO_HPP

#include <iosfwd>
#include <string>

#include "tww/sequence.hpp"
#include "tww/trigraph.hpp"

namespace tww {

// PACE-style graph format: header `p tww <n> <m>`, one `u v` line per black
// edge and `r u v` per red edge, 1-indexed, `c` comments. m counts all edge
// lines. Parallel edges collapse to a single edge that is red whenever any
// copy was red; loops are rejected.
Trigraph parse_gr(std::istream& in);
Trigraph read_gr_file(const std::string& path);

// Writes vertices densely remapped to 1..n (ascending id order). When the
// vertex set is not 0..n-1 a `c map <wire> <original+1>` comment per vertex
// records the mapping.
void write_gr(std::ostream& out, const Trigraph& g);
void write_gr_file(const std::string& path, const Trigraph& g);

// Sequence format: optional `c` comments, then one `u v` line per step,
// 1-indexed, absorbed vertex second.
ContractionSequence parse_seq(std::istream& in);
ContractionSequence read_seq_file(const std::string& path);
void write_seq(std::ostream& out, const ContractionSequence& s);
void write_seq_file(const std::string& path, const ContractionSequence& s);

}  // namespace tww

#endif
