#pragma once

#include <ostream>
#include <string_view>

#include "json.hpp"

#include "dynnim/bound_fn.hpp"
#include "dynnim/game.hpp"

namespace dynnim {

enum class Format { text, json, csv };

// Throws ParseError on anything but "text", "json" or "csv".
Format parse_format(std::string_view name);

// Every two-weight position of weight <= max_weight, ordered by (weight, x):
// {x, y, verdict, family} with family "P1"/"P2"/"P3" for P and null for N.
nlohmann::json g2_table_json(u64 max_weight);

// Blocks {k, n, lo, hi} for k_from <= k <= k_to with lo <= max_x.
nlohmann::json g1_blocks_json(const BoundFn& f, u64 k_from, u64 k_to, u64 max_x);

// csv: header `x,y,verdict,family`, one row per position (family empty for N).
// text: a P/N lattice with light stones on the vertical axis.
void write_g2_table(std::ostream& os, u64 max_weight, Format format);

// csv: header `k,n,lo,hi`. text: one line per turn listing the blocks.
void write_g1_blocks(std::ostream& os, const BoundFn& f, u64 k_from, u64 k_to, u64 max_x,
                     Format format);

}  // namespace dynnim
