#include "dynnim/tables.hpp"

#include <string>

#include "dynnim/closed_form.hpp"

namespace dynnim {

Format parse_format(std::string_view name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw ParseError("unknown format '" + std::string(name) + "'");
}

namespace {

template <typename Fn>
void for_each_g2(u64 max_weight, Fn&& fn) {
  require_in_range(max_weight, "max weight");
  for (u64 w = 0; w <= max_weight; ++w) {
    for (u64 x = 0; 2 * x <= w; ++x) {
      const WeightedPosition pos{x, w - 2 * x};
      fn(pos, classify_g2(pos));
    }
  }
}

template <typename Fn>
void for_each_block(const BoundFn& f, u64 k_from, u64 k_to, u64 max_x, Fn&& fn) {
  for (u64 k = k_from; k <= k_to; ++k) {
    for (const auto& b : enumerate_p_g1(f, k, max_x)) fn(k, b);
  }
}

}  // namespace

nlohmann::json g2_table_json(u64 max_weight) {
  nlohmann::json rows = nlohmann::json::array();
  for_each_g2(max_weight, [&](const WeightedPosition& pos, const ClassificationG2& c) {
    nlohmann::json family = nullptr;
    if (c.family) family = to_string(c.family->family);
    rows.push_back({{"x", pos.heavy},
                    {"y", pos.light},
                    {"verdict", to_string(c.verdict)},
                    {"family", std::move(family)}});
  });
  return rows;
}

nlohmann::json g1_blocks_json(const BoundFn& f, u64 k_from, u64 k_to, u64 max_x) {
  nlohmann::json rows = nlohmann::json::array();
  for_each_block(f, k_from, k_to, max_x, [&](u64 k, const BlockBounds& b) {
    rows.push_back({{"k", k}, {"n", b.index}, {"lo", b.lo}, {"hi", b.hi}});
  });
  return rows;
}

void write_g2_table(std::ostream& os, u64 max_weight, Format format) {
  switch (format) {
    case Format::json:
      os << g2_table_json(max_weight).dump() << '\n';
      return;
    case Format::csv:
      os << "x,y,verdict,family\n";
      for_each_g2(max_weight, [&](const WeightedPosition& pos, const ClassificationG2& c) {
        os << pos.heavy << ',' << pos.light << ',' << to_string(c.verdict) << ','
           << (c.family ? to_string(c.family->family) : "") << '\n';
      });
      return;
    case Format::text:
      // Row y from the top, column x; blank outside the weight bound.
      for (u64 y = max_weight + 1; y-- > 0;) {
        std::string line = (y < 10 ? " " : "") + std::to_string(y) + " |";
        for (u64 x = 0; 2 * x + y <= max_weight; ++x) {
          line += classify_g2({x, y}).verdict == Verdict::P ? " P" : " .";
        }
        os << line << '\n';
      }
      os << "    x = 0.." << max_weight / 2 << "  (P marks P positions)\n";
      return;
  }
}

void write_g1_blocks(std::ostream& os, const BoundFn& f, u64 k_from, u64 k_to, u64 max_x,
                     Format format) {
  switch (format) {
    case Format::json:
      os << g1_blocks_json(f, k_from, k_to, max_x).dump() << '\n';
      return;
    case Format::csv:
      os << "k,n,lo,hi\n";
      for_each_block(f, k_from, k_to, max_x, [&](u64 k, const BlockBounds& b) {
        os << k << ',' << b.index << ',' << b.lo << ',' << b.hi << '\n';
      });
      return;
    case Format::text:
      for (u64 k = k_from; k <= k_to; ++k) {
        os << "k=" << k << ':';
        for (const auto& b : enumerate_p_g1(f, k, max_x)) {
          if (b.lo == b.hi) {
            os << " {" << b.lo << '}';
          } else {
            os << " [" << b.lo << ',' << b.hi << ']';
          }
        }
        os << '\n';
      }
      return;
  }
}

}  // namespace dynnim
