#include "dynnim/bound_fn.hpp"

#include <charconv>
#include <utility>

namespace dynnim {
namespace {

template <typename Int>
Int parse_int(std::string_view text, std::string_view spec) {
  Int value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError("bad integer '" + std::string(text) + "' in bound spec '" +
                     std::string(spec) + "'");
  }
  return value;
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

BoundFn BoundFn::constant(u64 c) {
  if (c == 0) throw ParseError("constant bound must be positive");
  require_in_range(c, "constant bound");
  return BoundFn(Constant{c});
}

BoundFn BoundFn::affine(std::int64_t a, std::int64_t b) {
  if (a < 0) throw ParseError("affine bound slope must be non-negative");
  const auto limit = static_cast<std::int64_t>(kValueLimit);
  if (a >= limit || b >= limit || b <= -limit) {
    throw RangeError("affine bound coefficients exceed 2^62");
  }
  // f(1) = a + b is the minimum over k >= 1.
  if (a + b < 1) throw ParseError("affine bound must be positive at k = 1");
  return BoundFn(Affine{a, b});
}

BoundFn BoundFn::table(std::vector<u64> values) {
  if (values.empty()) throw ParseError("table bound needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0) throw ParseError("table bound values must be positive");
    require_in_range(values[i], "table bound value");
    if (i > 0 && values[i] < values[i - 1]) {
      throw ParseError("table bound values must be non-decreasing");
    }
  }
  return BoundFn(Table{std::move(values)});
}

BoundFn BoundFn::parse(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("bound spec '" + std::string(spec) +
                     "' must look like const:<c>, affine:<a>,<b> or table:<v1>,...");
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view body = spec.substr(colon + 1);
  const auto parts = split_commas(body);

  if (kind == "const") {
    if (parts.size() != 1) throw ParseError("const bound takes one value");
    return constant(parse_int<u64>(parts[0], spec));
  }
  if (kind == "affine") {
    if (parts.size() != 2) throw ParseError("affine bound takes two values a,b");
    return affine(parse_int<std::int64_t>(parts[0], spec),
                  parse_int<std::int64_t>(parts[1], spec));
  }
  if (kind == "table") {
    std::vector<u64> values;
    values.reserve(parts.size());
    for (auto part : parts) values.push_back(parse_int<u64>(part, spec));
    return table(std::move(values));
  }
  throw ParseError("unknown bound kind '" + std::string(kind) + "'");
}

u64 BoundFn::operator()(u64 k) const {
  if (k == 0) throw ParseError("turn index must be at least 1");
  return std::visit(
      [k](const auto& rep) -> u64 {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return rep.value;
        } else if constexpr (std::is_same_v<T, Affine>) {
          // a*k + b with a >= 0 and a + b >= 1, so the result is >= 1.
          const u64 scaled = checked_mul(static_cast<u64>(rep.slope), k);
          if (rep.offset >= 0) return checked_add(scaled, static_cast<u64>(rep.offset));
          return scaled - static_cast<u64>(-rep.offset);
        } else {
          const std::size_t idx = k > rep.values.size() ? rep.values.size() : k;
          return rep.values[idx - 1];
        }
      },
      rep_);
}

std::string BoundFn::to_string() const {
  return std::visit(
      [](const auto& rep) -> std::string {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return "const:" + std::to_string(rep.value);
        } else if constexpr (std::is_same_v<T, Affine>) {
          return "affine:" + std::to_string(rep.slope) + "," + std::to_string(rep.offset);
        } else {
          std::string out = "table:";
          for (std::size_t i = 0; i < rep.values.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(rep.values[i]);
          }
          return out;
        }
      },
      rep_);
}

}  // namespace dynnim
