#include "dynnim/verify.hpp"

#include <chrono>
#include <sstream>

#include "dynnim/closed_form.hpp"
#include "dynnim/oracle.hpp"
#include "dynnim/strategist.hpp"
#include "parallel_collect.hpp"

namespace dynnim {
namespace {

using i64 = std::int64_t;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Finding {
  u64 first;
  u64 second;
  std::string detail;

  auto operator<=>(const Finding&) const = default;
};

std::vector<std::string> details(const std::vector<Finding>& findings) {
  std::vector<std::string> out;
  out.reserve(findings.size());
  for (const auto& f : findings) out.push_back(f.detail);
  return out;
}

// Every two-weight position of weight <= max_weight with the given heavy count.
template <typename Fn>
void for_each_light(u64 heavy, u64 max_weight, Fn&& fn) {
  for (u64 y = 0; 2 * heavy + y <= max_weight; ++y) fn(WeightedPosition{heavy, y});
}

}  // namespace

std::vector<BoundFn> canonical_bounds() {
  return {BoundFn::constant(1),  BoundFn::constant(2),  BoundFn::constant(3),
          BoundFn::constant(4),  BoundFn::affine(1, 0), BoundFn::affine(2, 1),
          BoundFn::table({1, 2, 2, 3, 7})};
}

VerificationReport verify_g1(const BoundFn& f, u64 max_x, u64 max_k, Execution exec) {
  const auto start = Clock::now();
  const oracle::TurnGrid truth = oracle::sweep_g1(f, max_x, max_k, exec);

  VerificationReport report;
  report.game = "g1";
  report.params = "f=" + f.to_string() + " max_x=" + std::to_string(max_x) +
                  " max_k=" + std::to_string(max_k);
  report.positions_checked = (max_x + 1) * max_k;
  report.mismatches = detail::collect_sorted<Mismatch>(
      static_cast<i64>(max_x + 1), exec, [&](i64 row, std::vector<Mismatch>& out) {
        const u64 x = static_cast<u64>(row);
        for (u64 k = 1; k <= max_k; ++k) {
          const TurnPosition pos{x, k};
          const Verdict formula = classify_g1(pos, f).verdict;
          const Verdict expected = truth.at(pos);
          if (formula != expected) out.push_back({x, k, formula, expected});
        }
      });
  report.wall_seconds = seconds_since(start);
  return report;
}

VerificationReport verify_g2(u64 max_weight, Execution exec) {
  const auto start = Clock::now();
  const oracle::WeightGrid truth = oracle::sweep_g2(max_weight, exec);

  VerificationReport report;
  report.game = "g2";
  report.params = "max_weight=" + std::to_string(max_weight);
  report.positions_checked = truth.size();
  report.mismatches = detail::collect_sorted<Mismatch>(
      static_cast<i64>(max_weight / 2 + 1), exec, [&](i64 row, std::vector<Mismatch>& out) {
        for_each_light(static_cast<u64>(row), max_weight, [&](const WeightedPosition& pos) {
          const Verdict formula = classify_g2(pos).verdict;
          const Verdict expected = truth.at(pos);
          if (formula != expected) out.push_back({pos.heavy, pos.light, formula, expected});
        });
      });
  report.wall_seconds = seconds_since(start);
  return report;
}

PropertyReport check_p_closure_g1(const BoundFn& f, u64 max_x, u64 max_k, Execution exec) {
  PropertyReport report{"g1 P positions have no P successor (" + f.to_string() + ")",
                        (max_x + 1) * max_k,
                        {}};
  const auto findings = detail::collect_sorted<Finding>(
      static_cast<i64>(max_x + 1), exec, [&](i64 row, std::vector<Finding>& out) {
        const u64 x = static_cast<u64>(row);
        for (u64 k = 1; k <= max_k; ++k) {
          const TurnPosition pos{x, k};
          if (classify_g1(pos, f).verdict != Verdict::P) continue;
          for (const auto& s : moves_g1(pos, f)) {
            if (classify_g1(s.position, f).verdict == Verdict::P) {
              out.push_back({x, k, to_string(pos) + " -> " + to_string(s.position)});
              break;
            }
          }
        }
      });
  report.counterexamples = details(findings);
  return report;
}

PropertyReport check_p_closure_g2(u64 max_weight, Execution exec) {
  PropertyReport report{"g2 P positions have no P successor", 0, {}};
  for (u64 x = 0; 2 * x <= max_weight; ++x) report.positions_checked += max_weight - 2 * x + 1;
  const auto findings = detail::collect_sorted<Finding>(
      static_cast<i64>(max_weight / 2 + 1), exec, [&](i64 row, std::vector<Finding>& out) {
        for_each_light(static_cast<u64>(row), max_weight, [&](const WeightedPosition& pos) {
          if (classify_g2(pos).verdict != Verdict::P) return;
          for_each_move_g2(pos, [&](const SuccessorG2& s) {
            if (classify_g2(s.position).verdict != Verdict::P) return true;
            out.push_back({pos.heavy, pos.light, to_string(pos) + " -> " + to_string(s.position)});
            return false;
          });
        });
      });
  report.counterexamples = details(findings);
  return report;
}

PropertyReport check_strategy_g1(const BoundFn& f, u64 max_x, u64 max_k, Execution exec) {
  PropertyReport report{"g1 advice is sound (" + f.to_string() + ")", (max_x + 1) * max_k, {}};
  const auto findings = detail::collect_sorted<Finding>(
      static_cast<i64>(max_x + 1), exec, [&](i64 row, std::vector<Finding>& out) {
        const u64 x = static_cast<u64>(row);
        for (u64 k = 1; k <= max_k; ++k) {
          const TurnPosition pos{x, k};
          const Verdict verdict = classify_g1(pos, f).verdict;
          const AdviceG1 advice = advise_g1(pos, f);
          auto fail = [&](const std::string& why) {
            out.push_back({x, k, to_string(pos) + ": " + why});
          };
          if (x == 0) {
            if (!std::holds_alternative<NoMove>(advice)) fail("terminal must yield NoMove");
          } else if (verdict == Verdict::P) {
            if (!std::holds_alternative<AllLosingG1>(advice)) fail("P position must yield AllLosing");
          } else if (const auto* win = std::get_if<WinningG1>(&advice)) {
            if (auto bad = violated_constraint(pos, f, win->move)) {
              fail("illegal move: " + *bad);
            } else if (apply(pos, win->move) != win->target) {
              fail("target does not match move");
            } else if (classify_g1(win->target, f).verdict != Verdict::P) {
              fail("target " + to_string(win->target) + " is not P");
            }
          } else {
            fail("N position must yield a winning move");
          }
        }
      });
  report.counterexamples = details(findings);
  return report;
}

PropertyReport check_strategy_g2(u64 max_weight, Execution exec) {
  PropertyReport report{"g2 advice is sound", 0, {}};
  for (u64 x = 0; 2 * x <= max_weight; ++x) report.positions_checked += max_weight - 2 * x + 1;
  const auto findings = detail::collect_sorted<Finding>(
      static_cast<i64>(max_weight / 2 + 1), exec, [&](i64 row, std::vector<Finding>& out) {
        for_each_light(static_cast<u64>(row), max_weight, [&](const WeightedPosition& pos) {
          const Verdict verdict = classify_g2(pos).verdict;
          const AdviceG2 advice = advise_g2(pos);
          auto fail = [&](const std::string& why) {
            out.push_back({pos.heavy, pos.light, to_string(pos) + ": " + why});
          };
          if (!has_moves(pos)) {
            if (!std::holds_alternative<NoMove>(advice)) fail("terminal must yield NoMove");
          } else if (verdict == Verdict::P) {
            if (!std::holds_alternative<AllLosingG2>(advice)) fail("P position must yield AllLosing");
          } else if (const auto* win = std::get_if<WinningG2>(&advice)) {
            if (auto bad = violated_constraint(pos, win->move)) {
              fail("illegal move: " + *bad);
            } else if (apply(pos, win->move) != win->target) {
              fail("target does not match move");
            } else if (classify_g2(win->target).verdict != Verdict::P) {
              fail("target " + to_string(win->target) + " is not P");
            }
          } else {
            fail("N position must yield a winning move");
          }
        });
      });
  report.counterexamples = details(findings);
  return report;
}

nlohmann::json to_json(const VerificationReport& report, bool with_timing) {
  nlohmann::json mismatches = nlohmann::json::array();
  for (const auto& m : report.mismatches) {
    mismatches.push_back({{"position", {m.first, m.second}},
                          {"formula", to_string(m.formula)},
                          {"oracle", to_string(m.oracle)}});
  }
  nlohmann::json out = {{"game", report.game},
                        {"params", report.params},
                        {"positionsChecked", report.positions_checked},
                        {"mismatches", std::move(mismatches)},
                        {"result", report.pass() ? "PASS" : "FAIL"}};
  if (with_timing) out["wallSeconds"] = report.wall_seconds;
  return out;
}

nlohmann::json to_json(const PropertyReport& report) {
  return {{"property", report.name},
          {"positionsChecked", report.positions_checked},
          {"counterexamples", report.counterexamples},
          {"result", report.pass() ? "PASS" : "FAIL"}};
}

std::string to_text(const VerificationReport& report, std::size_t max_listed) {
  std::ostringstream os;
  os << (report.pass() ? "PASS" : "FAIL") << "  " << report.game << "  " << report.params
     << "  positions=" << report.positions_checked
     << "  mismatches=" << report.mismatches.size() << '\n';
  for (std::size_t i = 0; i < report.mismatches.size() && i < max_listed; ++i) {
    const auto& m = report.mismatches[i];
    os << "  (" << m.first << ',' << m.second << ") formula=" << to_string(m.formula)
       << " oracle=" << to_string(m.oracle) << '\n';
  }
  return os.str();
}

std::string to_text(const PropertyReport& report, std::size_t max_listed) {
  std::ostringstream os;
  os << (report.pass() ? "PASS" : "FAIL") << "  " << report.name
     << "  positions=" << report.positions_checked
     << "  counterexamples=" << report.counterexamples.size() << '\n';
  for (std::size_t i = 0; i < report.counterexamples.size() && i < max_listed; ++i) {
    os << "  " << report.counterexamples[i] << '\n';
  }
  return os.str();
}

}  // namespace dynnim
