#ifndef TRIRAMSEY_CLI_HPP
#define TRIRAMSEY_CLI_HPP

// Command-line front end. cli_main takes its streams as arguments so tests
// can run subcommands in-process. Exit codes: 0 ok, 1 computation failed,
// 2 usage error.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "triramsey/bounds_table.hpp"
#include "triramsey/cache.hpp"
#include "triramsey/json_io.hpp"
#include "triramsey/ramsey_search.hpp"
#include "triramsey/service_http.hpp"
#include "triramsey/solver.hpp"

namespace triramsey {

struct CheckResult {
  std::string name;
  std::string claim;
  bool pass = false;
  double seconds = 0;
  std::string detail;
};

// Every library-level check of the results on small boards. `full` adds the
// seven-row sweep (about half a minute).
inline std::vector<CheckResult> verify_all(bool full = true) {
  std::vector<CheckResult> out;
  auto run = [&](std::string name, std::string claim, const std::function<bool(std::string&)>& fn) {
    CheckResult r;
    r.name = std::move(name);
    r.claim = std::move(claim);
    const auto start = std::chrono::steady_clock::now();
    try {
      r.pass = fn(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  };

  run("bracket-examples", "[3 2] = 10, [4 3] = 41, recursion = sum formula for n <= 6", [](std::string& d) {
    bool ok = bracket(3, 2) == 10 && bracket(4, 3) == 41;
    for (Natural n = 0; n <= 6; ++n) {
      for (Natural k = 0; k <= n; ++k) ok = ok && bracket(n, k) == bracket_sum(n, k);
    }
    d = "[4 3] = " + bracket(4, 3).str();
    return ok;
  });
  run("mines3-exactly-one-winner", "every 2-coloring of the 3-row board has exactly one winner", [](std::string& d) {
    const auto c = DrawSearch(search_config(3, 2, 2, 1)).census();
    d = std::to_string(c.total()) + " colorings, " + std::to_string(c.neither) + " draws, " + std::to_string(c.both) +
        " double wins";
    return c.neither == 0 && c.both == 0 && c.total() == 64;
  });
  run("mines5-no-double-win", "no 2-coloring of the 5-row board gives both players a 3-row triangle",
      [](std::string& d) {
        d = "2^15 colorings";
        return verify_no_double_win(5, 3, 3, 1);
      });
  if (full) {
    run("mines7-no-double-win", "no 2-coloring of the 7-row board gives both players a 4-row triangle",
        [](std::string& d) {
          d = "2^28 colorings";
          return verify_no_double_win(7, 4, 4, 1);
        });
  }
  run("mines3-first-player-wins", "optimal play on 3 rows is a first-player win in both variants", [](std::string& d) {
    const auto s = solve(new_game({3, 2, 2, 1, Variant::Standard}));
    const auto r = solve(new_game({3, 2, 2, 1, Variant::Directional}));
    d = "standard " + std::string(outcome_name(s.outcome)) + ", directional " + std::string(outcome_name(r.outcome));
    return s.outcome == Outcome::FirstPlayerWin && r.outcome == Outcome::FirstPlayerWin;
  });
  run("mines3-explicit-strategy", "the corner strategy wins against every reply in both variants",
      [](std::string&) { return verify_strategy_theorem(Variant::Standard) && verify_strategy_theorem(Variant::Directional); });
  run("r1-single-cells", "R1(p,q,1) = p+q-1 for p <= q, p+q <= 8, by draw search", [](std::string& d) {
    bool ok = true;
    std::size_t pairs = 0;
    std::ostringstream s;
    for (Natural p = 1; p <= 7; ++p) {
      for (Natural q = p; p + q <= 8; ++q, ++pairs) {
        const auto r = compute_r1(p, q, 1, p + q, Natural{1} << 40);
        const bool good = r.status == R1Report::Status::Exact && r.value == p + q - 1;
        ok = ok && good;
        if (!good) s << "(" << p << "," << q << ")=" << r.value << " ";
      }
    }
    d = ok ? std::to_string(pairs) + " pairs" : s.str();
    return ok;
  });
  return out;
}

namespace detail {

struct CliState {
  bool json = false;
  std::string cache_path = "triramsey-cache.json";
  bool no_cache = false;
  ResultCache cache;
  bool dirty = false;
};

inline SearchStrategy strategy_arg(const std::string& s) { return parse_strategy(s); }

inline std::string render_coloring(const Coloring& c, const Board& board) {
  std::string out;
  std::size_t cell = 1;
  for (std::size_t r = 1; r <= board.m(); ++r) {
    out += std::string(board.m() - r, ' ');
    for (std::size_t i = 0; i < r && cell <= c.size(); ++i, ++cell) {
      out += c.owner(cell) == Player::One ? 'X' : 'Y';
      if (i + 1 < r) out += ' ';
    }
    out += '\n';
  }
  return out;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Triangular Ramsey numbers and the game of Mines"};
  app.require_subcommand(1);
  detail::CliState st;
  app.add_flag("--json", st.json, "machine-readable output");
  app.add_option("--cache", st.cache_path, "result cache file")->capture_default_str();
  app.add_flag("--no-cache", st.no_cache, "neither read nor write the cache");

  Natural n = 0, k = 0, m = 0, p = 0, q = 0;
  bool log2_flag = false;
  auto* bracket_cmd = app.add_subcommand("bracket", "number of k-level sub-triangles of an n-level triangle");
  bracket_cmd->add_option("n", n)->required();
  bracket_cmd->add_option("k", k)->required();
  bracket_cmd->add_flag("--log2", log2_flag, "print log2 of the value");

  auto* enum_cmd = app.add_subcommand("enumerate", "list the k-level cells of the m-row board");
  enum_cmd->add_option("m", m)->required();
  enum_cmd->add_option("k", k)->required();

  std::string strategy = "backtracking", variant = "standard", form = "statement";
  std::uint64_t budget = 1ULL << 32, seed = DrawSearch::kDefaultSeed;
  auto* draw_cmd = app.add_subcommand("draw-search", "look for a coloring where nobody wins");
  draw_cmd->add_option("--m", m)->required();
  draw_cmd->add_option("--p", p)->required();
  draw_cmd->add_option("--q", q)->required();
  draw_cmd->add_option("--k", k)->required();
  draw_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"exhaustive", "backtracking", "randomized"}));
  draw_cmd->add_option("--budget", budget)->capture_default_str();
  draw_cmd->add_option("--seed", seed);

  Natural m_max = 10;
  auto* r1_cmd = app.add_subcommand("r1", "triangular Ramsey number by draw search");
  r1_cmd->add_option("--p", p)->required();
  r1_cmd->add_option("--q", q)->required();
  r1_cmd->add_option("--k", k)->required();
  r1_cmd->add_option("--m-max", m_max)->capture_default_str();
  r1_cmd->add_option("--budget", budget)->capture_default_str();
  r1_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"exhaustive", "backtracking", "randomized"}));

  bool table = false;
  Natural cap = Natural{1} << 28;
  auto* bounds_cmd = app.add_subcommand("bounds", "lower and upper bounds, one row or the summary table");
  auto* bp = bounds_cmd->add_option("--p", p);
  auto* bq = bounds_cmd->add_option("--q", q);
  auto* bk = bounds_cmd->add_option("--k", k);
  auto* bt = bounds_cmd->add_flag("--table", table, "the summary table rows");
  bp->needs(bq, bk)->excludes(bt);
  bounds_cmd->add_option("--form", form, "counting inequality as stated or as in its proof")
      ->check(CLI::IsMember({"statement", "proof"}));
  bounds_cmd->add_option("--cap", cap, "largest m the log2 sweep visits")->capture_default_str();

  std::uint64_t nodes = 20'000'000;
  unsigned threads = 1;
  auto* solve_cmd = app.add_subcommand("solve", "optimal-play value of a fresh game");
  solve_cmd->add_option("--m", m)->required();
  solve_cmd->add_option("--p", p)->required();
  solve_cmd->add_option("--q", q)->required();
  solve_cmd->add_option("--k", k)->required();
  solve_cmd->add_option("--variant", variant)->check(CLI::IsMember({"standard", "directional"}));
  solve_cmd->add_option("--budget", nodes, "node budget")->capture_default_str();
  solve_cmd->add_option("--threads", threads)->capture_default_str();

  bool quick = false;
  auto* verify_cmd = app.add_subcommand("verify", "run every check on small boards");
  verify_cmd->add_flag("--quick", quick, "skip the seven-row sweep");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve_cmd = app.add_subcommand("serve", "HTTP/JSON service");
  serve_cmd->add_option("--port", port)->capture_default_str();
  serve_cmd->add_option("--host", host)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  if (!st.no_cache) {
    std::vector<std::string> warnings;
    st.cache = ResultCache::load(st.cache_path, warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
  }

  auto emit = [&](const Json& j, const std::string& text) {
    if (st.json) {
      out << j.dump(2) << '\n';
    } else {
      out << text;
    }
  };

  int code = 0;
  try {
    if (*bracket_cmd) {
      if (log2_flag) {
        const double v = bracket_log2(n, k);
        std::ostringstream s;
        s << std::setprecision(12) << v << '\n';
        emit({{"n", n}, {"k", k}, {"log2", v}}, s.str());
      } else {
        BigNat v;
        if (auto hit = st.cache.bracket_value(n, k)) {
          v = *hit;
        } else {
          v = bracket(n, k);
          st.cache.put_bracket(n, k, v);
          st.dirty = true;
        }
        emit({{"n", n}, {"k", k}, {"value", v.str()}}, v.str() + '\n');
      }
    } else if (*enum_cmd) {
      const Board board(m, k);
      Json cells = Json::array();
      std::ostringstream s;
      for (std::size_t c = 1; c <= board.cell_count(); ++c) {
        std::vector<std::size_t> pos;
        for (auto x : board.cell_positions(c)) pos.push_back(x + 1);
        cells.push_back({{"cell", c}, {"positions", pos}});
        s << c << ':';
        for (auto x : pos) s << ' ' << x;
        s << '\n';
      }
      emit({{"m", m}, {"k", k}, {"cells", cells}}, s.str());
    } else if (*draw_cmd) {
      const GameConfig config = search_config(m, p, q, k);
      const DrawSearch search(config);
      const auto res = search.find(detail::strategy_arg(strategy), budget, seed);
      Json j = search_outcome_to_json(res);
      j["config"] = config_to_json(config);
      j["strategy"] = strategy;
      std::string text = std::string(result_name(res.result)) + " (" + std::to_string(res.nodes_explored) + " nodes)\n";
      if (res.witness) {
        text += "coloring " + coloring_to_hex(*res.witness) + '\n';
        if (k == 1) text += detail::render_coloring(*res.witness, search.board());
      }
      emit(j, text);
    } else if (*r1_cmd) {
      if (p > q) std::swap(p, q);
      std::optional<R1Record> rec = st.cache.r1(p, q, k);
      bool cached = rec && rec->status == R1Record::Status::Exact;
      if (!cached) {
        const auto report = compute_r1(p, q, k, m_max, budget, detail::strategy_arg(strategy));
        rec = r1_record_from_report(report, p, q, k, "draw search (" + strategy + ")");
        st.cache.put_r1(p, q, k, *rec);
        st.dirty = true;
      }
      const bool exact = rec->status == R1Record::Status::Exact;
      Json j{{"p", p}, {"q", q}, {"k", k}, {"status", exact ? "exact" : "lowerBound"}, {"value", rec->value.str()},
             {"cached", cached}, {"source", rec->source}};
      if (rec->witness) {
        j["witness"] = {{"config", config_to_json(rec->witness->config)}, {"coloring", rec->witness->coloring}};
      }
      emit(j, (exact ? "" : ">= ") + rec->value.str() + '\n');
    } else if (*bounds_cmd) {
      const ExpectationForm f = form == "proof" ? ExpectationForm::Proof : ExpectationForm::Statement;
      std::vector<BoundsRow> rows;
      if (!table && (p == 0 && q == 0 && k == 0)) table = true;
      if (table) {
        for (const auto& key : summary_rows()) rows.push_back(bounds_row(key.p, key.q, key.k, f, cap));
      } else {
        rows.push_back(bounds_row(p, q, k, f, cap));
      }
      Json j = Json::array();
      std::ostringstream s;
      s << std::left << std::setw(4) << "p" << std::setw(4) << "q" << std::setw(4) << "k" << std::setw(12) << "lower"
        << std::setw(7) << "R1" << std::setw(32) << "upper" << std::setw(28) << "upper value" << "source\n";
      for (const auto& r : rows) {
        j.push_back(bounds_row_to_json(r));
        std::string lower = r.lower_text();
        if (r.counting && !r.counting->complete) lower = ">=" + lower;
        s << std::left << std::setw(4) << r.p << std::setw(4) << r.q << std::setw(4) << r.k << std::setw(12) << lower
          << std::setw(7) << (r.value ? std::to_string(*r.value) : "?") << std::setw(32)
          << (r.upper ? r.upper->render() : "-") << std::setw(28) << (r.upper ? interval_text(r.upper_interval) : "-")
          << r.source << '\n';
      }
      emit(table ? j : j.at(0), s.str());
    } else if (*solve_cmd) {
      const GameConfig config{m, p, q, k, parse_variant(variant)};
      const GameState fresh = new_game(config);
      const GameValue v = solve(fresh, SolverOptions{nodes, threads});
      st.cache.put_solved(config, v.outcome);
      st.dirty = true;
      Json j{{"config", config_to_json(config)},
             {"outcome", outcome_name(v.outcome)},
             {"move", v.principal ? move_to_json(*v.principal) : Json(nullptr)},
             {"nodesExplored", v.nodes_explored}};
      std::string text = std::string(outcome_name(v.outcome));
      if (v.principal) text += ", best first move " + (v.principal->is_pass() ? std::string("pass") : std::to_string(v.principal->cell));
      emit(j, text + '\n');
    } else if (*verify_cmd) {
      const auto checks = verify_all(!quick);
      Json j = Json::array();
      std::ostringstream s;
      for (const auto& c : checks) {
        j.push_back({{"name", c.name}, {"claim", c.claim}, {"pass", c.pass}, {"seconds", c.seconds}, {"detail", c.detail}});
        s << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(28) << c.name << std::fixed << std::setprecision(2)
          << std::setw(9) << c.seconds << c.detail << '\n';
        if (!c.pass) code = 1;
      }
      emit({{"checks", j}, {"pass", code == 0}}, s.str());
    } else if (*serve_cmd) {
      Service service;
      httplib::Server server;
      bind_service(server, service);
      err << "listening on http://" << host << ':' << port << '\n';
      if (!server.listen(host, port)) {
        err << "error: cannot listen on " << host << ':' << port << '\n';
        code = 1;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::InvalidParams:
      case Errc::InvalidConfig:
      case Errc::KTooLarge:
      case Errc::BudgetInvalid:
      case Errc::NotDirectional: return 2;
      default: return 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (st.dirty && !st.no_cache) {
    try {
      st.cache.save(st.cache_path);
    } catch (const std::exception& e) {
      err << "warning: cache not saved: " << e.what() << '\n';
    }
  }
  return code;
}

}  // namespace triramsey

#endif  // TRIRAMSEY_CLI_HPP
