#ifndef TRIRAMSEY_SERVICE_HPP
#define TRIRAMSEY_SERVICE_HPP

// The HTTP/JSON service as a plain request -> response function, so it can
// be driven directly in tests; service_http.hpp puts it behind a socket.

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "triramsey/bounds_table.hpp"
#include "triramsey/cache.hpp"
#include "triramsey/json_io.hpp"
#include "triramsey/solver.hpp"

namespace triramsey {

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  Json body;
};

struct ServiceOptions {
  SolverOptions solver{2'000'000, 1};
  Natural bounds_cap = Natural{1} << 28;
  Natural max_bracket_n = 100'000;
  std::uint64_t id_seed = std::random_device{}();
};

class Service {
 public:
  explicit Service(ServiceOptions options = {}) : options_(options), ids_(options.id_seed) {}

  HttpResponse handle(const HttpRequest& req) {
    try {
      return route(req);
    } catch (const IllegalMove& e) {
      return error(409, e.what(), errc_name(e.code()));
    } catch (const Error& e) {
      return error(status_for(e.code()), e.what(), errc_name(e.code()));
    } catch (const Json::exception& e) {
      return error(400, e.what(), "ParseError");
    }
  }

  std::size_t session_count() const {
    std::shared_lock lock(sessions_mu_);
    return sessions_.size();
  }

 private:
  struct IllegalMove : Error {
    explicit IllegalMove(const Error& e) : Error(e) {}
  };

  struct Session {
    std::mutex write;  // one writer per game
    std::shared_ptr<const GameState> state;
    std::string created_at, updated_at;

    std::shared_ptr<const GameState> snapshot() const { return std::atomic_load(&state); }
  };

  static HttpResponse error(int status, const std::string& message, std::string_view code) {
    return {status, {{"error", message}, {"code", code}}};
  }

  static int status_for(Errc code) {
    switch (code) {
      case Errc::GameOver:
      case Errc::CellOccupied: return 409;
      case Errc::BudgetExceeded:
      case Errc::SpaceTooLarge: return 503;
      case Errc::ParseError:
      case Errc::MalformedExpr: return 400;
      default: return 422;
    }
  }

  static std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < path.size()) {
      if (path[i] == '/') {
        ++i;
        continue;
      }
      const std::size_t j = path.find('/', i);
      out.push_back(path.substr(i, j == std::string::npos ? std::string::npos : j - i));
      i = j == std::string::npos ? path.size() : j;
    }
    return out;
  }

  static Natural query_natural(const HttpRequest& req, const std::string& key) {
    auto it = req.query.find(key);
    if (it == req.query.end() || it->second.empty() || it->second.size() > 18 ||
        it->second.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(Errc::InvalidParams, "query parameter '" + key + "' must be a natural number");
    }
    return std::stoull(it->second);
  }

  HttpResponse route(const HttpRequest& req) {
    const auto parts = split_path(req.path);
    const bool get = req.method == "GET", post = req.method == "POST";
    if (parts.size() == 1 && parts[0] == "bracket" && get) return get_bracket(req);
    if (parts.size() == 1 && parts[0] == "bounds" && get) return get_bounds(req);
    if (parts.size() == 1 && parts[0] == "games" && post) return create_game(req);
    if (parts.size() >= 2 && parts[0] == "games") {
      auto session = find(parts[1]);
      if (!session) return error(404, "no game '" + parts[1] + "'", "NotFound");
      if (parts.size() == 2 && get) return {200, {{"id", parts[1]}, {"state", state_to_json(*session->snapshot())}}};
      if (parts.size() == 3 && parts[2] == "moves" && post) return post_move(*session, req);
      if (parts.size() == 3 && parts[2] == "hint" && get) return hint(*session);
      if (parts.size() == 3 && parts[2] == "whatif" && get) return whatif(*session, req);
    }
    return error(404, "no route " + req.method + " " + req.path, "NotFound");
  }

  HttpResponse get_bracket(const HttpRequest& req) {
    const Natural n = query_natural(req, "n"), k = query_natural(req, "k");
    if (n > options_.max_bracket_n) throw Error(Errc::InvalidParams, "n too large");
    return {200, {{"n", n}, {"k", k}, {"value", bracket(n, k).str()}}};
  }

  HttpResponse get_bounds(const HttpRequest& req) {
    const Natural p = query_natural(req, "p"), q = query_natural(req, "q"), k = query_natural(req, "k");
    ExpectationForm form = ExpectationForm::Statement;
    if (auto it = req.query.find("form"); it != req.query.end()) {
      if (it->second == "proof") {
        form = ExpectationForm::Proof;
      } else if (it->second != "statement") {
        throw Error(Errc::InvalidParams, "form must be statement or proof");
      }
    }
    return {200, bounds_row_to_json(bounds_row(p, q, k, form, options_.bounds_cap))};
  }

  HttpResponse create_game(const HttpRequest& req) {
    const Json body = Json::parse(req.body);
    const GameConfig config = config_from_json(body.contains("config") ? body.at("config") : body);
    auto session = std::make_shared<Session>();
    session->state = std::make_shared<const GameState>(new_game(config));
    session->created_at = session->updated_at = utc_timestamp();
    std::string id;
    {
      std::unique_lock lock(sessions_mu_);
      do {
        id = next_id();
      } while (sessions_.contains(id));
      sessions_.emplace(id, session);
    }
    return {201, {{"id", id}, {"state", state_to_json(*session->state)}}};
  }

  // The body names the move and, optionally, the turn it was chosen at; a
  // stale turn is refused so two clients cannot both play one turn.
  HttpResponse post_move(Session& session, const HttpRequest& req) {
    const Json body = Json::parse(req.body);
    if (!body.is_object() || !body.contains("move")) throw Error(Errc::ParseError, "body needs a move");
    const Move move = move_from_json(body.at("move"));
    std::lock_guard lock(session.write);
    const auto current = session.snapshot();
    if (body.contains("expectedTurn")) {
      if (!detail::is_natural(body.at("expectedTurn"))) throw Error(Errc::ParseError, "expectedTurn must be a natural");
      if (body.at("expectedTurn").get<std::size_t>() != current->history().size()) {
        return error(409, "stale turn: game is at turn " + std::to_string(current->history().size()), "StaleTurn");
      }
    }
    auto next = std::make_shared<const GameState>(checked_apply(*current, move));
    std::atomic_store(&session.state, next);
    session.updated_at = utc_timestamp();
    return {200, {{"state", state_to_json(*next)}}};
  }

  HttpResponse hint(const Session& session) {
    const auto state = session.snapshot();
    if (!state->status().ongoing()) return error(409, "game is over", "GameOver");
    const GameValue v = solve(*state, options_.solver);
    return {200,
            {{"move", move_to_json(*v.principal)},
             {"outcome", outcome_name(v.outcome)},
             {"nodesExplored", v.nodes_explored}}};
  }

  HttpResponse whatif(const Session& session, const HttpRequest& req) {
    auto it = req.query.find("move");
    if (it == req.query.end()) throw Error(Errc::ParseError, "missing move");
    const Move move = it->second == "pass" ? Move::pass() : Move::mark(query_natural(req, "move"));
    const auto state = session.snapshot();
    const GameState after = checked_apply(*state, move);
    const GameValue v = solve(after, options_.solver);
    return {200,
            {{"move", move_to_json(move)},
             {"resultingOutcome", outcome_name(v.outcome)},
             {"nodesExplored", v.nodes_explored}}};
  }

  // Any rule violation by a submitted move, off-board cells included, is a
  // conflict with the game rather than a bad request.
  static GameState checked_apply(const GameState& state, Move move) {
    try {
      return apply_move(state, move);
    } catch (const Error& e) {
      throw IllegalMove(e);
    }
  }

  std::shared_ptr<Session> find(const std::string& id) const {
    std::shared_lock lock(sessions_mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  std::string next_id() {
    std::lock_guard lock(id_mu_);
    static constexpr char kHex[] = "0123456789abcdef";
    std::uint64_t v = ids_();
    std::string out(16, '0');
    for (auto& c : out) {
      c = kHex[v & 15U];
      v >>= 4;
    }
    return out;
  }

  ServiceOptions options_;
  mutable std::shared_mutex sessions_mu_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_mu_;
  std::mt19937_64 ids_;
};

}  // namespace triramsey

#endif  // TRIRAMSEY_SERVICE_HPP
