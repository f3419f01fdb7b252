#ifndef TRIRAMSEY_CACHE_HPP
#define TRIRAMSEY_CACHE_HPP

// On-disk result cache. Nothing loaded from it is trusted: bracket values are
// recomputed, draw witnesses are re-checked, and any entry that fails is
// dropped with a warning.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "triramsey/json_io.hpp"

namespace triramsey {

inline constexpr int kCacheSchemaVersion = 1;

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct WitnessRecord {
  GameConfig config;
  std::string coloring;  // lowercase hex
  std::string verified_at;
};

struct R1Record {
  enum class Status : std::uint8_t { Exact, LowerBound };
  Status status = Status::LowerBound;
  BigNat value = 0;
  std::optional<WitnessRecord> witness;
  std::string source;
};

inline R1Record r1_record_from_report(const R1Report& r, Natural p, Natural q, Natural k, std::string source) {
  R1Record out;
  out.status = r.status == R1Report::Status::Exact ? R1Record::Status::Exact : R1Record::Status::LowerBound;
  out.value = r.value;
  out.source = std::move(source);
  if (r.witness) {
    out.witness = WitnessRecord{GameConfig{r.witness_m, p, q, k}, coloring_to_hex(*r.witness), utc_timestamp()};
  }
  return out;
}

class ResultCache {
 public:
  using Triple = std::tuple<Natural, Natural, Natural>;
  using ConfigKey = std::tuple<Natural, Natural, Natural, Natural, int>;

  std::optional<BigNat> bracket_value(Natural n, Natural k) const {
    auto it = brackets_.find({n, k});
    if (it == brackets_.end()) return std::nullopt;
    return it->second;
  }
  void put_bracket(Natural n, Natural k, BigNat v) { brackets_[{n, k}] = std::move(v); }

  std::optional<R1Record> r1(Natural p, Natural q, Natural k) const {
    auto it = r1_.find({p, q, k});
    if (it == r1_.end()) return std::nullopt;
    return it->second;
  }
  void put_r1(Natural p, Natural q, Natural k, R1Record r) { r1_[{p, q, k}] = std::move(r); }

  std::optional<Outcome> solved(const GameConfig& c) const {
    auto it = solved_.find(key(c));
    if (it == solved_.end()) return std::nullopt;
    return it->second;
  }
  void put_solved(const GameConfig& c, Outcome o) { solved_[key(c)] = o; }

  std::size_t size() const noexcept { return brackets_.size() + r1_.size() + solved_.size(); }

  Json to_json() const {
    Json brackets = Json::array(), r1 = Json::array(), solved = Json::array();
    for (const auto& [nk, v] : brackets_) brackets.push_back({{"n", nk.first}, {"k", nk.second}, {"value", v.str()}});
    for (const auto& [t, r] : r1_) {
      Json e{{"p", std::get<0>(t)},
             {"q", std::get<1>(t)},
             {"k", std::get<2>(t)},
             {"status", r.status == R1Record::Status::Exact ? "exact" : "lowerBound"},
             {"value", r.value.str()},
             {"source", r.source}};
      if (r.witness) {
        e["witness"] = {{"config", config_to_json(r.witness->config)},
                        {"coloring", r.witness->coloring},
                        {"verifiedAt", r.witness->verified_at}};
      }
      r1.push_back(std::move(e));
    }
    for (const auto& [c, o] : solved_) solved.push_back({{"config", config_to_json(config(c))}, {"outcome", outcome_name(o)}});
    return {{"schemaVersion", kCacheSchemaVersion}, {"brackets", brackets}, {"r1Results", r1}, {"solvedGames", solved}};
  }

  // Entries that fail to parse or verify are skipped and reported.
  static ResultCache from_json(const Json& j, std::vector<std::string>& warnings) {
    ResultCache out;
    if (!j.is_object() || j.value("schemaVersion", -1) != kCacheSchemaVersion) {
      warnings.push_back("cache schemaVersion mismatch; ignoring the whole file");
      return out;
    }
    auto each = [&](const char* field, auto&& fn) {
      if (!j.contains(field)) return;
      if (!j.at(field).is_array()) {
        warnings.push_back(std::string("cache field ") + field + " is not a list; dropped");
        return;
      }
      std::size_t i = 0;
      for (const auto& e : j.at(field)) {
        try {
          fn(e);
        } catch (const std::exception& ex) {
          warnings.push_back(std::string("dropped ") + field + "[" + std::to_string(i) + "]: " + ex.what());
        }
        ++i;
      }
    };
    each("brackets", [&](const Json& e) {
      const auto n = e.at("n").get<Natural>();
      const auto k = e.at("k").get<Natural>();
      const BigNat v = bignat_from_string(e.at("value").get<std::string>());
      if (n > 100'000 || k > n) throw Error(Errc::ParseError, "bracket arguments out of range");
      if (bracket(n, k) != v) throw Error(Errc::ParseError, "bracket value does not recompute");
      out.put_bracket(n, k, v);
    });
    each("r1Results", [&](const Json& e) {
      const auto p = e.at("p").get<Natural>();
      const auto q = e.at("q").get<Natural>();
      const auto k = e.at("k").get<Natural>();
      GameConfig{q, p, q, k}.validate();
      R1Record r;
      const auto status = e.at("status").get<std::string>();
      if (status == "exact") {
        r.status = R1Record::Status::Exact;
      } else if (status == "lowerBound") {
        r.status = R1Record::Status::LowerBound;
      } else {
        throw Error(Errc::ParseError, "unknown status '" + status + "'");
      }
      r.value = bignat_from_string(e.at("value").get<std::string>());
      r.source = e.value("source", "");
      const Natural floor = std::max(p, q);
      if (e.contains("witness")) {
        const auto& w = e.at("witness");
        WitnessRecord rec{config_from_json(w.at("config")), w.at("coloring").get<std::string>(),
                          w.value("verifiedAt", "")};
        if (rec.config.p != p || rec.config.q != q || rec.config.k != k || rec.config.variant != Variant::Standard) {
          throw Error(Errc::ParseError, "witness config does not match the entry");
        }
        if (r.value != rec.config.m + 1) throw Error(Errc::ParseError, "witness does not support the value");
        if (rec.config.m > 12) throw Error(Errc::ParseError, "witness board too large to re-check");
        const Board board(rec.config.m, k);
        if (!is_draw_coloring(coloring_from_hex(rec.coloring, board.cell_count()), search_config(rec.config.m, p, q, k))) {
          throw Error(Errc::ParseError, "witness is not a draw");
        }
        r.witness = std::move(rec);
      } else if (r.value > floor) {
        throw Error(Errc::ParseError, "value above max(p,q) needs a witness");
      }
      if (r.value < floor) throw Error(Errc::ParseError, "value below max(p,q)");
      out.put_r1(p, q, k, std::move(r));
    });
    each("solvedGames", [&](const Json& e) {
      out.put_solved(config_from_json(e.at("config")), parse_outcome(e.at("outcome").get<std::string>()));
    });
    return out;
  }

  // A missing file is an empty cache; an unreadable one is empty plus a warning.
  static ResultCache load(const std::filesystem::path& path, std::vector<std::string>& warnings) {
    std::ifstream in(path);
    if (!in) return {};
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) {
      warnings.push_back("cache " + path.string() + " is not valid JSON; ignoring it");
      return {};
    }
    return from_json(j, warnings);
  }

  // Written to a sibling file first, then renamed over the target.
  void save(const std::filesystem::path& path) const {
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw Error(Errc::ParseError, "cannot write " + tmp);
      out << to_json().dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
  }

 private:
  static ConfigKey key(const GameConfig& c) { return {c.m, c.p, c.q, c.k, static_cast<int>(c.variant)}; }
  static GameConfig config(const ConfigKey& k) {
    return {std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), static_cast<Variant>(std::get<4>(k))};
  }

  std::map<std::pair<Natural, Natural>, BigNat> brackets_;
  std::map<Triple, R1Record> r1_;
  std::map<ConfigKey, Outcome> solved_;
};

}  // namespace triramsey

#endif  // TRIRAMSEY_CACHE_HPP
