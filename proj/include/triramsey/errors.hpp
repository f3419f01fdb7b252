#ifndef TRIRAMSEY_ERRORS_HPP
#define TRIRAMSEY_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace triramsey {

enum class Errc {
  NotTriangularCardinality,
  KTooLarge,
  InvalidConfig,
  GameOver,
  CellOccupied,
  NotDirectional,
  BudgetInvalid,
  SpaceTooLarge,
  BudgetExceeded,
  InvalidParams,
  MalformedExpr,
  ParseError,
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotTriangularCardinality: return "NotTriangularCardinality";
    case Errc::KTooLarge: return "KTooLarge";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::GameOver: return "GameOver";
    case Errc::CellOccupied: return "CellOccupied";
    case Errc::NotDirectional: return "NotDirectional";
    case Errc::BudgetInvalid: return "BudgetInvalid";
    case Errc::SpaceTooLarge: return "SpaceTooLarge";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::MalformedExpr: return "MalformedExpr";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

// Every failure the library reports carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace triramsey

#endif  // TRIRAMSEY_ERRORS_HPP
