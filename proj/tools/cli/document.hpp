#pragma once

#include <map>
#include <string>
#include <string_view>

#include "json.hpp"
#include "yoneda/fpab.hpp"
#include "yoneda/groupring.hpp"
#include "yoneda/poset_sheaf.hpp"
#include "yoneda/ses.hpp"

namespace yoneda::cli {

enum ExitCode : int { ok = 0, usage_error = 1, parse_error = 2, validation_error = 3, domain_error = 4, internal_error = 5 };

class CliError : public Error {
 public:
  CliError(ExitCode code, const std::string& what) : Error(what), code_(code) {}
  [[nodiscard]] ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

// Syntax error; the message carries line and column.
class SyntaxError : public CliError {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line, column;
};

class ReferenceError : public CliError {
 public:
  explicit ReferenceError(const std::string& name, const std::string& where = "");
  std::string name;
};

// Exit code for an exception escaping a computation.
ExitCode classify(const std::exception& e);

// "0", "Z", "Z^r", "Z/n" and sums of these joined by '+'.
FpAbGroup parse_group_shorthand(std::string_view text);

struct InputDocument {
  nlohmann::json source;  // the known sections, as read

  std::map<std::string, IntMatrix> matrices;
  std::map<std::string, FpAbGroup> groups;
  std::map<std::string, FpAbHom> homs;
  std::map<std::string, ShortExactSeq> sequences;
  std::map<std::string, FiniteGroup> finite_groups;
  std::map<std::string, GModule> modules;
  std::map<std::string, FinitePoset> posets;
  std::map<std::string, AbPresheaf> presheaves;

  // A defined name or a shorthand.
  [[nodiscard]] FpAbGroup group(const std::string& ref) const;
  [[nodiscard]] const IntMatrix& matrix(const std::string& name) const;
  [[nodiscard]] const FpAbHom& hom(const std::string& name) const;
  [[nodiscard]] const ShortExactSeq& sequence(const std::string& name) const;
  [[nodiscard]] FiniteGroup finite_group(const std::string& ref) const;
  [[nodiscard]] const GModule& module(const std::string& name) const;
  [[nodiscard]] FinitePoset poset(const std::string& ref) const;
  [[nodiscard]] const AbPresheaf& presheaf(const std::string& name) const;

  friend bool operator==(const InputDocument& a, const InputDocument& b) { return a.source == b.source; }
};

constexpr std::size_t max_poset_size = 12;

// Empty or blank text is the empty document. Throws SyntaxError, ReferenceError,
// or CliError naming the definition that failed validation.
InputDocument parse(std::string_view text);
std::string emit(const InputDocument& doc);

}  // namespace yoneda::cli
