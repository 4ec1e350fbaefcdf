#pragma once

#include <string>
#include <variant>

#include "gsf/embeddings.hpp"
#include "gsf/terms.hpp"

namespace gsf {

struct ParseError {
  Span span;
  std::string message;
};

using ParsedTerm = std::variant<TermPtr, ParseError>;
using ParsedSeal = std::variant<SealTermPtr, ParseError>;
using ParsedType = std::variant<TypePtr, ParseError>;

ParsedTerm parse_gsf(const std::string& text);
ParsedSeal parse_seal(const std::string& text);
ParsedType parse_type(const std::string& text);

}  // namespace gsf
