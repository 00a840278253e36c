#pragma once

#include <string>

#include "wres/tensor.hpp"

namespace wres::tensor {

// Plain-text abstract-index grammar.
//
//   expr    ::= [ sign ] term { sign term }
//   sign    ::= "+" | "-"
//   term    ::= [ rational ] factor { factor }
//   rational::= integer [ "/" integer ]
//   factor  ::= head { group }
//   head    ::= "f0" | "f1" | "f2" | "f3" | "f" | "h" | "eta" | "g"
//             | "V" | "J" | "W" | "R" | "Rc"
//   group   ::= ("_" | "^") "{" [ ";" ] label { label } "}"
//   label   ::= lowercase letter
//
// Variance is notational only (all slots contract in the written
// position); groups before the first ";" group are base slots, every
// label from the first ";" on is a covariant-derivative slot.  A label
// occurring twice in a term is a contracted pair.  Example:
//   96 f_{;i j} h_{;k l} W^{i l j k} - 32 f_{;i} h_{;j k} W^{i j k}_{l}^{;l}
Expr parse_expr(const std::string& text);

}  // namespace wres::tensor
