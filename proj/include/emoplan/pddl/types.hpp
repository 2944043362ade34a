#pragma once

#include <map>
#include <string>

#include "emoplan/pddl/ast.hpp"

namespace emoplan::pddl {

// Declared type tree of a domain. `object` is always declared; types listed
// without a parent sit directly under an unnamed root, so `object` is not a
// supertype of every type.
class TypeHierarchy {
 public:
  explicit TypeHierarchy(const Domain& domain);

  bool is_declared(const std::string& type) const;
  // Reflexive and transitive.
  bool is_subtype(const std::string& type, const std::string& ancestor) const;

 private:
  std::map<std::string, std::string> parent_;
};

}  // namespace emoplan::pddl
