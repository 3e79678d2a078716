#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lociso {

using SymbolId = std::uint32_t;

struct Symbol {
  std::string name;
  std::uint32_t arity = 0;

  bool operator==(const Symbol&) const = default;
};

// Finite relational signature. Declaration order is significant: it fixes the
// canonical order of tuples in serialized form.
class Language {
 public:
  Language() = default;
  explicit Language(std::vector<Symbol> symbols);

  SymbolId add(std::string name, std::uint32_t arity);

  std::size_t size() const noexcept { return symbols_.size(); }
  const Symbol& operator[](SymbolId id) const { return symbols_.at(id); }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

  std::optional<SymbolId> find(std::string_view name) const;
  SymbolId require(std::string_view name) const;

  bool operator==(const Language& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<Symbol> symbols_;
};

void require_same_language(const Language& a, const Language& b);

}  // namespace lociso
