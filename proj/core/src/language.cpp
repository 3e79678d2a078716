#include "lociso/language.hpp"

#include "lociso/error.hpp"

namespace lociso {

Language::Language(std::vector<Symbol> symbols) {
  for (auto& s : symbols) add(std::move(s.name), s.arity);
}

SymbolId Language::add(std::string name, std::uint32_t arity) {
  if (name.empty()) fail(Errc::InvalidArgument, "empty symbol name");
  if (arity == 0) fail(Errc::ArityMismatch, "symbol '" + name + "' must have positive arity");
  if (find(name)) fail(Errc::DuplicateSymbol, "symbol '" + name + "' declared twice");
  symbols_.push_back(Symbol{std::move(name), arity});
  return static_cast<SymbolId>(symbols_.size() - 1);
}

std::optional<SymbolId> Language::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return static_cast<SymbolId>(i);
  return std::nullopt;
}

SymbolId Language::require(std::string_view name) const {
  auto id = find(name);
  if (!id) fail(Errc::UnknownSymbol, "unknown symbol '" + std::string(name) + "'");
  return *id;
}

void require_same_language(const Language& a, const Language& b) {
  if (!(a == b)) fail(Errc::LanguageMismatch, "structures are over different languages");
}

}  // namespace lociso
