#include "lukprover/theory.hpp"

#include <stdexcept>

namespace luk {

std::string TheoryId::name() const {
  static const char* names[3][3] = {
      {"ALm", "ALi", "ALc"}, {"LLm", "LLi", "LLc"}, {"ML", "IL", "BL"}};
  return names[static_cast<int>(base)][static_cast<int>(level)];
}

TheoryId TheoryId::parse(std::string_view name) {
  for (const auto& t : all())
    if (t.name() == name) return t;
  throw std::invalid_argument("unknown theory '" + std::string(name) + "'");
}

std::vector<TheoryId> TheoryId::all() {
  return {ALm, ALi, ALc, LLm, LLi, LLc, ML, IL, BL};
}

std::string Sequent::str() const {
  std::string out;
  for (std::size_t i = 0; i < context.size(); ++i) {
    if (i) out += ", ";
    out += print(context[i]);
  }
  out += out.empty() ? "|- " : " |- ";
  out += print(goal);
  return out;
}

Sequent parse_sequent(std::string_view text) {
  auto turn = text.find("|-");
  if (turn == std::string_view::npos) throw ParseError("expected '|-'", text.size());
  std::vector<Formula> ctx;
  std::string_view left = text.substr(0, turn);
  std::size_t i = 0;
  while (i <= left.size()) {
    std::size_t j = left.find(',', i);
    if (j == std::string_view::npos) j = left.size();
    std::string_view part = left.substr(i, j - i);
    if (part.find_first_not_of(" \t") != std::string_view::npos) {
      ctx.push_back(parse(part));
    } else if (j != left.size()) {
      throw ParseError("empty context entry", i);
    }
    i = j + 1;
  }
  return {std::move(ctx), parse(text.substr(turn + 2))};
}

}  // namespace luk
