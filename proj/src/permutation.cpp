#include "syncparse/permutation.hpp"

#include <sstream>

namespace syncparse {

static std::vector<int> parse_image(const std::string& text, const char* what) {
  std::istringstream in(text);
  std::vector<int> image;
  std::string tok;
  while (in >> tok) {
    try {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      image.push_back(v);
    } catch (const std::exception&) {
      throw InputError(std::string("bad ") + what + " entry '" + tok + "'");
    }
  }
  if (image.empty()) throw InputError(std::string("empty ") + what);
  return image;
}

Permutation parse_permutation(const std::string& text) {
  return Permutation(parse_image(text, "permutation"));
}

LinearStrategy parse_strategy(const std::string& text) {
  return LinearStrategy(parse_image(text, "strategy"));
}

static std::string format_image(const std::vector<int>& image) {
  std::string out;
  for (size_t i = 0; i < image.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(image[i]);
  }
  return out;
}

std::string format_permutation(const Permutation& p) { return format_image(p.image); }
std::string format_strategy(const LinearStrategy& s) { return format_image(s.order); }

}  // namespace syncparse
