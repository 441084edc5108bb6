#include "qk/perm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "qk/errors.hpp"

namespace qk {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) {
      throw InvalidElement("image list is not a permutation");
    }
    seen[p] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Perm(std::move(images), Unchecked{});
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (cycle[i] >= degree) throw InvalidElement("cycle point out of range");
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Perm(std::move(images));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 0x100000001b3ull;
  }
  return h;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw DegreeMismatch("compose: degree mismatch");
  std::vector<Point> images(a.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = a.images_[b.images_[i]];
  return Perm(std::move(images), Perm::Unchecked{});
}

Perm inverse(const Perm& a) {
  std::vector<Point> images(a.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[a.images_[i]] = static_cast<Point>(i);
  return Perm(std::move(images), Perm::Unchecked{});
}

std::vector<std::size_t> cycle_structure(const Perm& a) {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(a.degree(), false);
  for (Point i = 0; i < a.degree(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (Point j = i; !seen[j]; j = a(j)) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

std::uint64_t order(const Perm& a) {
  std::uint64_t result = 1;
  for (std::size_t len : cycle_structure(a)) result = std::lcm(result, std::uint64_t{len});
  return result;
}

std::string to_string(const Perm& p) {
  std::ostringstream out;
  out << p.degree() << ": [";
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (i) out << ',';
    out << p(static_cast<Point>(i));
  }
  out << ']';
  return out.str();
}

Perm parse_perm(std::string_view text) {
  auto colon = text.find(':');
  auto open = text.find('[');
  auto close = text.rfind(']');
  if (colon == std::string_view::npos || open == std::string_view::npos ||
      close == std::string_view::npos || open > close || colon > open) {
    throw ParseError("permutation must look like `3: [1,0,2]`");
  }
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_uint = [](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw ParseError("bad integer in permutation: " + std::string(s));
    }
    return v;
  };
  std::size_t degree = parse_uint(trim(text.substr(0, colon)));
  std::vector<Point> images;
  std::string_view body = text.substr(open + 1, close - open - 1);
  while (!trim(body).empty()) {
    auto comma = body.find(',');
    images.push_back(static_cast<Point>(parse_uint(trim(body.substr(0, comma)))));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  if (images.size() != degree) throw ParseError("permutation degree does not match image count");
  try {
    return Perm(std::move(images));
  } catch (const InvalidElement& e) {
    throw ParseError(e.what());
  }
}

std::vector<Perm> closure(std::size_t degree, std::span<const Perm> gens, std::size_t cap) {
  for (const Perm& g : gens) {
    if (g.degree() != degree) throw DegreeMismatch("closure: generator degree mismatch");
  }
  std::unordered_set<Perm, PermHash> seen;
  std::deque<Perm> queue;
  Perm id = Perm::identity(degree);
  seen.insert(id);
  queue.push_back(std::move(id));
  while (!queue.empty()) {
    Perm current = std::move(queue.front());
    queue.pop_front();
    for (const Perm& g : gens) {
      Perm next = compose(g, current);
      if (seen.insert(next).second) {
        if (seen.size() > cap) {
          throw CapExceeded("group order exceeds closure cap " + std::to_string(cap));
        }
        queue.push_back(std::move(next));
      }
    }
  }
  std::vector<Perm> elements(seen.begin(), seen.end());
  std::sort(elements.begin(), elements.end());
  return elements;
}

std::vector<Point> orbit(std::span<const Perm> gens, Point point) {
  std::size_t degree = gens.empty() ? point + std::size_t{1} : gens.front().degree();
  if (point >= degree) throw InvalidElement("orbit: point out of range");
  std::vector<bool> seen(degree, false);
  std::vector<Point> result{point};
  seen[point] = true;
  for (std::size_t head = 0; head < result.size(); ++head) {
    for (const Perm& g : gens) {
      Point next = g(result[head]);
      if (!seen[next]) {
        seen[next] = true;
        result.push_back(next);
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators)
    : degree_(degree), generators_(std::move(generators)) {
  if (degree_ == 0) throw InvalidElement("permutation group degree must be positive");
  for (const Perm& g : generators_) {
    if (g.degree() != degree_) throw DegreeMismatch("generator degree mismatch");
  }
}

PermGroup PermGroup::enumerated(std::size_t cap) const {
  PermGroup copy = *this;
  if (!copy.elements_) copy.elements_ = closure(degree_, generators_, cap);
  return copy;
}

const std::vector<Perm>& PermGroup::elements() const {
  if (!elements_) throw std::logic_error("PermGroup::elements: group not enumerated");
  return *elements_;
}

bool is_transitive(const PermGroup& g) {
  return orbit(g.generators(), 0).size() == g.degree();
}

bool is_doubly_transitive(const PermGroup& g) {
  const std::size_t n = g.degree();
  if (n < 2) return false;
  std::vector<bool> seen(n * n, false);
  std::vector<std::size_t> queue{0 * n + 1};
  seen[1] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Point a = static_cast<Point>(queue[head] / n);
    Point b = static_cast<Point>(queue[head] % n);
    for (const Perm& p : g.generators()) {
      std::size_t next = std::size_t{p(a)} * n + p(b);
      if (!seen[next]) {
        seen[next] = true;
        queue.push_back(next);
      }
    }
  }
  return queue.size() == n * (n - 1);
}

}  // namespace qk
